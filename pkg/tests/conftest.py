import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

import _criteria  # noqa: E402


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _criteria.RESULTS:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for number, description, passed in _criteria.RESULTS:
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[criterion {number}] {status}  {description}")
