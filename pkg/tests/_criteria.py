"""Shared registry for acceptance-criterion results, printed in the
pytest terminal summary."""

RESULTS = []


def record(number, description, passed):
    RESULTS.append((number, description, passed))
