"""The table reproduction suite: recomputes every example row and compares
against frozen expected values.

Expected eigenvalues are the canonical graded residues (pencil determinant
roots).  Four source rows print the same lists shifted by per-class
integers; the suite checks those rows modulo 1 as well and says so.
"""

from __future__ import annotations

import sys
import time
from fractions import Fraction

from .families import (
    conormal_variety,
    open_swallowtail,
    plane_curve_variety,
    product_with_line,
    resonance_system,
)
from .pipeline import lt_report, milnor_number


def _f(num, den=1):
    return Fraction(num, den)


def _conormal(text):
    def build():
        variety, _smooth = conormal_variety(text)
        return variety

    return build


def _resonance(lam, mu, e):
    def build():
        return resonance_system(lam, mu, e)

    return build


# label, builder, bound, lt1, lt2, canonical eigenvalues, printed-if-different
QUICK_ROWS = [
    ("swallowtail k=2", lambda: open_swallowtail(2), 36, 0, 1,
     [_f(-4, 5), _f(-13, 10), _f(-11, 5), _f(-27, 10)], None),
    ("conormal y^2-x^5", _conormal("y^2-x^5"), 40, 0, 0,
     [_f(-6, 5), _f(-4, 5)], [_f(-16, 5), _f(-4, 5)]),
    ("conormal y^3-x^6", _conormal("y^3-x^6"), 44, 1, 1,
     [_f(-3, 2), _f(-1), _f(-1), _f(-1, 2)],
     [_f(-7, 2), _f(-5), _f(-5), _f(-13, 2)]),
    ("conormal xy(x+y)(x-y)(x-2y)", _conormal("x*y*(x+y)*(x-y)*(x-2*y)"), 30, 2, 2,
     [], None),
    ("resonance (1,0)", _resonance(1, 0, (0, 0, 1, 1)), 12, 2, 1,
     [_f(-1)] * 4, [_f(-3)] * 4),
    ("resonance (1,2)", _resonance(1, 2, (0, 2, 1, 0)), 10, 3, 2,
     [v for x in (_f(-1), _f(-3, 2), _f(-2), _f(-5, 2), _f(-3)) for v in (x, x)], None),
]

SLOW_ROWS = [
    ("conormal y^3-x^7", _conormal("y^3-x^7"), 56, 0, 0,
     [_f(-12, 7), _f(-9, 7), _f(-8, 7), _f(-6, 7), _f(-5, 7), _f(-2, 7)],
     [_f(-117, 7), _f(-93, 7), _f(-85, 7), _f(-69, 7), _f(-61, 7), _f(-37, 7)]),
    ("conormal y^5-x^7", _conormal("y^5-x^7"), 150, 0, 0,
     [_f(-10, 7), _f(-8, 7), _f(-6, 7), _f(-4, 7)],
     [_f(-164, 7), _f(-148, 7), _f(-132, 7), _f(-116, 7)]),
    ("resonance (1,3)", _resonance(1, 3, (3, 0, 0, 1)), 10, 4, 3,
     sorted([_f(-1)] * 2 + [_f(-5, 3)] * 2 + [_f(-7, 3)] * 4 + [_f(-3)] * 4
            + [_f(-11, 3)] * 4 + [_f(-13, 3)] * 2 + [_f(-5)] * 2), None),
    ("resonance (1,4)", _resonance(1, 4, (4, 0, 0, 1)), 12, 5, 4,
     sorted([x for n in (4, 7, 9, 10, 12, 13, 14, 15, 16, 17, 18, 19, 20, 22, 23, 25, 28)
             for x in (_f(-n, 4), _f(-n, 4))]), None),
]

CURVE_ROWS = [("y^2-x^3", 2), ("y^2-x^5", 4), ("x^2+y^2", 1)]


def _frac_multiset(values):
    return sorted(Fraction(v) - Fraction(v).__floor__() for v in values)


def run_tables(quick: bool = False, stream=None) -> int:
    out = stream or sys.stdout
    failures = 0

    def emit(name, ok, detail=""):
        nonlocal failures
        if not ok:
            failures += 1
        out.write(f"[{'PASS' if ok else 'FAIL'}] {name}{(' - ' + detail) if detail else ''}\n")
        out.flush()

    # commutator certificates of the k=2 swallowtail
    t0 = time.time()
    from .ring import WeightedRing
    from .symplectic import PoissonStructure

    S = WeightedRing(["A", "B", "C", "D"], [2, 3, 4, 5])
    P = PoissonStructure(S, [("A", "D", 3), ("C", "B", 1)])
    f1 = S.parse("-27*B^2*C+96*A*C^2-45*A*B*D+1125*D^2")
    f2 = S.parse("81*B^3-288*A*B*C+405*A^2*D-900*C*D")
    f3 = S.parse("-45*A*B^2+135*A^2*C-300*C^2+1125*B*D")
    A, B, C = S.variable("A"), S.variable("B"), S.variable("C")
    certs = [
        (P.bracket(f1, f2) - (-576 * A * f1 - 81 * B * f2 + 96 * C * f3)).is_zero(),
        (P.bracket(f1, f3) - (15 * A * f2 - 12 * B * f3)).is_zero(),
        (P.bracket(f2, f3) - (-900 * f1 + 18 * A * f3)).is_zero(),
    ]
    emit("swallowtail commutator certificates", all(certs), f"{time.time() - t0:.1f}s")

    # cuspidal edge
    t0 = time.time()
    edge = product_with_line(plane_curve_variety("y^2-x^3"))
    rep = lt_report(edge, bound=24, with_strata=False)
    emit(
        "cuspidal edge LT",
        rep.lt1 == 2 and rep.lt2 == 0,
        f"LT=({rep.lt1},{rep.lt2}) {time.time() - t0:.1f}s",
    )

    # plane curves: LT^1 equals the milnor number
    for text, mu_expected in CURVE_ROWS:
        t0 = time.time()
        curve = plane_curve_variety(text)
        rep = lt_report(curve, bound=24, with_strata=False)
        mu = milnor_number(curve.generators[0])
        ok = rep.lt1 == mu == mu_expected and rep.lt2 == 0
        emit(f"plane curve {text}: LT^1 = mu", ok,
             f"LT^1={rep.lt1} mu={mu} ({time.time() - t0:.1f}s)")

    rows = QUICK_ROWS + ([] if quick else SLOW_ROWS)
    for name, build, bound, lt1, lt2, eigs, printed in rows:
        t0 = time.time()
        try:
            variety = build()
            rep = lt_report(variety, bound=bound)
        except Exception as exc:
            emit(name, False, f"{type(exc).__name__}: {exc}")
            continue
        ok = rep.lt1 == lt1 and rep.lt2 == lt2 and rep.certified
        got = rep.eigenvalue_multiset()
        detail = f"LT=({rep.lt1},{rep.lt2})"
        ok = ok and got == sorted(eigs)
        if printed is not None:
            ok = ok and _frac_multiset(got) == _frac_multiset(printed)
            detail += " [printed list differs by per-class integer shifts; equal mod 1]"
        detail += f" ({time.time() - t0:.1f}s)"
        emit(name, ok, detail)

    out.write(f"{'all rows reproduced' if failures == 0 else str(failures) + ' failures'}\n")
    return 0 if failures == 0 else 2
