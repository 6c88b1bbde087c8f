"""Command-line interface.

    lagdef check <manifest>
    lagdef lt <manifest> [--bound N] [--t EXPR] [--format table|structured]
    lagdef gen swallowtail K | conormal "<poly>" | resonance L M A B C D
               | product <manifest>     [-o FILE]
    lagdef milnor "<poly>"
    lagdef tables [--quick]

Exit codes: 0 success, 2 precondition failure, 3 parse error,
4 resource bound exceeded.
"""

from __future__ import annotations

import argparse
import sys
import time

EXIT_OK = 0
EXIT_PRECONDITION = 2
EXIT_PARSE = 3
EXIT_RESOURCE = 4


def _load_manifest(path: str):
    from .manifest import ManifestError, parse_manifest

    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE)
    try:
        return parse_manifest(text, label=path)
    except ManifestError as exc:
        for err in exc.errors:
            print(f"manifest error: {err}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE)


def cmd_check(args) -> int:
    from .pipeline import stratify

    manifest = _load_manifest(args.manifest)
    variety = manifest.variety()
    ok_inv, certs = variety.is_involutive()
    qh, degrees = variety.is_quasi_homogeneous()
    print(f"quasi-homogeneous: {'yes' if qh else 'NO'}"
          + (f" (degrees {degrees})" if qh else ""))
    print(f"involutive: {'yes' if ok_inv else 'NO'}")
    for (i, j), cert in sorted(certs.items()):
        status = "0" if cert.remainder.is_zero() else f"remainder {cert.remainder}"
        print(f"  {{f{i + 1},f{j + 1}}} -> {status}")
    code = EXIT_OK
    if not ok_inv or not qh:
        code = EXIT_PRECONDITION
    else:
        strata = stratify(variety)
        print(f"condition P: {'yes' if strata.condition_p else 'NO'}")
        for s in strata.strata:
            print(f"  stratum k={s.k}: dim {s.dimension} (bound {s.k})")
        if not strata.condition_p:
            code = EXIT_PRECONDITION
    return code


def cmd_lt(args) -> int:
    from .pipeline import PipelineError, lt_report
    from .report import report_from_lt

    manifest = _load_manifest(args.manifest)
    variety = manifest.variety()
    bound = args.bound if args.bound is not None else manifest.degree_bound
    t_poly = None
    if args.t is not None:
        t_poly = manifest.ring().parse(args.t)
    elif manifest.t is not None:
        t_poly = manifest.t_polynomial()
    t0 = time.time()
    try:
        lt = lt_report(variety, bound=bound, t=t_poly)
    except PipelineError as exc:
        print(f"pipeline error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    report = report_from_lt(lt, timings={"total_s": round(time.time() - t0, 3)})
    if args.format == "structured":
        sys.stdout.write(report.to_json())
    else:
        sys.stdout.write(report.table())
    if not lt.certified:
        return EXIT_PRECONDITION
    return EXIT_OK


def _manifest_from_variety(variety, bound=60, t=None, label=""):
    from .manifest import Manifest

    ring = variety.ring
    pairs = [
        (ring.variables[p], ring.variables[q], c) for p, q, c in variety.poisson.pairs
    ]
    gens = [(f"f{i + 1}", str(g)) for i, g in enumerate(variety.generators)]
    return Manifest(
        variables=list(ring.variables),
        weights=list(ring.weights),
        field=ring.field,
        pairs=pairs,
        generators=gens,
        degree_bound=bound,
        t=t,
        label=label or variety.label,
    )


def cmd_gen(args) -> int:
    from .families import (
        FamilyError,
        conormal_variety,
        open_swallowtail,
        product_with_line,
        resonance_system,
    )

    try:
        if args.family == "swallowtail":
            k = int(args.args[0])
            variety = open_swallowtail(k, timeout_s=args.timeout)
            bound = 60
        elif args.family == "conormal":
            variety, smooth = conormal_variety(args.args[0])
            if smooth:
                print("note: the curve is smooth; the conormal is trivial", file=sys.stderr)
            bound = 60
        elif args.family == "resonance":
            lam, mu, a, b, c, d = (int(x) for x in args.args[:6])
            variety = resonance_system(lam, mu, (a, b, c, d))
            bound = 24
        elif args.family == "product":
            manifest = _load_manifest(args.args[0])
            variety = product_with_line(manifest.variety())
            bound = manifest.degree_bound
        else:
            print(f"unknown family {args.family!r}", file=sys.stderr)
            return EXIT_PARSE
    except (FamilyError, ValueError, IndexError) as exc:
        print(f"generator error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    manifest = _manifest_from_variety(variety, bound=bound)
    text = manifest.text()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_milnor(args) -> int:
    from .pipeline import PipelineError, milnor_number
    from .families import quasi_homogeneous_weights_2d
    from .ring import ParseError, WeightedRing

    probe = WeightedRing(["x", "y"], [1, 1])
    try:
        f = probe.parse(args.poly)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    weights = quasi_homogeneous_weights_2d(f) or (1, 1)
    ring = WeightedRing(["x", "y"], list(weights))
    try:
        mu = milnor_number(ring.parse(args.poly))
    except PipelineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    print(mu)
    return EXIT_OK


def cmd_tables(args) -> int:
    from .tables import run_tables

    return run_tables(quick=args.quick, stream=sys.stdout)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lagdef",
        description="Lagrangian deformation spaces of weighted-homogeneous involutive ideals",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="verify involutivity, homogeneity, condition P")
    p_check.add_argument("manifest")
    p_check.set_defaults(func=cmd_check)

    p_lt = sub.add_parser("lt", help="compute LT^1, LT^2 and the eigenvalue table")
    p_lt.add_argument("manifest")
    p_lt.add_argument("--bound", type=int, default=None)
    p_lt.add_argument("--t", default=None)
    p_lt.add_argument("--format", choices=("table", "structured"), default="table")
    p_lt.set_defaults(func=cmd_lt)

    p_gen = sub.add_parser("gen", help="generate a manifest for an example family")
    p_gen.add_argument("family", choices=("swallowtail", "conormal", "resonance", "product"))
    p_gen.add_argument("args", nargs="*")
    p_gen.add_argument("-o", "--output", default=None)
    p_gen.add_argument("--timeout", type=float, default=300.0,
                       help="elimination time bound in seconds")
    p_gen.set_defaults(func=cmd_gen)

    p_mil = sub.add_parser("milnor", help="milnor number of a plane curve")
    p_mil.add_argument("poly")
    p_mil.set_defaults(func=cmd_milnor)

    p_tab = sub.add_parser("tables", help="run the table reproduction suite")
    p_tab.add_argument("--quick", action="store_true", help="skip the slow rows")
    p_tab.set_defaults(func=cmd_tables)

    return parser


def main(argv=None) -> int:
    from .groebner import ResourceBoundExceeded

    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ResourceBoundExceeded as exc:
        print(f"resource bound exceeded: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except MemoryError:
        print("resource bound exceeded", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
