"""Command-line front end.

Exit codes: 0 success, 2 parse error, 3 assumption violation, 4 improper
parametrization, 5 internal invariant violation.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .curvegeom import check_assumption, map_degree, phi_enumerate
from .errors import (
    AssumptionViolation,
    DomainError,
    ImproperParametrization,
    InvariantViolation,
    ParseError,
    PreconditionError,
)
from .explorer import AnalysisConfig, analyze, parse_curve, torsion_fiber
from .multdep import (
    decompose,
    is_primitively_dependent,
    point_height,
    relation_lattice,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_ASSUMPTION = 3
EXIT_IMPROPER = 4
EXIT_INVARIANT = 5


def _parse_point(text: str):
    try:
        coords = tuple(Fraction(piece.strip()) for piece in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad point: {exc}", 0) from None
    if len(coords) < 2:
        raise ParseError("a point needs at least two coordinates", 0)
    return coords


def _parse_char(text: str):
    try:
        return tuple(int(piece.strip()) for piece in text.split(","))
    except ValueError as exc:
        raise ParseError(f"bad exponent vector: {exc}", 0) from None


def _emit(payload, fmt: str):
    if fmt == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(payload)


def _cmd_analyze(args) -> int:
    config = AnalysisConfig(
        torsion_order_bound=args.torsion_order,
        scan_height_bound=args.scan_height,
        oracle_exponent_bound=args.oracle_bound,
        output_format=args.format,
    )
    report = analyze(args.curve, config)
    sys.stdout.write(report.to_json() + "\n" if args.format == "json" else report.to_text())
    return EXIT_OK


def _cmd_phi(args) -> int:
    curve = parse_curve(args.curve)
    degree = map_degree(curve)
    if degree != 1:
        raise ImproperParametrization(degree)
    chars = phi_enumerate(curve)
    payload = [
        {
            "a": list(ch.a),
            "P": str(ch.P),
            "Q": str(ch.Q),
            "m": ch.m,
            "c": str(ch.c),
            "realizable_cyclotomic": ch.realizable_cyclotomic,
        }
        for ch in chars
    ]
    _emit(payload, args.format)
    return EXIT_OK


def _cmd_check(args) -> int:
    curve = parse_curve(args.curve)
    degree = map_degree(curve)
    violation = check_assumption(curve)
    payload = {
        "map_degree": degree,
        "assumption": {
            "ok": violation is None,
            "violation": list(violation) if violation else None,
        },
    }
    _emit(payload, args.format)
    if violation is not None:
        return EXIT_ASSUMPTION
    if degree != 1:
        return EXIT_IMPROPER
    return EXIT_OK


def _cmd_depends(args) -> int:
    point = _parse_point(args.point)
    lattice = relation_lattice(point)
    payload = {
        "point": [str(x) for x in point],
        "dependent": not lattice.is_zero(),
        "relations": [list(v) for v in lattice.vectors],
        "height": point_height(point),
    }
    _emit(payload, args.format)
    return EXIT_OK


def _cmd_primitive(args) -> int:
    point = _parse_point(args.point)
    witness = is_primitively_dependent(point)
    payload = {
        "point": [str(x) for x in point],
        "primitively_dependent": witness is not None,
        "relation": list(witness) if witness is not None else None,
    }
    _emit(payload, args.format)
    return EXIT_OK


def _cmd_decompose(args) -> int:
    point = _parse_point(args.point)
    dec = decompose(point)
    payload = {
        "point": [str(x) for x in point],
        "rank": dec.rank,
        "signs": list(dec.signs),
        "generators": [str(g) for g in dec.generators],
        "exponents": [list(row) for row in dec.exponents.entries],
    }
    _emit(payload, args.format)
    return EXIT_OK


def _cmd_fiber(args) -> int:
    curve = parse_curve(args.curve)
    char = _parse_char(args.char)
    points = torsion_fiber(curve, char, args.order)
    payload = {
        "char": list(char),
        "N": args.order,
        "factors": [str(fp.minimal_polynomial) for fp in points],
    }
    _emit(payload, args.format)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torusdep",
        description="Multiplicative dependence explorer for rational curves in a torus.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("json", "text"), default="json")

    p = sub.add_parser("analyze", help="full analysis pipeline")
    p.add_argument("--curve", required=True, help='coordinates, e.g. "(t-1)^3; t"')
    p.add_argument("--torsion-order", type=int, default=12, dest="torsion_order")
    p.add_argument("--scan-height", type=int, default=50, dest="scan_height")
    p.add_argument("--oracle-bound", type=int, default=6, dest="oracle_bound")
    add_format(p)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("phi", help="enumerate the finite character set")
    p.add_argument("--curve", required=True)
    add_format(p)
    p.set_defaults(func=_cmd_phi)

    p = sub.add_parser("check", help="properness and constant-monomial checks")
    p.add_argument("--curve", required=True)
    add_format(p)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("depends", help="multiplicative dependence of a rational point")
    p.add_argument("--point", required=True, help='coordinates, e.g. "2,8"')
    add_format(p)
    p.set_defaults(func=_cmd_depends)

    p = sub.add_parser("primitive", help="primitive dependence of a rational point")
    p.add_argument("--point", required=True)
    add_format(p)
    p.set_defaults(func=_cmd_primitive)

    p = sub.add_parser("decompose", help="torsion/free decomposition of a point")
    p.add_argument("--point", required=True)
    add_format(p)
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("fiber", help="torsion fiber of a character")
    p.add_argument("--curve", required=True)
    p.add_argument("--char", required=True, help='exponent vector, e.g. "1,0"')
    p.add_argument("--order", type=int, required=True)
    add_format(p)
    p.set_defaults(func=_cmd_fiber)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (DomainError, PreconditionError) as exc:
        # Surface stage-specific failures where identifiable.
        msg = str(exc)
        print(f"error: {msg}", file=sys.stderr)
        if "standing hypothesis" in msg:
            return EXIT_ASSUMPTION
        if "improper" in msg:
            return EXIT_IMPROPER
        return EXIT_PARSE
    except AssumptionViolation as exc:
        print(f"assumption violation: {exc}", file=sys.stderr)
        return EXIT_ASSUMPTION
    except ImproperParametrization as exc:
        print(f"improper parametrization: {exc}", file=sys.stderr)
        return EXIT_IMPROPER
    except InvariantViolation as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
