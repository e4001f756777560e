"""Analysis pipeline: torsion-fiber enumeration, bounded-height scans for
multiplicatively dependent parameter values, and machine-readable reports.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .curvegeom import (
    Character,
    CurveData,
    NormalizedCharacter,
    check_assumption,
    character_restrict,
    map_degree,
    normalize_character,
    phi_enumerate,
)
from .errors import (
    AssumptionViolation,
    DomainError,
    ImproperParametrization,
)
from .exactcore import Poly, RatFunc, factor_poly
from .multdep import (
    is_primitively_dependent,
    point_height,
    relation_lattice,
    root_of_unity_order,
)
from .parser import parse_coordinates


@dataclass(frozen=True)
class AnalysisConfig:
    torsion_order_bound: int = 12
    scan_height_bound: int = 50
    oracle_exponent_bound: int = 6
    output_format: str = "json"

    def __post_init__(self):
        if min(self.torsion_order_bound, self.scan_height_bound, self.oracle_exponent_bound) < 1:
            raise DomainError("all bounds must be at least 1")
        if self.output_format not in ("json", "text"):
            raise DomainError("output format must be 'json' or 'text'")


@dataclass(frozen=True)
class FiberPoint:
    """A Galois orbit of curve points where the character value is a root
    of unity of order dividing the given order."""

    minimal_polynomial: Poly
    character: Character
    order: int


@dataclass(frozen=True)
class ScanRecord:
    parameter: Fraction
    point: Tuple[Fraction, ...]
    dependent: bool
    primitive: bool
    relation: Optional[Tuple[int, ...]]
    height: float
    fiber_character: Optional[Character]  # None means EXCEPTIONAL

    @property
    def classification(self) -> str:
        if self.fiber_character is None:
            return "EXCEPTIONAL"
        return "FIBER(" + ",".join(str(x) for x in self.fiber_character) + ")"


def parse_curve(text: str) -> CurveData:
    """Parse a semicolon-separated coordinate list into curve data."""
    return CurveData.build(parse_coordinates(text))


def torsion_fiber(curve: CurveData, a: Sequence[int], N: int) -> List[FiberPoint]:
    """Fiber of the restricted character over roots of unity of order
    dividing N, as irreducible polynomials in the curve parameter.

    Factors the numerator of phi**N - 1 over Q and keeps the factors whose
    roots leave every coordinate finite and nonzero.
    """
    if N < 1:
        raise DomainError("torsion order must be positive")
    norm = normalize_character(curve, a)  # validates the character
    phi = character_restrict(curve, norm.a)
    g = phi ** N - RatFunc(Poly([1]))
    if g.is_zero():
        raise DomainError("character is torsion on the whole curve")
    kept = []
    for q, _mult in factor_poly(g.num)[1]:
        bad = any(
            q.divides(f.num) or q.divides(f.den) for f in curve.coords
        )
        if not bad:
            kept.append(FiberPoint(minimal_polynomial=q, character=norm.a, order=N))
    return kept


def _scan_parameters(H: int):
    for q in range(1, H + 1):
        for p in range(-H, H + 1):
            if Fraction(p, q).denominator == q:  # gcd(p, q) == 1 representative
                yield Fraction(p, q)


def scan_dependent(
    curve: CurveData,
    config: AnalysisConfig,
    characters: Optional[Sequence[NormalizedCharacter]] = None,
) -> List[ScanRecord]:
    """Scan rational parameters with max(|p|, q) <= H for dependent points,
    classifying each as a torsion-fiber point of an enumerated character or
    as exceptional. Deterministic: sorted by (height, parameter)."""
    if check_assumption(curve) is not None:
        raise AssumptionViolation(check_assumption(curve))
    if characters is None:
        characters = phi_enumerate(curve)
    # Prefer the positively oriented member of each +- pair when classifying.
    ordered = sorted(
        characters,
        key=lambda ch: (next((x for x in ch.a if x), 0) < 0, ch.a),
    )
    records = []
    for t0 in _scan_parameters(config.scan_height_bound):
        point = []
        for f in curve.coords:
            if f.den(t0) == 0:
                point = None
                break
            v = f(t0)
            if v == 0:
                point = None
                break
            point.append(v)
        if point is None:
            continue
        point = tuple(point)
        lattice = relation_lattice(point)
        if lattice.is_zero():
            continue
        witness = is_primitively_dependent(point)
        relation = witness if witness is not None else lattice.vectors[0]
        fiber_char = None
        for ch in ordered:
            value = Fraction(1)
            for x, e in zip(point, ch.a):
                value *= x ** e
            if root_of_unity_order(value) is not None:
                fiber_char = ch.a
                break
        records.append(
            ScanRecord(
                parameter=t0,
                point=point,
                dependent=True,
                primitive=witness is not None,
                relation=relation,
                height=point_height(point),
                fiber_character=fiber_char,
            )
        )
    records.sort(key=lambda r: (r.height, r.parameter))
    return records


@dataclass(frozen=True)
class Report:
    curve_text: Tuple[str, ...]
    map_degree: int
    assumption_ok: bool
    violation: Optional[Tuple[int, ...]]
    phi: Tuple[NormalizedCharacter, ...]
    fibers: Tuple[Tuple[Character, int, Tuple[Poly, ...]], ...]
    scan: Tuple[ScanRecord, ...]

    @property
    def max_dependent_height(self) -> float:
        return max((r.height for r in self.scan), default=0.0)

    @property
    def exceptional_count(self) -> int:
        return sum(1 for r in self.scan if r.fiber_character is None)

    def to_dict(self) -> Dict:
        return {
            "curve": list(self.curve_text),
            "map_degree": self.map_degree,
            "assumption": {
                "ok": self.assumption_ok,
                "violation": list(self.violation) if self.violation else None,
            },
            "phi": [
                {
                    "a": list(ch.a),
                    "P": str(ch.P),
                    "Q": str(ch.Q),
                    "m": ch.m,
                    "c": str(ch.c),
                    "realizable_cyclotomic": ch.realizable_cyclotomic,
                }
                for ch in self.phi
            ],
            "fibers": [
                {
                    "char": list(char),
                    "N": order,
                    "factors": [str(q) for q in factors],
                }
                for char, order, factors in self.fibers
            ],
            "scan": [
                {
                    "t": str(r.parameter),
                    "point": [str(x) for x in r.point],
                    "dependent": r.dependent,
                    "primitive": r.primitive,
                    "relation": list(r.relation) if r.relation is not None else None,
                    "height": r.height,
                    "class": r.classification,
                }
                for r in self.scan
            ],
            "summary": {
                "max_dependent_height": self.max_dependent_height,
                "exceptional_count": self.exceptional_count,
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        lines = [f"curve: {'; '.join(self.curve_text)}"]
        lines.append(f"map degree: {self.map_degree}")
        lines.append(f"assumption ok: {self.assumption_ok}")
        lines.append(f"characters ({len(self.phi)}):")
        for ch in self.phi:
            lines.append(
                f"  a={list(ch.a)} P={ch.P} Q={ch.Q} m={ch.m} c={ch.c}"
                f" realizable={ch.realizable_cyclotomic}"
            )
        lines.append(f"fibers ({len(self.fibers)}):")
        for char, order, factors in self.fibers:
            body = ", ".join(str(q) for q in factors) or "(empty)"
            lines.append(f"  char={list(char)} N={order}: {body}")
        lines.append(f"dependent records ({len(self.scan)}):")
        for r in self.scan:
            lines.append(
                f"  t={r.parameter} point={[str(x) for x in r.point]}"
                f" primitive={r.primitive} relation={list(r.relation)}"
                f" height={r.height:.6f} class={r.classification}"
            )
        lines.append(f"max dependent height: {self.max_dependent_height}")
        lines.append(f"exceptional count: {self.exceptional_count}")
        return "\n".join(lines) + "\n"


def analyze(curve_text: str, config: AnalysisConfig = AnalysisConfig()) -> Report:
    """Full pipeline: parse, properness and hypothesis checks, character
    enumeration, torsion fibers for every character and order up to the
    bound, and the bounded-height dependence scan."""
    coords = parse_coordinates(curve_text)
    curve = CurveData.build(coords)
    degree = map_degree(curve)
    if degree != 1:
        raise ImproperParametrization(degree)
    violation = check_assumption(curve)
    if violation is not None:
        raise AssumptionViolation(violation)
    phi = tuple(phi_enumerate(curve))
    fibers = []
    for ch in phi:
        for order in range(1, config.torsion_order_bound + 1):
            points = torsion_fiber(curve, ch.a, order)
            fibers.append((ch.a, order, tuple(fp.minimal_polynomial for fp in points)))
    scan = tuple(scan_dependent(curve, config, phi))
    return Report(
        curve_text=tuple(str(f) for f in coords),
        map_degree=degree,
        assumption_ok=True,
        violation=None,
        phi=phi,
        fibers=tuple(fibers),
        scan=scan,
    )
