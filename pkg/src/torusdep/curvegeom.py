"""Divisors of coordinate functions on a parametrized curve in the torus,
the constant-monomial (standing hypothesis) check, and enumeration of the
finite set of primitive characters whose restriction to the curve is a
power map up to a Moebius change of coordinate.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import ClassVar, Dict, List, Optional, Sequence, Tuple

import sympy

from .errors import DomainError, InvariantViolation, PreconditionError
from .exactcore import (
    Mobius,
    Poly,
    RatFunc,
    compose_mobius,
    factor_poly,
    monomial_product,
    nth_power_in_Q,
)
from .intlattice import IntMatrix, content, kernel_basis

Character = Tuple[int, ...]


@dataclass(frozen=True, order=False)
class Place:
    """A place of the projective line over Q: a monic irreducible
    polynomial, or the point at infinity (poly is None)."""

    poly: Optional[Poly]

    INFINITY: ClassVar["Place"] = None  # set right after the class body

    @classmethod
    def finite(cls, p: Poly) -> "Place":
        if not p.is_monic() or p.is_constant():
            raise DomainError("finite places carry monic nonconstant polynomials")
        return cls(p)

    @property
    def is_infinity(self) -> bool:
        return self.poly is None

    @property
    def degree(self) -> int:
        return 1 if self.poly is None else self.poly.degree

    def rational_root(self) -> Fraction:
        """The root of a degree-1 finite place."""
        if self.poly is None or self.poly.degree != 1:
            raise DomainError("not a finite degree-1 place")
        return -self.poly.coeffs[0]

    def sort_key(self):
        if self.poly is None:
            return (1, 0, ())
        return (0, self.poly.degree, tuple(reversed(self.poly.coeffs)))

    def __str__(self):
        return "inf" if self.poly is None else str(self.poly)

    def __repr__(self):
        return f"Place({self})"


Place.INFINITY = Place(None)


class Divisor:
    """A finite formal sum of places with nonzero integer multiplicities."""

    __slots__ = ("support",)

    def __init__(self, support: Dict[Place, int]):
        object.__setattr__(
            self, "support", {p: int(m) for p, m in support.items() if m != 0}
        )

    def __setattr__(self, name, value):
        raise AttributeError("Divisor is immutable")

    def multiplicity(self, place: Place) -> int:
        return self.support.get(place, 0)

    def items(self) -> List[Tuple[Place, int]]:
        return sorted(self.support.items(), key=lambda pm: pm[0].sort_key())

    def places(self) -> List[Place]:
        return [p for p, _ in self.items()]

    def total_degree(self) -> int:
        return sum(m * p.degree for p, m in self.support.items())

    def __eq__(self, other):
        if isinstance(other, Divisor):
            return self.support == other.support
        return NotImplemented

    def __repr__(self):
        body = " + ".join(f"{m}*({p})" for p, m in self.items())
        return f"Divisor({body or '0'})"


def divisor_of(f: RatFunc) -> Divisor:
    """The divisor of a nonzero rational function on the projective line."""
    if f.is_zero():
        raise DomainError("the zero function has no divisor")
    support: Dict[Place, int] = {}
    if not f.num.is_constant():
        for q, mult in factor_poly(f.num)[1]:
            support[Place.finite(q)] = support.get(Place.finite(q), 0) + mult
    if not f.den.is_constant():
        for q, mult in factor_poly(f.den)[1]:
            support[Place.finite(q)] = support.get(Place.finite(q), 0) - mult
    inf_mult = f.den.degree - f.num.degree
    if inf_mult:
        support[Place.INFINITY] = inf_mult
    return Divisor(support)


@dataclass(frozen=True)
class CurveData:
    """A curve in the n-torus given by nonzero coordinate functions of t,
    with the cached matrix of coordinate divisors (rows = places)."""

    coords: Tuple[RatFunc, ...]
    place_index: Tuple[Place, ...]
    divisor_matrix: IntMatrix

    @classmethod
    def build(cls, coords: Sequence[RatFunc]) -> "CurveData":
        coords = tuple(coords)
        if len(coords) < 2:
            raise DomainError("a curve needs at least two coordinates")
        if any(f.is_zero() for f in coords):
            raise DomainError("coordinate functions must be nonzero")
        divisors = [divisor_of(f) for f in coords]
        places = sorted(
            {p for d in divisors for p in d.places()}, key=lambda p: p.sort_key()
        )
        if places:
            matrix = IntMatrix([[d.multiplicity(p) for d in divisors] for p in places])
        else:
            # every coordinate is constant; keep a zero row so the kernel
            # (and with it the hypothesis check) still sees all n columns
            matrix = IntMatrix([[0] * len(coords)])
        return cls(coords, tuple(places), matrix)

    @property
    def n(self) -> int:
        return len(self.coords)


@dataclass(frozen=True)
class NormalizedCharacter:
    """A primitive character whose restriction to the curve is c * s**m in
    the coordinate s = mu(t) sending the zero P to 0 and the pole Q to
    infinity."""

    a: Character
    P: Place
    Q: Place
    m: int
    c: Fraction
    realizable_cyclotomic: bool


def map_degree(curve: CurveData) -> int:
    """Degree of t -> (f_1(t), ..., f_n(t)) onto its image.

    Computed as the t-degree of the gcd over Q(s) of the cross-numerators
    num_i(t)*den_i(s) - num_i(s)*den_i(t); the parametrization is proper
    (birational onto the curve) iff this degree is 1.
    """
    t, s = sympy.symbols("t s")
    polys = []
    for f in curve.coords:
        if f.is_constant():
            continue
        num_t = sympy.Poly(
            [sympy.Rational(c.numerator, c.denominator) for c in reversed(f.num.coeffs)], t
        ).as_expr()
        den_t = sympy.Poly(
            [sympy.Rational(c.numerator, c.denominator) for c in reversed(f.den.coeffs)], t
        ).as_expr()
        num_s = num_t.subs(t, s)
        den_s = den_t.subs(t, s)
        polys.append(sympy.expand(num_t * den_s - num_s * den_t))
    if not polys:
        raise DomainError("all coordinates are constant")
    g = polys[0]
    for p in polys[1:]:
        g = sympy.gcd(g, p)
    return sympy.Poly(g, t).degree()


def check_assumption(curve: CurveData) -> Optional[Character]:
    """None if no nontrivial monomial in the coordinates is constant;
    otherwise a primitive exponent vector witnessing a constant monomial."""
    kernel = kernel_basis(curve.divisor_matrix)
    if kernel.is_zero():
        return None
    v = kernel.vectors[0]
    g = content(v)
    v = tuple(x // g for x in v)
    for x in v:
        if x != 0:
            return v if x > 0 else tuple(-y for y in v)
    raise InvariantViolation("zero vector in a kernel basis")


def character_restrict(curve: CurveData, a: Sequence[int]) -> RatFunc:
    """The restriction of the character x -> x**a to the curve."""
    return monomial_product(curve.coords, tuple(a))


def cyclotomic_realizable(c: Fraction, m: int) -> bool:
    """Whether the scaling constant c can be absorbed over the cyclotomic
    closure of Q: true iff m divides 2*v_p(c) for every prime p, i.e. c**2
    is an m-th power in Q."""
    if c == 0:
        raise DomainError("scaling constant must be nonzero")
    if m < 1:
        raise DomainError("exponent must be a positive integer")
    return nth_power_in_Q(c * c, m) is not None


def normalize_character(curve: CurveData, a: Sequence[int]) -> NormalizedCharacter:
    """Normalize a character whose divisor on the curve is m(P) - m(Q) with
    P, Q rational: record (P, Q, m, c) with the restriction equal to
    c * s**m after the Moebius substitution sending P to 0 and Q to inf."""
    a = tuple(int(x) for x in a)
    phi = character_restrict(curve, a)
    div = divisor_of(phi)
    items = div.items()
    if len(items) != 2 or any(p.degree != 1 for p, _ in items):
        raise DomainError(
            "character divisor must be supported on two degree-1 places"
        )
    (p1, m1), (p2, m2) = items
    if m1 + m2 != 0:
        raise InvariantViolation("two-point divisor with non-opposite multiplicities")
    P, Q, m = (p1, p2, m1) if m1 > 0 else (p2, p1, m2)
    mu = _mobius_to_zero_inf(P, Q)
    composed = compose_mobius(phi, mu.inverse())
    if composed.den != Poly([1]):
        raise InvariantViolation("normalized character is not polynomial")
    coeffs = composed.num.coeffs
    if composed.num.degree != m or any(c != 0 for c in coeffs[:-1]):
        raise InvariantViolation("normalized character is not a monomial")
    c = coeffs[-1]
    return NormalizedCharacter(
        a=a, P=P, Q=Q, m=m, c=c, realizable_cyclotomic=cyclotomic_realizable(c, m)
    )


def _mobius_to_zero_inf(P: Place, Q: Place) -> Mobius:
    """The Moebius map with mu(P) = 0 and mu(Q) = infinity."""
    if P.is_infinity and Q.is_infinity:
        raise DomainError("P and Q must be distinct")
    if Q.is_infinity:
        return Mobius(1, -P.rational_root(), 0, 1)
    if P.is_infinity:
        return Mobius(0, 1, 1, -Q.rational_root())
    p, q = P.rational_root(), Q.rational_root()
    if p == q:
        raise DomainError("P and Q must be distinct")
    return Mobius(1, -p, 1, -q)


def phi_enumerate(curve: CurveData) -> List[NormalizedCharacter]:
    """All primitive characters whose divisor on the curve is supported on
    exactly two places, both necessarily rational, normalized and sorted.

    Candidate place pairs are drawn from the degree-1 places in the union
    of the coordinate-divisor supports; for each pair the kernel of the
    divisor matrix with those two rows deleted has rank at most 1 under
    the standing hypothesis, and a rank-1 kernel yields one +- pair.
    """
    violation = check_assumption(curve)
    if violation is not None:
        raise PreconditionError(
            f"curve violates the standing hypothesis via {violation}"
        )
    deg = map_degree(curve)
    if deg != 1:
        raise PreconditionError(f"parametrization is improper (degree {deg})")
    places = curve.place_index
    rational = [i for i, p in enumerate(places) if p.degree == 1]
    found: Dict[Character, None] = {}
    for ii in range(len(rational)):
        for jj in range(ii + 1, len(rational)):
            keep = [
                r
                for r in range(len(places))
                if r != rational[ii] and r != rational[jj]
            ]
            if not keep:
                raise InvariantViolation(
                    "divisor matrix with two places contradicts the hypothesis"
                )
            sub = IntMatrix([curve.divisor_matrix.row(r) for r in keep])
            kernel = kernel_basis(sub)
            if kernel.rank == 0:
                continue
            if kernel.rank >= 2:
                raise InvariantViolation(
                    "place pair admits a rank-2 character space"
                )
            a = kernel.vectors[0]
            if content(a) != 1:
                raise InvariantViolation("saturated kernel produced an imprimitive vector")
            image = curve.divisor_matrix.mul_vec(a)
            support = {r for r, v in enumerate(image) if v != 0}
            if support != {rational[ii], rational[jj]}:
                continue
            found.setdefault(a, None)
            found.setdefault(tuple(-x for x in a), None)
    return [normalize_character(curve, a) for a in sorted(found)]


def phi_oracle(curve: CurveData, B: int) -> List[Character]:
    """Exhaustive oracle: all primitive exponent vectors with sup-norm at
    most B whose restricted character has a two-point rational divisor.

    Factors the actual monomial product, independently of the divisor
    matrix route used by phi_enumerate. Test use only.
    """
    if check_assumption(curve) is not None:
        raise PreconditionError("curve violates the standing hypothesis")
    if B < 1:
        raise DomainError("oracle bound must be positive")
    out: List[Character] = []
    for a in _box_vectors(curve.n, B):
        if content(a) != 1:
            continue
        div = divisor_of(character_restrict(curve, a))
        items = div.items()
        if len(items) == 2 and all(p.degree == 1 for p, _ in items):
            out.append(a)
    return sorted(out)


def _box_vectors(n: int, B: int):
    def rec(prefix):
        if len(prefix) == n:
            if any(prefix):
                yield tuple(prefix)
            return
        for v in range(-B, B + 1):
            yield from rec(prefix + [v])

    yield from rec([])
