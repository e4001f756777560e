"""Exact arithmetic substrate: rationals, univariate polynomials over Q,
reduced rational functions, and Moebius transformations.

Rationals are plain :class:`fractions.Fraction` values (always reduced,
positive denominator). Polynomials are dense coefficient tuples starting
with the constant term; the zero polynomial has degree -1.
"""
from __future__ import annotations

import functools
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import sympy

from .errors import DomainError, PreconditionError

Rational = Fraction

_T = sympy.Symbol("t")


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, sympy.Rational):
        return Fraction(int(x.p), int(x.q))
    raise TypeError(f"cannot coerce {x!r} to a rational")


class Poly:
    """A univariate polynomial over Q.

    >>> Poly([1, 0, 1])
    Poly('t^2 + 1')
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def variable(cls) -> "Poly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    @property
    def leading(self) -> Fraction:
        if not self.coeffs:
            raise DomainError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def monic(self) -> "Poly":
        lc = self.leading
        if lc == 1:
            return self
        return Poly([c / lc for c in self.coeffs])

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        b = list(other.coeffs) + [Fraction(0)] * (n - len(other.coeffs))
        return Poly([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) + (-self)

    def __mul__(self, other):
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise DomainError("negative polynomial power")
        result = Poly([1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        other = _as_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lc = other.leading
        if len(rem) - 1 < dq:
            return Poly(), self
        quot = [Fraction(0)] * (len(rem) - dq)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            q = c / lc
            quot[i - dq] = q
            for j, b in enumerate(other.coeffs):
                rem[i - dq + j] -= q * b
        return Poly(quot), Poly(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other: "Poly") -> bool:
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    def __call__(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def compose_poly(self, g: "Poly") -> "Poly":
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * g + Poly([c])
        return acc

    def __str__(self):
        return self.to_string("t")

    def to_string(self, var: str = "t") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                tpow = var if i == 1 else f"{var}^{i}"
                body = tpow if mag == 1 else f"{mag}*{tpow}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self):
        return f"Poly('{self}')"


def _as_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    return Poly([_frac(x)])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd of two polynomials (zero polynomial if both are zero)."""
    while not b.is_zero():
        a, b = b, a % b
        if not b.is_zero():
            b = b.monic()
    return a.monic() if not a.is_zero() else a


class RatFunc:
    """A reduced rational function num/den with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=Poly([1])):
        num = _as_poly(num)
        den = _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = Poly(), Poly([1])
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
            lc = den.leading
            if lc != 1:
                num = num * Poly([1 / lc])
                den = den.monic()
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    @classmethod
    def constant(cls, c) -> "RatFunc":
        return cls(Poly([c]))

    @classmethod
    def variable(cls) -> "RatFunc":
        return cls(Poly.variable())

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise DomainError("not a constant function")
        return self.num.coeffs[0] if self.num.coeffs else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __add__(self, other):
        other = _as_ratfunc(other)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_as_ratfunc(other))

    def __rsub__(self, other):
        return _as_ratfunc(other) + (-self)

    def __mul__(self, other):
        other = _as_ratfunc(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_ratfunc(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _as_ratfunc(other) / self

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero function")
        return RatFunc(self.den, self.num)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = RatFunc(Poly([1]))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, x: Fraction) -> Fraction:
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"pole at t = {x}")
        return self.num(x) / d

    def compose(self, g: "RatFunc") -> "RatFunc":
        """Substitute t := g(s), exactly."""
        num = _poly_at_ratfunc(self.num, g)
        den = _poly_at_ratfunc(self.den, g)
        if den.is_zero():
            raise ZeroDivisionError("composition hits an identical zero denominator")
        return num / den

    def __str__(self):
        if self.den == Poly([1]):
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RatFunc('{self}')"


def _as_ratfunc(x) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, Poly):
        return RatFunc(x)
    return RatFunc(Poly([_frac(x)]))


def _poly_at_ratfunc(p: Poly, g: RatFunc) -> RatFunc:
    acc = RatFunc(Poly())
    for c in reversed(p.coeffs):
        acc = acc * g + RatFunc(Poly([c]))
    return acc


class Mobius:
    """An invertible map t -> (a*t + b)/(c*t + d)."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        a, b, c, d = _frac(a), _frac(b), _frac(c), _frac(d)
        if a * d - b * c == 0:
            raise DomainError("Moebius transformation must have nonzero determinant")
        for name, val in zip("abcd", (a, b, c, d)):
            object.__setattr__(self, name, val)

    def __setattr__(self, name, value):
        raise AttributeError("Mobius is immutable")

    @classmethod
    def identity(cls) -> "Mobius":
        return cls(1, 0, 0, 1)

    @property
    def determinant(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    def as_ratfunc(self) -> RatFunc:
        return RatFunc(Poly([self.b, self.a]), Poly([self.d, self.c]))

    def inverse(self) -> "Mobius":
        return Mobius(self.d, -self.b, -self.c, self.a)

    def compose(self, other: "Mobius") -> "Mobius":
        """self after other: t -> self(other(t))."""
        return Mobius(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __eq__(self, other):
        if not isinstance(other, Mobius):
            return NotImplemented
        # Projective equality: equal as maps.
        return (
            self.a * other.b == self.b * other.a
            and self.a * other.c == self.c * other.a
            and self.a * other.d == self.d * other.a
            and self.b * other.c == self.c * other.b
            and self.b * other.d == self.d * other.b
            and self.c * other.d == self.d * other.c
        )

    def __repr__(self):
        return f"Mobius({self.a}, {self.b}, {self.c}, {self.d})"


def compose_mobius(f: RatFunc, mu: Mobius) -> RatFunc:
    """Exact substitution f(mu(s))."""
    return f.compose(mu.as_ratfunc())


def _poly_to_sympy(p: Poly):
    return sympy.Poly(
        [sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)],
        _T,
        domain="QQ",
    )


def _sympy_to_poly(sp) -> Poly:
    return Poly([_frac(c) for c in reversed(sp.all_coeffs())])


def factor_poly(p: Poly):
    """Factor p over Q into a unit and monic irreducible factors.

    Returns (unit, [(factor, multiplicity), ...]) with the factors monic,
    pairwise distinct and sorted by (degree, coefficients from the top).
    """
    if p.is_zero():
        raise DomainError("cannot factor the zero polynomial")
    if p.is_constant():
        return p.coeffs[0], []
    unit, raw = _poly_to_sympy(p).factor_list()
    unit = _frac(unit)
    factors = []
    for f, mult in raw:
        q = _sympy_to_poly(f)
        lc = q.leading
        unit *= lc ** mult
        factors.append((q.monic(), int(mult)))
    factors.sort(key=lambda fm: (fm[0].degree, tuple(reversed(fm[0].coeffs))))
    return unit, factors


def expand_factors(unit: Fraction, factors) -> Poly:
    """Inverse of factor_poly: unit * prod(factor**mult)."""
    out = Poly([unit])
    for f, mult in factors:
        out = out * f ** mult
    return out


def euler_phi(n: int) -> int:
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@functools.lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> Poly:
    """The n-th cyclotomic polynomial, by exact division of t^n - 1."""
    if n < 1:
        raise DomainError("cyclotomic index must be positive")
    num = Poly([-1] + [0] * (n - 1) + [1])
    for d in range(1, n):
        if n % d == 0:
            num //= cyclotomic_poly(d)
    return num


def is_cyclotomic(p: Poly) -> Optional[int]:
    """Return n if p is the n-th cyclotomic polynomial, else None.

    Candidates come from the preimage of deg(p) under Euler's totient
    (phi(n) >= sqrt(n/2), so n <= 2*deg^2 suffices) and are verified by
    exact coefficient comparison.
    """
    if not p.is_monic() or p.is_constant():
        raise PreconditionError("is_cyclotomic expects a monic nonconstant polynomial")
    d = p.degree
    bound = max(2, 2 * d * d)
    for n in range(1, bound + 1):
        if euler_phi(n) == d and p == cyclotomic_poly(n):
            return n
    return None


def monomial_product(fs: Sequence[RatFunc], a: Sequence[int]) -> RatFunc:
    """The fully reduced product prod(fs[i] ** a[i])."""
    if len(fs) != len(a):
        raise DomainError(f"got {len(fs)} functions but {len(a)} exponents")
    num = Poly([1])
    den = Poly([1])
    for f, e in zip(fs, a):
        if f.is_zero():
            raise DomainError("monomial product of the zero function")
        if e >= 0:
            num = num * f.num ** e
            den = den * f.den ** e
        else:
            num = num * f.den ** (-e)
            den = den * f.num ** (-e)
    return RatFunc(num, den)


def int_nth_root(x: int, m: int) -> Optional[int]:
    """Exact m-th root of a nonnegative integer, or None."""
    if x < 0 or m < 1:
        raise DomainError("int_nth_root expects x >= 0, m >= 1")
    if x in (0, 1) or m == 1:
        return x
    lo, hi = 0, 1
    while hi ** m < x:
        hi <<= 1
    lo = hi >> 1
    while lo <= hi:
        mid = (lo + hi) // 2
        v = mid ** m
        if v == x:
            return mid
        if v < x:
            lo = mid + 1
        else:
            hi = mid - 1
    return None


def nth_power_in_Q(c: Fraction, m: int) -> Optional[Fraction]:
    """A rational b with b**m == c, if one exists."""
    c = _frac(c)
    if c == 0:
        raise DomainError("nth_power_in_Q expects a nonzero argument")
    if m < 1:
        raise DomainError("exponent must be a positive integer")
    if c < 0 and m % 2 == 0:
        return None
    rn = int_nth_root(abs(c.numerator), m)
    if rn is None:
        return None
    rd = int_nth_root(c.denominator, m)
    if rd is None:
        return None
    b = Fraction(rn, rd)
    if c < 0:
        b = -b
    return b
