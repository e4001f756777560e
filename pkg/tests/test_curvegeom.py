import random
from fractions import Fraction as F

import pytest

from torusdep.curvegeom import (
    CurveData,
    Place,
    character_restrict,
    check_assumption,
    cyclotomic_realizable,
    divisor_of,
    map_degree,
    normalize_character,
    phi_enumerate,
    phi_oracle,
)
from torusdep.errors import DomainError, PreconditionError
from torusdep.exactcore import (
    Mobius,
    Poly,
    RatFunc,
    compose_mobius,
    monomial_product,
    nth_power_in_Q,
)

T = Poly.variable()
INF = Place.INFINITY


def curve(*fs):
    return CurveData.build([f if isinstance(f, RatFunc) else RatFunc(f) for f in fs])


def example1(d):
    return curve((T - 1) ** d, T)


def test_divisor_examples():
    d = divisor_of(RatFunc(T))
    assert d.support == {Place.finite(T): 1, INF: -1}
    d = divisor_of(RatFunc((T - 1) ** 3, T))
    assert d.support == {Place.finite(T - 1): 3, Place.finite(T): -1, INF: -2}
    d = divisor_of(RatFunc(T ** 2 + 1))
    assert d.support == {Place.finite(T ** 2 + 1): 1, INF: -2}
    with pytest.raises(DomainError):
        divisor_of(RatFunc(Poly()))


def _rand_ratfunc(rng, max_deg=4, bound=3):
    def rand_poly():
        while True:
            p = Poly([rng.randint(-bound, bound) for _ in range(rng.randint(1, max_deg + 1))])
            if not p.is_zero():
                return p

    return RatFunc(rand_poly(), rand_poly())


def test_divisor_degree_zero_property():
    rng = random.Random(21)
    for _ in range(50):
        f = _rand_ratfunc(rng)
        if f.is_zero():
            continue
        assert divisor_of(f).total_degree() == 0


def test_divisor_linearity():
    rng = random.Random(22)
    for _ in range(25):
        fs = [_rand_ratfunc(rng, 3, 2) for _ in range(2)]
        if any(f.is_zero() or f.is_constant() for f in fs):
            continue
        a = [rng.randint(-3, 3) for _ in range(2)]
        if not any(a):
            continue
        prod = monomial_product(fs, a)
        if prod.is_constant():
            continue
        combined = {}
        for f, e in zip(fs, a):
            for p, m in divisor_of(f).support.items():
                combined[p] = combined.get(p, 0) + e * m
        combined = {p: m for p, m in combined.items() if m}
        assert divisor_of(prod).support == combined


def test_map_degree_examples():
    assert map_degree(curve(T, T ** 2)) == 1
    assert map_degree(curve(T ** 2, T ** 3)) == 1
    assert map_degree(curve(T ** 2, T ** 4)) == 2
    with pytest.raises(DomainError):
        map_degree(curve(Poly([2]), Poly([3])))


def test_check_assumption_examples():
    assert check_assumption(example1(3)) is None
    assert check_assumption(curve(Poly([2]), T)) == (1, 0)
    assert check_assumption(curve(T, 2 * T)) == (1, -1)


def test_character_restrict_examples():
    c = example1(3)
    assert character_restrict(c, (1, 0)) == RatFunc((T - 1) ** 3)
    assert character_restrict(c, (0, 1)) == RatFunc(T)
    assert character_restrict(c, (1, -3)) == RatFunc((T - 1) ** 3, T ** 3)


def test_cyclotomic_realizable():
    assert cyclotomic_realizable(F(2), 2) is True
    assert cyclotomic_realizable(F(2), 3) is False
    for c in (F(7), F(-3, 5), F(1)):
        assert cyclotomic_realizable(c, 1) is True
    with pytest.raises(DomainError):
        cyclotomic_realizable(F(0), 2)


def test_cyclotomic_realizable_matches_square_power_check():
    rng = random.Random(23)
    for _ in range(100):
        c = F(rng.randint(-30, 30) or 1, rng.randint(1, 30))
        m = rng.randint(1, 6)
        assert cyclotomic_realizable(c, m) == (nth_power_in_Q(c * c, m) is not None)


def test_normalize_character_example1():
    c = example1(3)
    norm = normalize_character(c, (1, 0))
    assert norm.P == Place.finite(T - 1) and norm.Q == INF
    assert norm.m == 3 and norm.c == 1 and norm.realizable_cyclotomic


def test_normalize_character_scaling():
    c = curve(2 * T, T + 1)
    norm = normalize_character(c, (1, -1))
    assert norm.P == Place.finite(T) and norm.Q == Place.finite(T + 1)
    assert norm.m == 1 and norm.c == 2 and norm.realizable_cyclotomic


def test_normalize_character_nonrealizable():
    c = curve(2 * T ** 3, T - 1)
    norm = normalize_character(c, (1, 0))
    assert norm.m == 3 and norm.c == 2 and not norm.realizable_cyclotomic


def test_normalize_character_bad_support():
    c = example1(3)
    with pytest.raises(DomainError):
        normalize_character(c, (1, -1))  # divisor has three-place support


def _mobius_for(norm):
    if norm.Q.is_infinity:
        return Mobius(1, -norm.P.rational_root(), 0, 1)
    if norm.P.is_infinity:
        return Mobius(0, 1, 1, -norm.Q.rational_root())
    return Mobius(1, -norm.P.rational_root(), 1, -norm.Q.rational_root())


def _norm_roundtrip(curve_data, norm):
    monomial = RatFunc(Poly([0] * norm.m + [norm.c]))
    back = compose_mobius(monomial, _mobius_for(norm))
    assert back == character_restrict(curve_data, norm.a)


def test_phi_enumerate_example1():
    for d in (2, 3):
        c = example1(d)
        chars = phi_enumerate(c)
        by_a = {ch.a: ch for ch in chars}
        assert set(by_a) == {
            (1, 0), (-1, 0), (0, 1), (0, -1), (1, -d), (-1, d),
        }
        assert by_a[(1, 0)].m == d and by_a[(1, 0)].c == 1
        assert by_a[(0, 1)].m == 1 and by_a[(0, 1)].c == 1
        assert by_a[(1, -d)].m == d and by_a[(1, -d)].c == 1
        for ch in chars:
            assert ch.realizable_cyclotomic
            _norm_roundtrip(c, ch)


def test_phi_enumerate_scaled_curve():
    c = curve(2 * T ** 3, T - 1)
    chars = {ch.a: ch for ch in phi_enumerate(c)}
    assert set(chars) == {(1, 0), (-1, 0), (0, 1), (0, -1), (1, -3), (-1, 3)}
    assert chars[(1, 0)].m == 3 and chars[(1, 0)].c == 2
    assert not chars[(1, 0)].realizable_cyclotomic
    assert chars[(0, 1)].m == 1 and chars[(0, 1)].c == 1
    assert chars[(0, 1)].realizable_cyclotomic
    assert chars[(1, -3)].m == 3 and chars[(1, -3)].c == 2
    assert not chars[(1, -3)].realizable_cyclotomic


def test_phi_enumerate_line_pair():
    c = curve(T, T + 1)
    chars = phi_enumerate(c)
    assert sorted(ch.a for ch in chars) == sorted(
        [(1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)]
    )
    for ch in chars:
        assert ch.m == 1 and ch.c == 1 and ch.realizable_cyclotomic


def test_phi_enumerate_preconditions():
    with pytest.raises(PreconditionError):
        phi_enumerate(curve(Poly([2]), T))
    with pytest.raises(PreconditionError):
        phi_enumerate(curve(T ** 2, T ** 4))


def test_phi_oracle_examples():
    assert set(phi_oracle(example1(2), 3)) == {
        (1, 0), (-1, 0), (0, 1), (0, -1), (1, -2), (-1, 2),
    }
    assert set(phi_oracle(curve(T, T + 1), 2)) == {
        (1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1),
    }


def test_phi_enumerate_agrees_with_oracle():
    for c in (example1(2), example1(4), curve(2 * T ** 3, T - 1), curve(T, T + 1)):
        chars = phi_enumerate(c)
        bound = 1 + max(abs(x) for ch in chars for x in ch.a)
        assert sorted(ch.a for ch in chars) == phi_oracle(c, bound)


def test_at_most_one_pair_per_place_pair():
    for c in (example1(3), curve(2 * T ** 3, T - 1), curve(T, T + 1)):
        chars = phi_enumerate(c)
        pairs = {}
        for ch in chars:
            key = frozenset({ch.P, ch.Q})
            pairs.setdefault(key, set()).add(ch.a)
        for vecs in pairs.values():
            assert len(vecs) == 2  # exactly one +- pair
            a, b = sorted(vecs)
            assert tuple(-x for x in a) == b


def test_realizable_characters_have_witness_or_certificate():
    from torusdep.multdep import factor_rational

    for c in (example1(3), curve(2 * T ** 3, T - 1), curve(2 * T, T + 1)):
        for ch in phi_enumerate(c):
            if ch.realizable_cyclotomic:
                b = nth_power_in_Q(ch.c, ch.m)
                if b is None:
                    b = nth_power_in_Q(-ch.c, ch.m)
                if b is not None:
                    assert b ** ch.m in (ch.c, -ch.c)
                else:
                    # Exact valuation certificate: m | 2*v_p(c) for all p.
                    for _p, e in factor_rational(ch.c).exponents:
                        assert (2 * e) % ch.m == 0
            else:
                assert nth_power_in_Q(ch.c * ch.c, ch.m) is None


def test_ambient_dimension_three():
    c = curve(T, T + 1, (T - 1) ** 2)
    chars = phi_enumerate(c)
    bound = 1 + max(abs(x) for ch in chars for x in ch.a)
    assert sorted(ch.a for ch in chars) == phi_oracle(c, bound)
    assert (0, 0, 1) in {ch.a for ch in chars}
