import random

import pytest

from tlaurent.algebra import TPoly, field
from tlaurent.errors import (
    BeyondHorizon,
    FieldMismatch,
    NotAPowerOfCharacteristic,
    NotAPthPower,
)
from tlaurent.series import INF, AbsValue, Series, distance, distance_refined


def poly(f, *coeffs):
    return TPoly.from_coeffs(f, list(coeffs))


def S(f, terms):
    return Series.from_terms(f, {n: f.from_int(c) for n, c in terms.items()})


def test_rational_geometric_oracle(F3):
    # 1/(T-1) = sum_{n>=1} T^-n  (geometric series oracle)
    s = Series.from_rational(poly(F3, 1), poly(F3, 2, 1), 5)
    assert s.support() == [1, 2, 3, 4, 5]
    assert all(s.coeff(n) == F3.one for n in range(1, 6))
    assert s.coeff(9) == F3.one  # generator extends past the horizon


def test_rational_polynomial_input(F3):
    s = Series.from_rational(poly(F3, 0, 1), TPoly.one(F3), 5)
    assert s.support() == [-1]
    assert s.coeff(-1) == F3.one
    t = Series.from_rational(TPoly.one(F3), poly(F3, 0, 1), 5)
    assert t.support() == [1]


def test_rational_roundtrip_random():
    rng = random.Random(5)
    for f in [field(2), field(3), field(2, 2)]:
        for _ in range(50):
            a = TPoly.from_coeffs(f, [rng.randrange(f.p) for _ in range(rng.randrange(1, 6))])
            b = TPoly.from_coeffs(f, [rng.randrange(f.p) for _ in range(rng.randrange(1, 5))] + [1])
            horizon = 30
            s = Series.from_rational(a, b, horizon)
            back = Series.from_tpoly(b) * s - Series.from_tpoly(a)
            r = back.abs()
            # b*(a/b) - a vanishes through the inherited horizon
            assert r.is_zero or r.is_below or r.exponent > horizon - b.degree()


def test_coeff_beyond_horizon_raises(F2):
    s = Series(F2, {1: F2.one}, 10)
    assert s.coeff(5).is_zero()
    with pytest.raises(BeyondHorizon):
        s.coeff(11)


def test_abs_cases(F2):
    assert S(F2, {3: 1, 5: 1}).abs() == AbsValue.exact(2, 3)
    assert Series.zero(F2).abs().is_zero
    trunc = Series(F2, {}, 100, gen=None)
    a = trunc.abs()
    assert a.is_below and a.exponent == 101


def test_add_char2_cancellation(F2):
    x = S(F2, {1: 1})
    total = x + x
    assert total.abs().is_zero  # exact inputs, exact zero
    y = Series(F2, {1: F2.one}, 50)
    z = (y + y).abs()
    assert z.is_below and z.exponent == 51  # truncated inputs stay honest


def test_mul_exponents_add(F2):
    assert (S(F2, {2: 1}) * S(F2, {3: 1})).support() == [5]


def test_char3_triple_sum(F3):
    a = S(F3, {2: 1, 7: 2})
    assert (a + a + a).abs().is_zero


def test_mul_horizon_rule(F2):
    x = Series(F2, {2: F2.one}, 10)
    y = Series(F2, {3: F2.one}, 20)
    z = x * y
    assert z.horizon == min(10 + 3, 20 + 2)
    assert z.support() == [5]


def test_add_horizon_rule(F2):
    x = Series(F2, {2: F2.one}, 10)
    y = Series(F2, {3: F2.one}, 20)
    assert (x + y).horizon == 10
    assert (x - y).support() == [2, 3]


def test_frobenius_basics(F2):
    x = S(F2, {2: 1, 4: 1})
    x2 = x.frobenius(2)
    assert x2.support() == [4, 8]
    assert x.frobenius(1) is x
    with pytest.raises(NotAPowerOfCharacteristic):
        x.frobenius(3)


def test_frobenius_matches_repeated_multiplication():
    rng = random.Random(3)
    for f in [field(2), field(3), field(2, 2)]:
        for _ in range(20):
            terms = {
                rng.randrange(-3, 12): f.elem([rng.randrange(f.p) for _ in range(f.e)])
                for _ in range(4)
            }
            x = Series.from_terms(f, terms)
            prod = x
            for _ in range(f.p - 1):
                prod = prod * x
            assert prod == x.frobenius(f.p)


def test_pth_root(F2):
    x = S(F2, {4: 1, 8: 1})
    assert x.pth_root().support() == [2, 4]
    with pytest.raises(NotAPthPower):
        S(F2, {3: 1}).pth_root()
    assert Series.zero(F2).pth_root().abs().is_zero


def test_pth_root_roundtrip(F4):
    rng = random.Random(9)
    for _ in range(20):
        terms = {
            rng.randrange(-4, 20): F4.elem([rng.randrange(2), rng.randrange(2)])
            for _ in range(5)
        }
        x = Series.from_terms(F4, terms)
        assert x.frobenius(2).pth_root() == x


def test_ultrametric_properties():
    rng = random.Random(21)
    for f in [field(2), field(3)]:
        for _ in range(200):
            x = Series.from_terms(
                f, {rng.randrange(-5, 15): f.from_int(rng.randrange(1, f.p)) for _ in range(3)}
            )
            y = Series.from_terms(
                f, {rng.randrange(-5, 15): f.from_int(rng.randrange(1, f.p)) for _ in range(3)}
            )
            ax, ay, asum = x.abs(), y.abs(), (x + y).abs()
            if ax.is_zero and ay.is_zero:
                assert asum.is_zero
                continue
            bound = min(
                (a.exponent for a in (ax, ay) if a.is_exact),
                default=None,
            )
            if asum.is_zero:
                assert ax.is_exact and ay.is_exact and ax.exponent == ay.exponent
            else:
                assert asum.exponent >= bound
                if ax.is_exact and ay.is_exact and ax.exponent != ay.exponent:
                    assert asum.exponent == bound
            # multiplicativity
            aprod = (x * y).abs()
            if ax.is_zero or ay.is_zero:
                assert aprod.is_zero
            else:
                assert aprod.exponent == ax.exponent + ay.exponent


def test_field_mismatch(F2, F3):
    with pytest.raises(FieldMismatch):
        S(F2, {1: 1}) + S(F3, {1: 1})


def test_dist(F2):
    x = S(F2, {1: 1})
    assert distance(x, x).is_zero
    assert distance(S(F2, {1: 1}), S(F2, {2: 1})) == AbsValue.exact(2, 1)


def test_materialized_and_refined(F3):
    s = Series.from_rational(poly(F3, 1), poly(F3, 2, 1), 3)
    deep = s.materialized(10)
    assert deep.support() == list(range(1, 11))
    assert s.support() == [1, 2, 3]  # snapshots immutable
    diff = deep - s.materialized(10)
    assert diff.abs().is_below
    assert diff.abs_refined(500).is_below  # genuinely zero: stays below cap


def test_polynomial_part(F2):
    s = Series.from_terms(F2, {-2: F2.one, 0: F2.one, 3: F2.one})
    assert s.polynomial_part() == poly(F2, 1, 0, 1)
