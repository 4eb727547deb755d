from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gl1reps.errors import FactorizationBoundExceeded, NegativeRadicand
from gl1reps.scalar import (
    ONE,
    ZERO,
    RadicalScalar,
    get_factor_bound,
    rad_add,
    rad_mul,
    rad_normalize,
    rad_sqrt_of_rational,
    set_factor_bound,
)

SQRT2 = rad_normalize(1, 2)
SQRT3 = rad_normalize(1, 3)


class TestNormalize:
    def test_perfect_square(self):
        assert rad_normalize(3, 4) == RadicalScalar.rational(6)

    def test_square_factor_pulled_out(self):
        assert rad_normalize(1, 12) == rad_normalize(2, 3)
        assert rad_normalize(1, 12).terms == {3: Fraction(2)}

    def test_zero_radicand(self):
        assert rad_normalize(Fraction(7, 2), 0) == ZERO
        assert not rad_normalize(Fraction(7, 2), 0)

    def test_negative_integer_rejected(self):
        with pytest.raises(NegativeRadicand):
            rad_normalize(1, -3)


class TestAddMul:
    def test_additive_inverse(self):
        assert rad_add(rad_normalize(2, 3), rad_normalize(-2, 3)) == ZERO

    def test_radical_parts_cancel(self):
        assert rad_add(ONE + SQRT2, ONE - SQRT2) == RadicalScalar.rational(2)

    def test_distinct_radicands_stay_apart(self):
        s = rad_add(SQRT2, SQRT3)
        assert s.terms == {2: Fraction(1), 3: Fraction(1)}

    def test_sqrt2_squared(self):
        assert rad_mul(SQRT2, SQRT2) == RadicalScalar.rational(2)

    def test_sqrt2_sqrt6(self):
        assert rad_mul(SQRT2, rad_normalize(1, 6)) == rad_normalize(2, 3)

    def test_conjugates(self):
        assert rad_mul(ONE + SQRT2, ONE - SQRT2) == RadicalScalar.rational(-1)

    def test_division_by_radical_sum(self):
        x = ONE + SQRT2 + SQRT3
        assert (x / x) == ONE
        assert (ONE / x) * x == ONE

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            ONE / ZERO


class TestSqrtOfRational:
    def test_square(self):
        assert rad_sqrt_of_rational(Fraction(9, 4)) == RadicalScalar.rational(Fraction(3, 2))

    def test_half(self):
        assert rad_sqrt_of_rational(Fraction(1, 2)) == rad_normalize(Fraction(1, 2), 2)

    def test_negative(self):
        with pytest.raises(NegativeRadicand):
            rad_sqrt_of_rational(-1)


class TestSerialization:
    def test_render(self):
        assert (RadicalScalar.rational(Fraction(1, 2)) + rad_normalize(3, 2)).render() == "1/2+3*sqrt(2)"
        assert ZERO.render() == "0"

    def test_json_triples(self):
        x = RadicalScalar.rational(Fraction(-1, 2)) + rad_normalize(Fraction(2, 3), 5)
        assert x.to_json() == [[-1, 2, 1], [2, 3, 5]]
        assert RadicalScalar.from_json(x.to_json()) == x

    def test_parse_inverts_render(self):
        x = RadicalScalar.rational(-3) + rad_normalize(Fraction(-5, 7), 6)
        assert RadicalScalar.parse(x.render()) == x

    def test_float(self):
        assert abs(float(ONE + SQRT2) - 2.414213562373095) < 1e-12


def test_factor_bound_enforced():
    old = get_factor_bound()
    try:
        set_factor_bound(10)
        with pytest.raises(FactorizationBoundExceeded):
            rad_normalize(1, 13 * 17)
    finally:
        set_factor_bound(old)
    assert rad_normalize(1, 13 * 17).terms == {221: Fraction(1)}


# ---------------------------------------------------------------------------
# properties
# ---------------------------------------------------------------------------

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
radicands = st.sampled_from([1, 2, 3, 5, 6, 7, 10, 12, 18, 30])


@st.composite
def scalars(draw):
    acc = ZERO
    for _ in range(draw(st.integers(0, 3))):
        acc = acc + rad_normalize(draw(rationals), draw(radicands))
    return acc


@settings(max_examples=150, deadline=None)
@given(scalars(), scalars(), scalars())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == ZERO
    if b:
        assert (a / b) * b == a


@settings(max_examples=150, deadline=None)
@given(st.fractions(min_value=0, max_value=1000, max_denominator=500))
def test_sqrt_squares_back(q):
    r = rad_sqrt_of_rational(q)
    assert rad_mul(r, r) == RadicalScalar.rational(q)
    assert float(r) >= 0


@settings(max_examples=100, deadline=None)
@given(scalars())
def test_canonical_keys_squarefree(x):
    for d, q in x.terms.items():
        assert q != 0
        assert all(d % (p * p) for p in range(2, int(d**0.5) + 1))
    assert RadicalScalar.from_json(x.to_json()) == x
    assert hash(RadicalScalar.from_json(x.to_json())) == hash(x)
