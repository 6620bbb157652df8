"""Tests for exact Laurent/rational-function arithmetic, quantum integers, rank."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superklr.scalars import (
    BiLaurent,
    BiRational,
    LaurentPoly,
    RationalQ,
    laurent_div_exact,
    q_binom,
    q_fact,
    q_int,
    q_multinomial,
    rank_over_Qq,
)

ONE = LaurentPoly.one()
ZERO = LaurentPoly.zero()


def lp(**terms):
    """Shorthand: lp(q2=1, qm1=-3) -> q^2 - 3q^-1 (qm = negative exponent)."""
    out = {}
    for k, c in terms.items():
        e = -int(k[2:]) if k.startswith("qm") else int(k[1:])
        out[e] = c
    return LaurentPoly(out)


# -- LaurentPoly --------------------------------------------------------------


class TestLaurentPoly:
    def test_zero_one_const(self):
        assert ZERO.is_zero() and not ZERO.is_one()
        assert ONE.is_one() and not ONE.is_zero()
        assert LaurentPoly.const(0) == ZERO
        assert LaurentPoly.const(1) == ONE
        assert LaurentPoly.const(-5) == LaurentPoly({0: -5})
        assert LaurentPoly.q_power(3, 0) == ZERO

    def test_zero_coefficients_dropped(self):
        assert LaurentPoly({2: 0, 1: 4}) == LaurentPoly({1: 4})
        assert not LaurentPoly({2: 0}).terms

    def test_add_sub_neg(self):
        a = lp(q1=1, q3=2)
        b = lp(q1=-1, q0=5)
        assert a + b == lp(q0=5, q3=2)
        assert a - a == ZERO
        assert -a == lp(q1=-1, q3=-2)
        assert a + ZERO == a

    def test_mul(self):
        # (1 - q)(1 + q) = 1 - q^2
        assert (ONE - lp(q1=1)) * (ONE + lp(q1=1)) == ONE - lp(q2=1)
        assert lp(qm1=2) * lp(q1=3) == LaurentPoly.const(6)
        assert lp(q1=1) * ZERO == ZERO

    def test_scale_shift(self):
        a = lp(q0=1, q2=-1)
        assert a.scale(3) == lp(q0=3, q2=-3)
        assert a.scale(0) == ZERO
        assert a.shift(2) == lp(q2=1, q4=-1)
        assert a.shift(-1) == lp(qm1=1, q1=-1)

    def test_pow(self):
        a = ONE + lp(q1=1)
        assert a ** 0 == ONE
        assert a ** 2 == lp(q0=1, q1=2, q2=1)
        assert ZERO ** 0 == ONE
        assert ZERO ** 3 == ZERO
        with pytest.raises(ValueError):
            a ** -1

    def test_exponent_range(self):
        a = lp(qm2=4, q5=-1)
        assert a.min_exp() == -2
        assert a.max_exp() == 5
        assert a.coeff(-2) == 4
        assert a.coeff(0) == 0
        with pytest.raises(ValueError):
            ZERO.min_exp()
        with pytest.raises(ValueError):
            ZERO.max_exp()

    def test_content(self):
        assert lp(q0=4, q2=-6).content() == 2
        assert lp(q1=-3).content() == 3

    def test_bar_swaps_exponents(self):
        a = lp(qm1=2, q0=1, q3=-1)
        assert a.bar() == lp(q1=2, q0=1, qm3=-1)
        assert a.bar().bar() == a
        assert ZERO.bar() == ZERO

    def test_evaluate(self):
        a = lp(qm1=1, q2=3)  # q^-1 + 3q^2
        assert a.evaluate(Fraction(2)) == Fraction(1, 2) + 12
        assert a.evaluate(Fraction(1)) == 4
        assert ZERO.evaluate(Fraction(7)) == 0

    def test_str(self):
        assert str(ZERO) == "0"
        assert str(ONE) == "1"
        assert str(lp(q1=1)) == "q"
        assert str(lp(qm1=1)) == "q^-1"
        assert str(lp(qm1=-1)) == "-q^-1"
        assert str(ONE - lp(q2=1)) == "1 - q^2"
        assert str(lp(q0=-2, q2=3)) == "-2 + 3q^2"

    def test_json_round_trip(self):
        a = lp(qm3=-7, q0=1, q11=2)
        assert a.to_json() == {"-3": "-7", "0": "1", "11": "2"}
        assert LaurentPoly.from_json(a.to_json()) == a
        assert LaurentPoly.from_json({}) == ZERO

    def test_exact_division(self):
        num = ONE - lp(q4=1)
        den = ONE - lp(q2=1)
        assert laurent_div_exact(num, den) == ONE + lp(q2=1)
        assert laurent_div_exact(lp(q3=6), lp(q1=2)) == lp(q2=3)
        with pytest.raises(ValueError):
            laurent_div_exact(ONE - lp(q3=1), ONE - lp(q2=1))
        with pytest.raises(ZeroDivisionError):
            laurent_div_exact(ONE, ZERO)


# -- RationalQ: canonical form -----------------------------------------------


def rq(num, den=None):
    return RationalQ(num, den)


class TestRationalCanonicalForm:
    def test_same_value_same_representation(self):
        # q/(1-q^2) presented four different ways collapses to one form.
        base = rq(lp(q1=1), ONE - lp(q2=1))
        assert rq(lp(q1=-1), lp(q2=1) - ONE) == base
        assert rq(lp(q3=2), lp(q2=2) - lp(q4=2)) == base
        assert rq(lp(qm1=1), lp(qm2=1) - ONE) == base
        assert str(base) == "q/(1 - q^2)"

    def test_denominator_normalization(self):
        r = rq(lp(q1=1), lp(q2=1) - ONE)
        assert r.den.min_exp() == 0
        assert r.den.coeff(0) > 0
        assert r.num == lp(q1=-1)

    def test_gcd_cancellation(self):
        # (1-q^4)/(1-q^2) = 1+q^2 exactly.
        r = rq(ONE - lp(q4=1), ONE - lp(q2=1))
        assert r.is_laurent()
        assert r.as_laurent() == ONE + lp(q2=1)

    def test_integer_content_cleared(self):
        assert rq(lp(q0=6), lp(q0=4)) == rq(lp(q0=3), lp(q0=2))

    def test_zero_and_canonical_zero(self):
        z = rq(ZERO, ONE - lp(q2=1))
        assert z.is_zero()
        assert z == RationalQ.zero()
        assert z.den == ONE

    def test_construction_is_idempotent(self):
        r = rq(lp(q1=2, q3=-2), lp(q0=4) - lp(q4=4))
        again = RationalQ(r.num, r.den)
        assert again.num == r.num and again.den == r.den

    def test_zero_denominator_rejected(self):
        with pytest.raises(ZeroDivisionError):
            rq(ONE, ZERO)


class TestRationalArithmetic:
    def test_add_same_denominator(self):
        d = ONE - lp(q2=1)
        total = rq(ONE, d) + rq(lp(q2=1), d)
        assert total == rq(ONE + lp(q2=1), d)
        assert str(total) == "(1 + q^2)/(1 - q^2)"

    def test_mul_by_zero_absorbs(self):
        x = rq(lp(q5=3, qm2=1), ONE - lp(q3=2))
        assert (x * RationalQ.zero()).is_zero()

    def test_inverse_pair(self):
        d = ONE - lp(q2=1)
        assert rq(ONE, d) * rq(d) == RationalQ.one()
        assert rq(ONE, d) / rq(ONE, d) == RationalQ.one()

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            RationalQ.one() / RationalQ.zero()

    def test_sub_neg_scale(self):
        a = rq(lp(q1=1), ONE - lp(q2=1))
        assert a - a == RationalQ.zero()
        assert a + (-a) == RationalQ.zero()
        assert a.scale(-2) == rq(lp(q1=-2), ONE - lp(q2=1))
        assert a.mul_laurent(ONE - lp(q2=1)) == rq(lp(q1=1))

    def test_bar(self):
        a = rq(lp(q1=1), ONE - lp(q2=1))
        assert a.bar() == rq(lp(qm1=1), ONE - lp(qm2=1))
        assert a.bar().bar() == a

    def test_evaluate(self):
        a = rq(lp(q1=1), ONE - lp(q2=1))
        assert a.evaluate(Fraction(2)) == Fraction(2, -3)
        with pytest.raises(ZeroDivisionError):
            a.evaluate(Fraction(1))

    def test_as_laurent_errors_on_proper_fraction(self):
        a = rq(ONE, ONE - lp(q2=1))
        assert not a.is_laurent()
        with pytest.raises(ValueError):
            a.as_laurent()

    def test_json_round_trip(self):
        a = rq(lp(q1=1, q3=-2), ONE - lp(q2=1))
        assert RationalQ.from_json(a.to_json()) == a


# -- RationalQ: fuzzed field axioms --------------------------------------------

coeffs = st.integers(min_value=-9, max_value=9)
exponents = st.integers(min_value=-4, max_value=4)
laurents = st.dictionaries(exponents, coeffs, max_size=4).map(LaurentPoly)
nonzero_laurents = laurents.filter(lambda p: not p.is_zero())
rationals = st.builds(RationalQ, laurents, nonzero_laurents)
nonzero_rationals = st.builds(RationalQ, nonzero_laurents, nonzero_laurents)


@settings(max_examples=60, deadline=None)
@given(rationals, rationals, rationals)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=60, deadline=None)
@given(rationals)
def test_unit_and_inverse_laws(a):
    assert a + RationalQ.zero() == a
    assert a * RationalQ.one() == a
    assert a - a == RationalQ.zero()
    if not a.is_zero():
        assert a / a == RationalQ.one()


@settings(max_examples=60, deadline=None)
@given(rationals)
def test_canonicalization_idempotent(a):
    again = RationalQ(a.num, a.den)
    assert (again.num, again.den) == (a.num, a.den)


@settings(max_examples=40, deadline=None)
@given(nonzero_rationals, nonzero_rationals)
def test_equality_matches_cross_multiplication(a, b):
    assert (a == b) == (a.num * b.den == b.num * a.den)


@settings(max_examples=40, deadline=None)
@given(rationals, nonzero_rationals)
def test_evaluation_is_a_homomorphism(a, b):
    q = Fraction(3, 2)
    if a.den.evaluate(q) == 0 or b.den.evaluate(q) == 0:
        return
    assert (a + b).evaluate(q) == a.evaluate(q) + b.evaluate(q)
    assert (a * b).evaluate(q) == a.evaluate(q) * b.evaluate(q)


# -- quantum integers -----------------------------------------------------------


class TestQuantumIntegers:
    def test_q_int_values(self):
        assert q_int(0) == ZERO
        assert q_int(1) == ONE
        assert q_int(2) == lp(q1=1, qm1=1)
        assert q_int(3) == lp(q2=1, q0=1, qm2=1)
        assert q_int(-2) == -q_int(2)

    def test_q_int_is_balanced(self):
        for p in range(1, 8):
            assert q_int(p).bar() == q_int(p)
            assert q_int(p).evaluate(Fraction(1)) == p

    def test_q_fact_values(self):
        assert q_fact(0) == ONE
        assert q_fact(1) == ONE
        assert q_fact(2) == q_int(2)
        # [3]! = [3][2] = q^-3 + 2q^-1 + 2q + q^3, expanded by hand
        assert q_fact(3) == lp(qm3=1, qm1=2, q1=2, q3=1)
        with pytest.raises(ValueError):
            q_fact(-1)

    def test_q_binom_values(self):
        assert q_binom(2, 1) == lp(q1=1, qm1=1)
        assert q_binom(5, 0) == ONE
        assert q_binom(4, 4) == ONE
        # {4 brack 2} = (1+q^2)(1+q^4)/q^3, expanded by hand
        assert q_binom(4, 2) == lp(qm4=1, qm2=1, q0=2, q2=1, q4=1)

    def test_q_binom_out_of_range_is_zero(self):
        assert q_binom(3, -1) == ZERO
        assert q_binom(3, 4) == ZERO

    def test_q_binom_symmetry(self):
        for p in range(9):
            for g in range(p + 1):
                assert q_binom(p, g) == q_binom(p, p - g)

    def test_q_binom_row_sums_at_one(self):
        for p in range(9):
            total = sum(
                (q_binom(p, g) for g in range(p + 1)), start=ZERO)
            assert total.evaluate(Fraction(1)) == 2 ** p

    def test_q_binom_pascal_recurrence(self):
        # {p brack g} = q^g {p-1 brack g} + q^(g-p) {p-1 brack g-1}
        for p in range(1, 8):
            for g in range(p + 1):
                lhs = q_binom(p, g)
                rhs = q_binom(p - 1, g).shift(g) + q_binom(p - 1, g - 1).shift(g - p)
                assert lhs == rhs

    def test_q_multinomial(self):
        assert q_multinomial([]) == ONE
        assert q_multinomial([1, 1]) == q_int(2)
        assert q_multinomial([2, 1]) == q_binom(3, 1)
        assert q_multinomial([1, 1, 1]) == q_fact(3)
        assert q_multinomial([2, 2]) == q_binom(4, 2)


# -- rank over the rational-function field ----------------------------------------


def fraction_rank(rows):
    """Independent oracle: Gaussian elimination over Fraction."""
    rows = [list(r) for r in rows]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for col in range(cols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [x * inv for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


class TestRank:
    def test_identity(self):
        ident = [[RationalQ.one() if i == j else RationalQ.zero()
                  for j in range(3)] for i in range(3)]
        assert rank_over_Qq(ident) == 3

    def test_zero_matrix(self):
        zero = [[RationalQ.zero()] * 2 for _ in range(2)]
        assert rank_over_Qq(zero) == 0
        assert rank_over_Qq([]) == 0

    def test_proportional_rows(self):
        d = ONE - lp(q2=1)
        row = [rq(ONE, d), rq(lp(q1=1), d)]
        scaled = [rq(lp(q1=1), d), rq(lp(q2=1), d)]
        assert rank_over_Qq([row, scaled]) == 1

    def test_rank_drop_needs_exact_cancellation(self):
        # [[1, q], [q, q^2 + (1-q^2)]] has determinant q^2 - q^2 - (1-q^2)... = -(1-q^2) != 0
        rows = [
            [RationalQ.one(), rq(lp(q1=1))],
            [rq(lp(q1=1)), rq(ONE)],
        ]
        assert rank_over_Qq(rows) == 2

    def test_rectangular(self):
        rows = [
            [RationalQ.one(), RationalQ.zero(), rq(lp(q1=1))],
            [RationalQ.zero(), RationalQ.one(), rq(lp(q2=1))],
        ]
        assert rank_over_Qq(rows) == 2
        assert rank_over_Qq([[x] for row in rows for x in row]) == 1

    def test_agrees_with_evaluation_at_random_points(self):
        rng = random.Random(20260815)
        d = ONE - lp(q2=1)
        pool = [RationalQ.zero(), RationalQ.one(), rq(lp(q1=1)),
                rq(ONE, d), rq(lp(q1=1), d), rq(lp(q2=1), d),
                rq(lp(qm1=1), d), rq(ONE + lp(q2=1), d)]
        for _ in range(25):
            m = rng.randint(1, 4)
            n = rng.randint(1, 4)
            rows = [[rng.choice(pool) for _ in range(n)] for _ in range(m)]
            symbolic = rank_over_Qq(rows)
            numeric = 0
            points = 0
            while points < 5:
                pt = Fraction(rng.randint(-40, 40), rng.randint(1, 17))
                if any(x.den.evaluate(pt) == 0 for row in rows for x in row):
                    continue
                points += 1
                ev = fraction_rank([[x.evaluate(pt) for x in row] for row in rows])
                assert ev <= symbolic
                numeric = max(numeric, ev)
            assert numeric == symbolic


# -- bigraded coefficients ---------------------------------------------------------


class TestBiLaurent:
    def test_arithmetic(self):
        a = BiLaurent({(1, 1): 1, (0, 0): 2})
        b = BiLaurent({(1, 1): -1, (2, -1): 3})
        assert a + b == BiLaurent({(0, 0): 2, (2, -1): 3})
        assert a - a == BiLaurent.zero()
        assert a * BiLaurent.one() == a
        assert a * b == BiLaurent(
            {(2, 2): -1, (1, 1): -2, (3, 0): 3, (2, -1): 6})

    def test_specialize_t(self):
        a = BiLaurent({(2, 1): 1, (2, 0): 1, (0, 3): 5})
        assert a.specialize_t(-1) == lp(q0=-5)  # q^2(1-1) - 5
        assert a.specialize_t(1) == lp(q2=2, q0=5)
        with pytest.raises(ValueError):
            a.specialize_t(2)

    def test_str(self):
        assert str(BiLaurent.zero()) == "0"
        assert str(BiLaurent({(-2, 3): 1, (0, 0): -2, (1, 1): 1})) == \
            "q^-2*t^3 - 2 + q*t"

    def test_json_round_trip(self):
        a = BiLaurent({(1, -1): 4, (-3, 2): -1})
        assert BiLaurent.from_json(a.to_json()) == a


class TestBiRational:
    def test_zero_coefficients_dropped(self):
        assert BiRational({3: RationalQ.zero()}).is_zero()

    def test_arithmetic(self):
        r = rq(lp(q1=1), ONE - lp(q2=1))
        a = BiRational({0: RationalQ.one(), 2: r})
        assert a - a == BiRational.zero()
        assert a * BiRational.one() == a
        sq = a * a
        assert sq.terms[0] == RationalQ.one()
        assert sq.terms[2] == r.scale(2)
        assert sq.terms[4] == r * r

    def test_mul_monomial_and_scale(self):
        a = BiRational({1: RationalQ.one()})
        assert a.mul_monomial(2, 3) == BiRational({4: rq(lp(q2=1))})
        assert a.scale(rq(lp(q1=5))) == BiRational({1: rq(lp(q1=5))})

    def test_specialize_t(self):
        r = rq(ONE, ONE - lp(q2=1))
        a = BiRational({0: r, 1: r, 2: r})
        assert a.specialize_t(-1) == r
        assert a.specialize_t(1) == r.scale(3)

    def test_from_bilaurent_commutes_with_specialization(self):
        b = BiLaurent({(1, 1): 2, (0, 2): -1, (-1, 0): 1})
        via = BiRational.from_bilaurent(b).specialize_t(-1)
        direct = RationalQ.from_laurent(b.specialize_t(-1))
        assert via == direct

    def test_str(self):
        r = rq(lp(q1=1), ONE - lp(q2=1))
        assert str(BiRational({0: RationalQ.one(), 2: r})) == \
            "1 + (q/(1 - q^2))*t^2"
        assert str(BiRational.zero()) == "0"

    def test_json_round_trip(self):
        r = rq(lp(q1=1), ONE - lp(q2=1))
        a = BiRational({-1: r, 0: RationalQ.one()})
        assert BiRational.from_json(a.to_json()) == a
