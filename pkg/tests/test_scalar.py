import random
from fractions import Fraction
from math import comb, factorial

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from conftest import SEED
from oracles import q, to_sympy
from opident.errors import NotDivisible, OutOfRange, PartsMismatch, ZeroAtPole
from opident.scalar import (
    ONE,
    ZERO,
    Scalar,
    ScalarQuotient,
    multinomial,
    n_hat,
    poly_gcd,
    q_binomial,
    q_factorial,
    q_number,
)

Q2 = Scalar.q_power(2)


def S(d):
    return Scalar(d)


def random_scalar(rng, spread=4, size=4):
    return Scalar({rng.randint(-spread, spread): Fraction(rng.randint(-5, 5), rng.randint(1, 3))
                   for _ in range(rng.randint(0, size))})


# -- arithmetic ---------------------------------------------------------------

def test_add_example():
    assert Q2 + 1 == S({0: 1, 2: 1})


def test_mul_difference_of_squares():
    assert (1 + Q2) * (1 - Q2) == S({0: 1, 4: -1})


def test_exact_div_q_number():
    assert S({0: 1, 4: -1}).exact_div(S({0: 1, 2: -1})) == 1 + Q2


def test_exact_div_reports_remainder():
    with pytest.raises(NotDivisible):
        (1 + Q2).exact_div(S({0: 1, 1: 1}))


def test_exact_div_laurent_shift():
    a = S({-3: 2, -1: 2})
    b = S({-1: 1, 1: 1})
    assert a.exact_div(b) == S({-2: 2})


def test_zero_is_empty():
    assert ZERO.terms == {}
    assert (Q2 - Q2).terms == {}
    assert Scalar({3: 0}).is_zero()


def test_negative_power_of_unit():
    assert Scalar.q_power(1) ** -1 == Scalar.q_power(-1)
    with pytest.raises(NotDivisible):
        (1 + Q2) ** -1


def test_ring_axioms_random_triples():
    rng = random.Random(SEED)
    for _ in range(1000):
        a, b, c = (random_scalar(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a
        assert a * b == b * a
        assert not any(v == 0 for v in (a * b).terms.values())


def test_exact_div_roundtrip_random():
    rng = random.Random(SEED + 1)
    for _ in range(300):
        a, b = random_scalar(rng), random_scalar(rng)
        if not b:
            continue
        assert (a * b).exact_div(b) == a


@given(st.dictionaries(st.integers(-6, 6), st.fractions(max_denominator=7), max_size=5))
def test_sympy_agrees_on_products(d):
    a = Scalar(d)
    b = Scalar({1: 2, -2: Fraction(1, 3)})
    assert sp.expand(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0


# -- evaluation ---------------------------------------------------------------

def test_eval_classical_limit():
    assert (1 + Q2).eval_at(1) == 2


def test_eval_negative_power():
    assert Scalar.q_power(-1).eval_at(2) == Fraction(1, 2)


def test_eval_pole():
    with pytest.raises(ZeroAtPole):
        Scalar.q_power(-1).eval_at(0)
    assert (3 + Q2).eval_at(0) == 3


def test_eval_q_number_three_at_one():
    # oracle: (1 - q^6)/(1 - q^2) expanded by sympy, then q -> 1
    expected = sp.cancel((1 - q**6) / (1 - q**2)).subs(q, 1)
    assert expected == 3
    assert q_number(3).eval_at(1) == 3


# -- q-combinatorics ------------------------------------------------------------

def test_q_number_small():
    assert q_number(0) == ZERO
    assert q_number(1) == ONE
    assert q_number(2) == 1 + Q2


def test_q_number_closed_form():
    for n in range(51):
        assert q_number(n) * (1 - Q2) == 1 - Scalar.q_power(2 * n)


def test_q_factorial_three():
    assert q_factorial(3) == ONE * (1 + Q2) * S({0: 1, 2: 1, 4: 1})
    assert q_factorial(0) == ONE


def test_q_binomial_examples():
    assert q_binomial(7, 0) == ONE
    # oracle: {2}! / ({1}! {1}!) by sympy
    expected = sp.cancel(((1 - q**4) / (1 - q**2)) / 1)
    assert sp.expand(to_sympy(q_binomial(2, 1)) - expected) == 0
    assert q_binomial(2, 1) == 1 + Q2
    with pytest.raises(OutOfRange):
        q_binomial(2, 3)


def test_q_binomial_matches_exact_division():
    for n in range(21):
        for k in range(n + 1):
            via_div = q_factorial(n).exact_div(q_factorial(k) * q_factorial(n - k))
            assert q_binomial(n, k) == via_div


def test_q_binomial_symmetry_and_pascal():
    for n in range(1, 21):
        for k in range(n + 1):
            assert q_binomial(n, k) == q_binomial(n, n - k)
            if 0 < k < n:
                rhs = q_binomial(n - 1, k - 1) + Scalar.q_power(2 * k) * q_binomial(n - 1, k)
                assert q_binomial(n, k) == rhs
                # the other standard variant holds as well
                alt = Scalar.q_power(2 * (n - k)) * q_binomial(n - 1, k - 1) + q_binomial(n - 1, k)
                assert q_binomial(n, k) == alt


def test_q_binomial_classical_limit():
    for n in range(21):
        for k in range(n + 1):
            assert q_binomial(n, k).eval_at(1) == comb(n, k)


def test_multinomial():
    assert multinomial(2, [1, 1]) == 2
    assert multinomial(3, [3, 0]) == 1
    oracle = factorial(4) // (factorial(2) * factorial(1) * factorial(1))
    assert oracle == 12
    assert multinomial(4, [2, 1, 1]) == 12
    with pytest.raises(PartsMismatch):
        multinomial(4, [2, 1])


# -- n_hat and quotients --------------------------------------------------------

def test_n_hat_zero():
    assert n_hat(0) == ScalarQuotient(ZERO)


def test_n_hat_one_classical():
    expected = sp.cancel((1 * (1 + q**2)) / (1 + q**2 + q**4 + q**6)).subs(q, 1)
    assert expected == sp.Rational(1, 2)
    assert n_hat(1).eval_at(1) == Fraction(1, 2)


def test_n_hat_one_value_and_reduction():
    unreduced = ScalarQuotient(1 + Q2, S({0: 1, 2: 1, 4: 1, 6: 1}))
    assert n_hat(1) == unreduced
    # {2} cancels against {4} = {2}(1 + q^4)
    assert n_hat(1).num == ONE
    assert n_hat(1).den == S({0: 1, 4: 1})


def test_n_hat_matches_sympy_all_small_n():
    for n in range(8):
        qn = lambda k: sum(q**(2 * i) for i in range(k))  # noqa: E731
        expected = sp.cancel(qn(n) * qn(n + 1) / qn(2 * n + 2))
        got = to_sympy(n_hat(n).num) / to_sympy(n_hat(n).den)
        assert sp.simplify(got - expected) == 0


def test_quotient_is_not_laurent_in_general():
    with pytest.raises(NotDivisible):
        (q_number(1) * q_number(2)).exact_div(q_number(4))


def test_gcd_basic():
    g = poly_gcd(S({0: 1, 4: -1}), S({0: 1, 2: 1}) * S({0: 3, 1: 1}))
    assert g == S({0: 1, 2: 1})


def test_text_form():
    assert S({0: 1, 2: 2, 4: -1}).to_text() == "1 + 2*q^2 - q^4"
    assert S({-1: -1}).to_text() == "-q^-1"
    assert S({2: 1, 0: -1}).to_compact() == "q^2-1"
    assert ZERO.to_text() == "0"
    assert S({0: Fraction(1, 2)}).to_text() == "1/2"
