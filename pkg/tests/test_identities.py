from fractions import Fraction
from math import comb

import pytest
import sympy as sp

from oracles import act_expr, grassmann_act_word, q, to_sympy
from opident.errors import UnsupportedFamily
from opident.identities import (
    Family,
    IdentitySpec,
    build_q_sl2,
    build_qplane_raising,
    build_sl2,
    build_slk_raising,
    compositions,
    fit_relations5,
    lhs_power,
    proportionality,
    rhs_closed_form,
    verify_identity,
)
from opident.opalg import graded_degree, make_context, mul_normal, power
from opident.scalar import ONE, Scalar, ScalarQuotient, n_hat, q_number

Q2 = Scalar.q_power(2)


# -- constructors -------------------------------------------------------------

def test_build_sl2():
    ctx = make_context(1, 0, "classical")
    x, d = ctx.x(), ctx.d()
    assert build_sl2(0).plus == x * x * d
    assert build_sl2(2).zero == x * d - ctx.one()
    assert build_sl2(3).zero == x * d - ctx.scalar(Fraction(3, 2))


def test_sl2_bracket_via_engine_and_calculus():
    plus, zero, minus = build_sl2(3)
    bracket = mul_normal(zero, minus) - mul_normal(minus, zero)
    assert bracket == -minus
    # oracle: act on a generic monomial with sympy
    x, a = sp.Symbol("x1"), sp.Symbol("a", positive=True)
    f = x**a
    lhs = act_expr(zero, act_expr(minus, f)) - act_expr(minus, act_expr(zero, f))
    assert sp.simplify(lhs + sp.diff(f, x)) == 0


def test_build_slk_raising():
    for n in range(4):
        assert build_slk_raising(n, 1) == build_sl2(n).plus
    ctx = make_context(2, 0, "classical")
    x, y, dx, dy = ctx.x(1), ctx.x(2), ctx.d(1), ctx.d(2)
    assert build_slk_raising(3, 2) == x * x * dx + x * y * dy - x.scale(3)
    ctx3 = make_context(3, 0, "classical")
    x1 = ctx3.x(1)
    expected = x1 * (x1 * ctx3.d(1) + ctx3.x(2) * ctx3.d(2) + ctx3.x(3) * ctx3.d(3) - ctx3.one())
    assert build_slk_raising(1, 3) == expected


def test_build_q_sl2():
    ctx = make_context(1, 0, "qline")
    x, d = ctx.x(), ctx.d()
    assert build_q_sl2(0).plus == x * x * d
    assert build_q_sl2(2).plus == x * x * d - x.scale(1 + Q2)
    for n in range(6):
        classical = build_sl2(n).plus
        assert build_q_sl2(n).plus.eval_at(1).relabel(classical.ctx) == classical
        # zero generator carries n_hat as an exact quotient
        j0 = build_q_sl2(n).zero
        assert ScalarQuotient(-j0.numerator.coefficient((0, 0)), j0.denominator) == n_hat(n)
        assert j0.eval_at(1).relabel(classical.ctx) == build_sl2(n).zero


def test_build_qplane_raising():
    ctx = make_context(2, 0, "qplane")
    x, y, dx, dy = ctx.x(1), ctx.x(2), ctx.d(1), ctx.d(2)
    assert build_qplane_raising(0) == x * x * dx + x * y * dy
    assert build_qplane_raising(2) == x * x * dx + x * y * dy - x.scale(q_number(2))
    for n in range(5):
        assert build_qplane_raising(n).eval_at(1).relabel(make_context(2, 0, "classical")) == \
            build_slk_raising(n, 2)


# -- closed forms ---------------------------------------------------------------

def test_rhs_examples():
    c = make_context(1, 0, "classical")
    assert rhs_closed_form(IdentitySpec("eq1", 1)) == c.monomial((4, 2))
    ql = make_context(1, 0, "qline")
    assert rhs_closed_form(IdentitySpec("eq4", 1)) == ql.monomial((4, 2), Scalar.q_power(4))
    qp = make_context(2, 0, "qplane")
    assert rhs_closed_form(IdentitySpec("eq7", 0)) == \
        qp.x(1) * qp.x(1) * qp.d(1) + qp.x(1) * qp.x(2) * qp.d(2)
    with pytest.raises(UnsupportedFamily):
        rhs_closed_form(IdentitySpec("hyperplane", 1, 3))


def test_compositions_count():
    for total in range(5):
        for parts in range(1, 5):
            comps = list(compositions(total, parts))
            assert len(comps) == comb(total + parts - 1, parts - 1)
            assert all(sum(c) == total for c in comps)


@pytest.mark.parametrize("bad", [
    dict(family="eq3", n=1, n_vars=1), dict(family="eq1", n=1, grassmann=True),
    dict(family="eq1", n=-1), dict(family="hyperplane", n=1), dict(family="eq7", n=1, n_vars=3),
])
def test_identity_spec_validation(bad):
    with pytest.raises(ValueError):
        IdentitySpec(**bad)


# -- verification ---------------------------------------------------------------

def test_verify_examples():
    r = verify_identity(IdentitySpec("eq1", 1))
    assert r.equal and r.lhs_normal == r.rhs_normal == make_context(1, 0, "classical").monomial((4, 2))
    r = verify_identity(IdentitySpec("eq2", 0))
    assert r.equal and len(r.lhs_normal) == 2
    r = verify_identity(IdentitySpec("eq2", 3, grassmann=True))
    assert r.equal and len(r.rhs_normal) == 2 and r.checks["two_surviving_terms"]


def test_verify_reports_witness_on_mismatch(monkeypatch):
    import opident.identities as ident
    real = ident.rhs_closed_form
    monkeypatch.setattr(ident, "rhs_closed_form", lambda s: real(s).scale(2))
    r = ident.verify_identity(IdentitySpec("eq1", 2))
    assert not r.equal
    mono, lhs, rhs = r.witness
    assert mono == "x^6*Px^3" and lhs == ONE and rhs == Scalar(2)


def test_eq1_and_eq2_against_calculus_oracle():
    # act on x^a (y^b) with symbolic exponents: identity of operators on all monomials
    a, b = sp.symbols("a b", positive=True)
    x1, x2 = sp.symbols("x1 x2")
    for n in range(4):
        spec = IdentitySpec("eq1", n)
        lhs = sp.simplify(act_expr(lhs_power(spec), x1**a) / x1**a)
        rhs = sp.simplify(sp.diff(x1**a, x1, n + 1) * x1**(2 * n + 2) / x1**a)
        assert sp.simplify(lhs - rhs) == 0
        spec = IdentitySpec("eq2", n)
        f = x1**a * x2**b
        lhs = act_expr(lhs_power(spec), f)
        rhs = sum(comb(n + 1, k) * x1**(2 * n + 2 - k) * x2**k * sp.diff(f, x1, n + 1 - k, x2, k)
                  for k in range(n + 2))
        assert sp.simplify((lhs - rhs) / f) == 0


def test_eq2_grassmann_against_pair_calculus():
    x = sp.Symbol("x1")
    a = sp.Symbol("a", positive=True)
    for n in range(4):
        lhs = lhs_power(IdentitySpec("eq2", n, grassmann=True))
        rhs = rhs_closed_form(IdentitySpec("eq2", n, grassmann=True))
        for pair in [(x**a, sp.Integer(0)), (sp.Integer(0), x**a), (x**a, x**(a + 1))]:
            got = [0, 0]
            want = [0, 0]
            for e, acc in ((lhs, got), (rhs, want)):
                for m, c in e.terms.items():
                    r0, r1 = grassmann_act_word(e.ctx, e.ctx.word_of(m), pair)
                    acc[0] += to_sympy(c) * r0
                    acc[1] += to_sympy(c) * r1
            assert sp.simplify(got[0] - want[0]) == 0 and sp.simplify(got[1] - want[1]) == 0


def test_eq4_against_jackson_oracle():
    x = sp.Symbol("x1")
    for n in range(4):
        lhs = lhs_power(IdentitySpec("eq4", n))
        rhs = rhs_closed_form(IdentitySpec("eq4", n))
        for k in range(n + 4):
            assert sp.expand(act_expr(lhs, x**k) - act_expr(rhs, x**k)) == 0


def test_gradedness_all_families():
    for fam, kw in [("eq1", {}), ("eq2", {}), ("eq3", {"n_vars": 3}), ("eq4", {}), ("eq7", {})]:
        for n in range(4):
            assert graded_degree(lhs_power(IdentitySpec(fam, n, **kw))) == n + 1


def test_factor_form():
    for n in range(7):
        lhs = lhs_power(IdentitySpec("eq1", n))
        (m, c), = lhs.terms.items()
        assert m == (2 * n + 2, n + 1) and c == ONE


def test_q_to_classical_consistency():
    for n in range(5):
        eq4 = lhs_power(IdentitySpec("eq4", n)).eval_at(1)
        eq1 = lhs_power(IdentitySpec("eq1", n))
        assert eq4.relabel(eq1.ctx) == eq1
    for n in range(4):
        eq7 = lhs_power(IdentitySpec("eq7", n)).eval_at(1)
        eq2 = lhs_power(IdentitySpec("eq2", n))
        assert eq7.relabel(eq2.ctx) == eq2


def test_hyperplane_annihilation_report():
    r = verify_identity(IdentitySpec("hyperplane", 2, 3))
    assert r.equal and r.rhs_normal is None and r.checks["annihilates_P_n"]


# -- relation factors -------------------------------------------------------------

def test_relation1_residual_is_proportional_to_lowering():
    # q^2 J0 J- - J- J0 = -(1 + (q^2 - 1) n_hat) D; n_hat carried separately
    for n in range(5):
        plus, zero, minus = build_q_sl2(n)
        num = mul_normal(zero.numerator, minus).scale(Q2) - mul_normal(minus, zero.numerator)
        ratio = proportionality(num, minus) / ScalarQuotient(zero.denominator)
        expected = -(ScalarQuotient(1) + ScalarQuotient(Q2 - 1) * n_hat(n))
        assert ratio == expected


def test_relation1_residual_hand_check_sympy():
    # independent: n_hat as sympy rational function, D x = 1 + q^2 x D by the Jackson quotient
    x = sp.Symbol("x1")
    qn = lambda k: sum(q**(2 * i) for i in range(k))  # noqa: E731
    for n in range(4):
        nh = qn(n) * qn(n + 1) / qn(2 * n + 2)
        D = lambda f: sp.cancel((f - f.subs(x, q**2 * x)) / ((1 - q**2) * x))  # noqa: E731
        J0 = lambda f: x * D(f) - nh * f  # noqa: E731
        for k in range(1, 5):
            f = x**k
            res = q**2 * J0(D(f)) - D(J0(f))
            assert sp.simplify(res + (1 + (q**2 - 1) * nh) * D(f)) == 0


def test_fit_n0():
    fit = fit_relations5(0)
    assert fit.relations_hold
    assert fit.factors["alpha_zero"] == ScalarQuotient(1)


def test_fit_solves_and_has_classical_limit():
    for n in range(6):
        fit = fit_relations5(n)
        assert fit.relations_hold and fit.classical_limit_ok
        for v in fit.factors.values():
            assert v.eval_at(1) == 1
        # closed form observed for the zero factor: (1 + q^(2n+2)) / (q^(2n) (1 + q^2))
        expected = ScalarQuotient(1 + Scalar.q_power(2 * n + 2), Scalar.q_power(2 * n) * (1 + Q2))
        assert fit.factors["alpha_zero"] == expected
        assert fit.factors["alpha_plus"] == ScalarQuotient(Scalar.q_power(-2 * n))
