"""The operator families, their closed-form right-hand sides, and verification.

Families (``n`` is always a concrete integer):

* ``eq1``  ``(x^2 P - n x)^(n+1) = x^(2n+2) P^(n+1)``
* ``eq2``  ``(x^2 Px + x y Py - n x)^(n+1)``, binomial expansion; ``y`` may be Grassmann
* ``eq3``  ``(x1 (sum_m x_m P_m - n))^(n+1)``, multinomial expansion
* ``eq4``  Jackson derivative on the line, prefactor ``q^(2n(n+1))``
* ``eq7``  quantum plane, prefactors ``q^(2n^2 - n(k-2) + k(k-1))`` and q-binomials
* ``hyperplane``  quantum hyperplane, annihilation of ``P_n`` only
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import NamedTuple, Optional

from .errors import UnsupportedFamily
from .opalg import (
    AlgebraContext,
    OperatorExpr,
    RuleSet,
    graded_degree,
    make_context,
    mul_normal,
    power,
)
from .polyrep import annihilates, derivative_profile
from .scalar import ONE, Scalar, ScalarQuotient, multinomial, n_hat, q_binomial, q_number


class Family(enum.Enum):
    EQ1 = "eq1"
    EQ2 = "eq2"
    EQ3 = "eq3"
    EQ4 = "eq4"
    EQ7 = "eq7"
    HYPERPLANE = "hyperplane"


@dataclass(frozen=True)
class IdentitySpec:
    family: Family
    n: int
    n_vars: Optional[int] = None
    grassmann: bool = False

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if not isinstance(self.n, int) or self.n < 0:
            raise ValueError(f"n must be a nonnegative integer, got {self.n!r}")
        if self.grassmann and self.family is not Family.EQ2:
            raise ValueError("grassmann variant exists only for eq2")
        if self.family is Family.EQ3:
            if self.n_vars is None or self.n_vars < 2:
                raise ValueError("eq3 needs n_vars >= 2")
        elif self.family is Family.HYPERPLANE:
            if self.n_vars is None or self.n_vars < 1:
                raise ValueError("hyperplane needs n_vars >= 1")
        elif self.n_vars is not None:
            expected = {Family.EQ1: 1, Family.EQ4: 1, Family.EQ2: 2, Family.EQ7: 2}[self.family]
            if self.n_vars != expected:
                raise ValueError(f"{self.family.value} has exactly {expected} variable(s)")

    def label(self) -> str:
        parts = [self.family.value, f"n={self.n}"]
        if self.n_vars is not None and self.family in (Family.EQ3, Family.HYPERPLANE):
            parts.append(f"vars={self.n_vars}")
        if self.grassmann:
            parts.append("grassmann")
        return " ".join(parts)


@dataclass
class VerificationReport:
    spec: IdentitySpec
    lhs_normal: OperatorExpr
    rhs_normal: Optional[OperatorExpr]
    equal: bool
    elapsed: float
    term_count: int
    witness: Optional[tuple] = None
    checks: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)


# -- operator constructors ----------------------------------------------------

class Sl2Triple(NamedTuple):
    plus: OperatorExpr
    zero: OperatorExpr
    minus: OperatorExpr


class QuotientOperator(NamedTuple):
    """``numerator / denominator`` for operators whose coefficients are Scalar quotients."""

    numerator: OperatorExpr
    denominator: Scalar

    def eval_at(self, q0) -> OperatorExpr:
        return self.numerator.eval_at(q0).scale(Scalar(Fraction(1) / Fraction(self.denominator.eval_at(q0))))


class QSl2Triple(NamedTuple):
    plus: OperatorExpr
    zero: QuotientOperator
    minus: OperatorExpr


def classical_context(n_vars: int = 1) -> AlgebraContext:
    return make_context(n_vars, 0, RuleSet.CLASSICAL)


def build_sl2(n: int) -> Sl2Triple:
    ctx = classical_context(1)
    x, d = ctx.x(), ctx.d()
    plus = x * x * d - x.scale(n)
    zero = x * d - ctx.scalar(Fraction(n, 2))
    return Sl2Triple(plus.normalize(), zero.normalize(), d)


def build_slk_raising(n: int, n_vars: int, grassmann: bool = False) -> OperatorExpr:
    """``x1 (sum_m x_m P_m - n)``; with ``grassmann`` the second variable is Grassmann."""
    if grassmann:
        if n_vars != 2:
            raise ValueError("the Grassmann variant has one boson and one Grassmann variable")
        ctx = make_context(1, 1, RuleSet.CLASSICAL_GRASSMANN)
        x = ctx.x()
        euler = x * ctx.d() + ctx.theta() * ctx.dtheta()
    else:
        ctx = classical_context(n_vars)
        x = ctx.x()
        euler = ctx.zero()
        for m in range(1, n_vars + 1):
            euler = euler + ctx.x(m) * ctx.d(m)
    return (x * (euler - ctx.scalar(n))).normalize()


def build_q_sl2(n: int) -> QSl2Triple:
    ctx = make_context(1, 0, RuleSet.QLINE)
    x, d = ctx.x(), ctx.d()
    plus = x * x * d - x.scale(q_number(n))
    shift = n_hat(n)
    zero = QuotientOperator((x * d).scale(shift.den).normalize() - ctx.scalar(shift.num), shift.den)
    return QSl2Triple(plus.normalize(), zero, d)


def build_qplane_raising(n: int) -> OperatorExpr:
    return build_qhyperplane_raising(n, 2)


def build_qhyperplane_raising(n: int, n_vars: int) -> OperatorExpr:
    """``x1 (sum_m x_m D_m) - {n} x1`` on the quantum plane (2 vars) or hyperplane."""
    if n_vars == 2:
        ctx = make_context(2, 0, RuleSet.QUANTUM_PLANE)
    elif n_vars == 1:
        ctx = make_context(1, 0, RuleSet.QLINE)
    else:
        ctx = make_context(n_vars, 0, RuleSet.QUANTUM_HYPERPLANE)
    x1 = ctx.x(1)
    out = x1.scale(-q_number(n))
    for m in range(1, n_vars + 1):
        out = out + x1 * ctx.x(m) * ctx.d(m)
    return out.normalize()


def raising_operator(spec: IdentitySpec) -> OperatorExpr:
    f = spec.family
    if f is Family.EQ1:
        return build_sl2(spec.n).plus
    if f is Family.EQ2:
        return build_slk_raising(spec.n, 2, spec.grassmann)
    if f is Family.EQ3:
        return build_slk_raising(spec.n, spec.n_vars)
    if f is Family.EQ4:
        return build_q_sl2(spec.n).plus
    if f is Family.EQ7:
        return build_qplane_raising(spec.n)
    return build_qhyperplane_raising(spec.n, spec.n_vars)


def lhs_power(spec: IdentitySpec, exponent: Optional[int] = None) -> OperatorExpr:
    return power(raising_operator(spec), spec.n + 1 if exponent is None else exponent)


# -- closed forms -------------------------------------------------------------

def compositions(total: int, parts: int):
    """All tuples of ``parts`` nonnegative integers summing to ``total`` (lex descending)."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def rhs_closed_form(spec: IdentitySpec) -> OperatorExpr:
    n, f = spec.n, spec.family
    if f is Family.HYPERPLANE:
        raise UnsupportedFamily("no closed form is known for the quantum hyperplane")
    if f is Family.EQ1:
        ctx = classical_context(1)
        return ctx.monomial((2 * n + 2, n + 1))
    if f is Family.EQ4:
        ctx = make_context(1, 0, RuleSet.QLINE)
        return ctx.monomial((2 * n + 2, n + 1), Scalar.q_power(2 * n * (n + 1)))
    if f is Family.EQ2:
        if spec.grassmann:
            ctx = make_context(1, 1, RuleSet.CLASSICAL_GRASSMANN)
        else:
            ctx = classical_context(2)
        out = ctx.zero()
        for k in range(n + 2):
            out = out + ctx.monomial((2 * n + 2 - k, k, n + 1 - k, k), comb(n + 1, k))
        return out
    if f is Family.EQ3:
        ctx = classical_context(spec.n_vars)
        out = ctx.zero()
        for j in compositions(n + 1, spec.n_vars):
            exps = (j[0] + n + 1,) + j[1:] + j
            out = out + ctx.monomial(exps, multinomial(n + 1, j))
        return out
    # eq7
    ctx = make_context(2, 0, RuleSet.QUANTUM_PLANE)
    out = ctx.zero()
    for k in range(n + 2):
        pref = Scalar.q_power(2 * n * n - n * (k - 2) + k * (k - 1))
        out = out + ctx.monomial((2 * n + 2 - k, k, n + 1 - k, k), pref * q_binomial(n + 1, k))
    return out


def first_difference(a: OperatorExpr, b: OperatorExpr) -> Optional[tuple]:
    """Smallest monomial (print order) on which ``a`` and ``b`` differ."""
    from .exprlang import monomial_text
    from .opalg import sort_key

    ta, tb = a.terms, b.terms
    diff = [m for m in set(ta) | set(tb) if ta.get(m) != tb.get(m)]
    if not diff:
        return None
    m = min(diff, key=lambda m: sort_key(a.ctx, m))
    return monomial_text(a.ctx, m), ta.get(m, Scalar()), tb.get(m, Scalar())


def verify_identity(spec: IdentitySpec) -> VerificationReport:
    start = time.perf_counter()
    lhs = lhs_power(spec)
    checks: dict = {}
    notes: list = []
    if spec.family is Family.HYPERPLANE:
        equal = annihilates(lhs, spec.n)
        checks["annihilates_P_n"] = equal
        checks["graded_degree"] = graded_degree(lhs) == spec.n + 1
        return VerificationReport(spec, lhs, None, equal, time.perf_counter() - start, len(lhs),
                                  None, checks, notes)
    rhs = rhs_closed_form(spec)
    equal = lhs.terms == rhs.terms
    witness = None if equal else first_difference(lhs, rhs)
    checks["graded_degree"] = graded_degree(lhs) == spec.n + 1
    if spec.family in (Family.EQ1, Family.EQ4):
        checks["factor_form"] = derivative_profile(lhs) == {spec.n + 1}
    if spec.family is Family.EQ2 and spec.grassmann:
        two = len(rhs) == 2
        checks["two_surviving_terms"] = two
        equal = equal and two
        notes.append("y is Grassmann: only the k=0 and k=1 terms survive")
    if spec.family is Family.EQ3:
        notes.append("left-hand side read as x1*(sum_m x_m*P_m - n); subtracting n once, not per term")
    return VerificationReport(spec, lhs, rhs, equal, time.perf_counter() - start, len(lhs),
                              witness, checks, notes)


# -- q-deformed sl2 relations: multiplicative factors --------------------------

@dataclass
class ScalarFit:
    n: int
    relations_hold: bool
    factors: dict  # name -> ScalarQuotient
    proportionality: dict  # relation name -> ScalarQuotient or None
    residuals: dict = field(default_factory=dict)
    classical_limit_ok: Optional[bool] = None
    notes: list = field(default_factory=list)


def proportionality(a: OperatorExpr, b: OperatorExpr) -> Optional[ScalarQuotient]:
    """The quotient ``c`` with ``a == c * b``, or None when none exists."""
    ta, tb = a.terms, b.terms
    if not tb:
        return ScalarQuotient(0) if not ta else None
    if set(ta) - set(tb):
        return None
    pivot = next(iter(tb))
    c = ScalarQuotient(ta.get(pivot, Scalar()), tb[pivot])
    for m, v in tb.items():
        if ta.get(m, Scalar()) * c.den != v * c.num:
            return None
    return c


def _combination(pairs) -> OperatorExpr:
    """``sum c_i * e_i`` with ScalarQuotient ``c_i``, multiplied by the common denominator."""
    common = ONE
    for c, _ in pairs:
        common = common * c.den
    out = None
    for c, e in pairs:
        term = e.scale(c.num * common.exact_div(c.den))
        out = term if out is None else out + term
    return out.normalize()


def fit_relations5(n: int) -> ScalarFit:
    """Solve for factors ``j = alpha * J`` so the three q-sl2 relations hold.

    Relations::

        q^2 j0 j- - j- j0 = -j-
        q^4 j+ j- - j- j+ = -(q^2 + 1) j0
        j0 j+ - q^2 j+ j0 = j+

    Only the product ``alpha_plus * alpha_minus`` is fixed by them; we set
    ``alpha_minus = 1``.
    """
    plus, zero, minus = build_q_sl2(n)
    J0, den = zero.numerator, zero.denominator
    q2, q4 = Scalar.q_power(2), Scalar.q_power(4)
    inv_den = ScalarQuotient(ONE, den)

    lhs1 = mul_normal(J0, minus).scale(q2) - mul_normal(minus, J0)  # times 1/den
    lhs2 = mul_normal(plus, minus).scale(q4) - mul_normal(minus, plus)
    lhs3 = mul_normal(J0, plus) - mul_normal(plus, J0).scale(q2)  # times 1/den
    # lhs_i = s_i * target_i, target expressions of the raw J's
    r1 = proportionality(lhs1, -minus)
    r2 = proportionality(lhs2, J0.scale(-(q2 + 1)))
    r3 = proportionality(lhs3, plus)
    s1 = r1 * inv_den if r1 is not None else None
    s2 = r2 * ScalarQuotient(den) if r2 is not None else None  # J0 carries 1/den
    s3 = r3 * inv_den if r3 is not None else None
    props = {"rel1": s1, "rel2": s2, "rel3": s3}
    residuals = {"rel1": lhs1, "rel2": lhs2, "rel3": lhs3}
    notes = []

    if s1 is None or s2 is None or s3 is None or not s1 or not s2 or s1 != s3:
        notes.append("no purely multiplicative solution; see proportionality and residuals")
        return ScalarFit(n, False, {}, props, residuals, None, notes)

    alpha0 = ScalarQuotient(ONE) / s1
    factors = {"alpha_zero": alpha0, "alpha_minus": ScalarQuotient(ONE), "alpha_plus": alpha0 / s2}
    hold = _substituted_residuals_vanish(factors, plus, zero, minus)
    try:
        classical = _classical_limit(n, factors)
    except ZeroDivisionError:
        classical = False
    return ScalarFit(n, hold, factors, props, {} if hold else residuals, classical, notes)


def _substituted_residuals_vanish(factors, plus, zero, minus) -> bool:
    a0, am, ap = factors["alpha_zero"], factors["alpha_minus"], factors["alpha_plus"]
    J0, den = zero.numerator, zero.denominator
    q2 = ScalarQuotient(Scalar.q_power(2))
    q4 = ScalarQuotient(Scalar.q_power(4))
    d = ScalarQuotient(ONE, den)
    j0m, mj0 = mul_normal(J0, minus), mul_normal(minus, J0)
    pm, mp = mul_normal(plus, minus), mul_normal(minus, plus)
    j0p, pj0 = mul_normal(J0, plus), mul_normal(plus, J0)
    rel1 = _combination([(q2 * a0 * am * d, j0m), (-(a0 * am * d), mj0), (am, minus)])
    rel2 = _combination([(q4 * ap * am, pm), (-(ap * am), mp), ((q2 + 1) * a0 * d, J0)])
    rel3 = _combination([(a0 * ap * d, j0p), (-(q2 * a0 * ap * d), pj0), (-ap, plus)])
    return rel1.is_zero() and rel2.is_zero() and rel3.is_zero()


def _classical_limit(n: int, factors: dict) -> bool:
    """At q = 1 the fitted relations are the sl2 brackets of the classical triple."""
    a0, am, ap = (Fraction(factors[k].eval_at(1)) for k in ("alpha_zero", "alpha_minus", "alpha_plus"))
    plus, zero, minus = build_sl2(n)
    jp, j0, jm = plus.scale(ap), zero.scale(a0), minus.scale(am)
    ok1 = (mul_normal(j0, jm) - mul_normal(jm, j0)) == -jm
    ok2 = (mul_normal(jp, jm) - mul_normal(jm, jp)) == j0.scale(-2)
    ok3 = (mul_normal(j0, jp) - mul_normal(jp, j0)) == jp
    return ok1 and ok2 and ok3
