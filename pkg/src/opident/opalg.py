"""Noncommutative operator algebras and their normal-ordering engine.

An :class:`AlgebraContext` fixes the generators and the reordering rules.
Generators are numbered by their position in the canonical normal order::

    x_1 .. x_p | theta_1 .. theta_r | d_1 .. d_p | dtheta_1 .. dtheta_r

so a normal monomial is just the tuple of exponents over these positions.
A *word* is a tuple of positions in arbitrary order.  Reordering rules are
stored for every adjacent pair ``(a, b)`` with ``a > b``; pairs ``(a, a)``
of a Grassmann generator rewrite to zero.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import ContextMismatch, InvalidContext
from .scalar import ONE, ZERO, Scalar

Word = tuple  # tuple[int, ...] of generator positions


class RuleSet(enum.Enum):
    CLASSICAL = "classical"
    CLASSICAL_GRASSMANN = "grassmann"
    QLINE = "qline"
    QUANTUM_PLANE = "qplane"
    QUANTUM_HYPERPLANE = "qhyperplane"

    @property
    def is_q(self) -> bool:
        return self in (RuleSet.QLINE, RuleSet.QUANTUM_PLANE, RuleSet.QUANTUM_HYPERPLANE)


class GenKind(enum.Enum):
    BOSON_VAR = "var"
    GRASSMANN_VAR = "gvar"
    CLASSICAL_DERIV = "deriv"
    JACKSON_DERIV = "jackson"
    GRASSMANN_DERIV = "gderiv"


@dataclass(frozen=True)
class Generator:
    kind: GenKind
    index: int  # 1-based


@dataclass(frozen=True)
class NormalMonomial:
    var_exponents: tuple
    grassmann_var_flags: tuple
    deriv_exponents: tuple
    grassmann_deriv_flags: tuple

    @property
    def degree(self) -> int:
        return (sum(self.var_exponents) + sum(self.grassmann_var_flags)
                - sum(self.deriv_exponents) - sum(self.grassmann_deriv_flags))

    @property
    def derivative_order(self) -> int:
        return sum(self.deriv_exponents) + sum(self.grassmann_deriv_flags)


@dataclass(frozen=True)
class AlgebraContext:
    n_boson: int
    n_grassmann: int
    rule_set: RuleSet
    _rules: dict = field(default=None, compare=False, repr=False, hash=False)
    _nilpotent: frozenset = field(default=None, compare=False, repr=False, hash=False)
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        rules, nil = _build_rules(self)
        object.__setattr__(self, "_rules", rules)
        object.__setattr__(self, "_nilpotent", nil)

    # -- layout -----------------------------------------------------------
    @property
    def size(self) -> int:
        return 2 * (self.n_boson + self.n_grassmann)

    @property
    def deriv_kind(self) -> GenKind:
        return GenKind.JACKSON_DERIV if self.rule_set.is_q else GenKind.CLASSICAL_DERIV

    def position(self, gen: Generator) -> int:
        p, r = self.n_boson, self.n_grassmann
        limit = r if gen.kind in (GenKind.GRASSMANN_VAR, GenKind.GRASSMANN_DERIV) else p
        if not 1 <= gen.index <= limit:
            raise InvalidContext(f"generator index {gen.index} out of range for {self}")
        if gen.kind is GenKind.BOSON_VAR:
            return gen.index - 1
        if gen.kind is GenKind.GRASSMANN_VAR:
            return p + gen.index - 1
        if gen.kind in (GenKind.CLASSICAL_DERIV, GenKind.JACKSON_DERIV):
            if gen.kind is not self.deriv_kind:
                raise InvalidContext(f"{gen.kind.value} derivative not available in {self.rule_set.value}")
            return p + r + gen.index - 1
        return 2 * p + r + gen.index - 1

    def generator(self, pos: int) -> Generator:
        p, r = self.n_boson, self.n_grassmann
        if pos < p:
            return Generator(GenKind.BOSON_VAR, pos + 1)
        if pos < p + r:
            return Generator(GenKind.GRASSMANN_VAR, pos - p + 1)
        if pos < 2 * p + r:
            return Generator(self.deriv_kind, pos - p - r + 1)
        return Generator(GenKind.GRASSMANN_DERIV, pos - 2 * p - r + 1)

    def is_derivative(self, pos: int) -> bool:
        return pos >= self.n_boson + self.n_grassmann

    def var_name(self, i: int) -> str:
        if self.n_boson <= 2:
            return "xy"[i - 1]
        return f"x{i}"

    def grassmann_name(self, i: int) -> str:
        return "theta" if self.n_grassmann == 1 else f"theta{i}"

    def name(self, pos: int) -> str:
        g = self.generator(pos)
        if g.kind is GenKind.BOSON_VAR:
            return self.var_name(g.index)
        if g.kind is GenKind.GRASSMANN_VAR:
            return self.grassmann_name(g.index)
        if g.kind is GenKind.GRASSMANN_DERIV:
            return "P" + self.grassmann_name(g.index)
        prefix = "D" if g.kind is GenKind.JACKSON_DERIV else "P"
        suffix = "xy"[g.index - 1] if self.n_boson <= 2 else str(g.index)
        return prefix + suffix

    def split(self, exps: tuple) -> NormalMonomial:
        p, r = self.n_boson, self.n_grassmann
        return NormalMonomial(exps[:p], exps[p:p + r], exps[p + r:2 * p + r], exps[2 * p + r:])

    def pack(self, m: NormalMonomial) -> tuple:
        exps = (tuple(m.var_exponents) + tuple(m.grassmann_var_flags)
                + tuple(m.deriv_exponents) + tuple(m.grassmann_deriv_flags))
        if len(exps) != self.size:
            raise InvalidContext("monomial shape does not match context")
        return exps

    def word_of(self, exps: tuple) -> Word:
        return tuple(pos for pos, k in enumerate(exps) for _ in range(k))

    def degree(self, exps: tuple) -> int:
        half = self.n_boson + self.n_grassmann
        return sum(exps[:half]) - sum(exps[half:])

    # -- rules ------------------------------------------------------------
    def rule(self, a: int, b: int):
        """Rewrite of the adjacent pair ``a b``; None when already ordered."""
        if a == b and a in self._nilpotent:
            return ()
        return self._rules.get((a, b))

    def is_redex(self, a: int, b: int) -> bool:
        return a > b or (a == b and a in self._nilpotent)

    # -- constructors -----------------------------------------------------
    def one(self) -> "OperatorExpr":
        return OperatorExpr(self, {(0,) * self.size: ONE})

    def zero(self) -> "OperatorExpr":
        return OperatorExpr(self, {})

    def scalar(self, c) -> "OperatorExpr":
        return self.one().scale(c)

    def gen(self, pos_or_gen) -> "OperatorExpr":
        pos = pos_or_gen if isinstance(pos_or_gen, int) else self.position(pos_or_gen)
        exps = [0] * self.size
        exps[pos] = 1
        return OperatorExpr(self, {tuple(exps): ONE})

    def x(self, i: int = 1) -> "OperatorExpr":
        return self.gen(Generator(GenKind.BOSON_VAR, i))

    def d(self, i: int = 1) -> "OperatorExpr":
        return self.gen(Generator(self.deriv_kind, i))

    def theta(self, i: int = 1) -> "OperatorExpr":
        return self.gen(Generator(GenKind.GRASSMANN_VAR, i))

    def dtheta(self, i: int = 1) -> "OperatorExpr":
        return self.gen(Generator(GenKind.GRASSMANN_DERIV, i))

    def monomial(self, exps, coeff=ONE) -> "OperatorExpr":
        exps = self.pack(exps) if isinstance(exps, NormalMonomial) else tuple(exps)
        if len(exps) != self.size:
            raise InvalidContext("monomial shape does not match context")
        if any(k < 0 for k in exps):
            raise ValueError("negative exponent")
        coeff = Scalar.coerce(coeff)
        if not coeff or any(exps[pos] > 1 for pos in self._nilpotent):
            return self.zero()
        return OperatorExpr(self, {exps: coeff})

    def word(self, word: Iterable[int], coeff=ONE) -> "OperatorExpr":
        return OperatorExpr(self, {}, ((Scalar.coerce(coeff), tuple(word)),))

    # -- engine -----------------------------------------------------------
    def mul_gen(self, exps: tuple, pos: int) -> dict:
        """Normal form of ``monomial * generator`` (memoized per context)."""
        key = (exps, pos)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        top = None
        for h in range(self.size - 1, pos, -1):
            if exps[h]:
                top = h
                break
        if top is None:
            if exps[pos] and pos in self._nilpotent:
                res = {}
            else:
                new = list(exps)
                new[pos] += 1
                res = {tuple(new): ONE}
        else:
            head = list(exps)
            head[top] -= 1
            head = tuple(head)
            res = {}
            for c, word in self._rules[(top, pos)]:
                part = {head: c}
                for g in word:
                    part = self._mul_terms_gen(part, g)
                _accumulate(res, part)
        self._cache[key] = res
        return res

    def _mul_terms_gen(self, terms: dict, pos: int) -> dict:
        out: dict = {}
        for m, c in terms.items():
            for m2, c2 in self.mul_gen(m, pos).items():
                v = out.get(m2, ZERO) + c * c2
                if v:
                    out[m2] = v
                else:
                    out.pop(m2, None)
        return out

    def fold(self, terms: dict, word: Word) -> dict:
        for g in word:
            terms = self._mul_terms_gen(terms, g)
            if not terms:
                break
        return terms

    def __str__(self):
        return f"{self.rule_set.value}({self.n_boson},{self.n_grassmann})"


def _accumulate(acc: dict, part: dict, scale=None) -> None:
    for m, c in part.items():
        if scale is not None:
            c = c * scale
        v = acc.get(m, ZERO) + c
        if v:
            acc[m] = v
        else:
            acc.pop(m, None)


def _build_rules(ctx: AlgebraContext):
    p, r = ctx.n_boson, ctx.n_grassmann
    V = lambda i: i - 1  # noqa: E731
    G = lambda i: p + i - 1  # noqa: E731
    D = lambda i: p + r + i - 1  # noqa: E731
    GD = lambda i: 2 * p + r + i - 1  # noqa: E731
    one, neg = ONE, -ONE
    rules: dict = {}
    nil = frozenset(list(range(p, p + r)) + list(range(2 * p + r, 2 * p + 2 * r)))

    if not ctx.rule_set.is_q:
        for i in range(1, p + 1):
            for j in range(i + 1, p + 1):
                rules[(V(j), V(i))] = ((one, (V(i), V(j))),)
                rules[(D(j), D(i))] = ((one, (D(i), D(j))),)
            for j in range(1, p + 1):
                if i == j:
                    rules[(D(i), V(i))] = ((one, ()), (one, (V(i), D(i))))
                else:
                    rules[(D(j), V(i))] = ((one, (V(i), D(j))),)
        for a in range(1, r + 1):
            for b in range(a + 1, r + 1):
                rules[(G(b), G(a))] = ((neg, (G(a), G(b))),)
                rules[(GD(b), GD(a))] = ((neg, (GD(a), GD(b))),)
            for b in range(1, r + 1):
                if a == b:
                    rules[(GD(a), G(a))] = ((one, ()), (neg, (G(a), GD(a))))
                else:
                    rules[(GD(b), G(a))] = ((neg, (G(a), GD(b))),)
            for i in range(1, p + 1):
                rules[(G(a), V(i))] = ((one, (V(i), G(a))),)
                rules[(D(i), G(a))] = ((one, (G(a), D(i))),)
                rules[(GD(a), V(i))] = ((one, (V(i), GD(a))),)
                rules[(GD(a), D(i))] = ((one, (D(i), GD(a))),)
        return rules, nil

    # q-deformed line / plane / hyperplane
    q, qinv, q2 = Scalar.q_power(1), Scalar.q_power(-1), Scalar.q_power(2)
    for i in range(1, p + 1):
        for j in range(i + 1, p + 1):
            rules[(V(j), V(i))] = ((qinv, (V(i), V(j))),)
            # d_i d_j = q^-1 d_j d_i, i.e. d_j d_i -> q d_i d_j
            rules[(D(j), D(i))] = ((q, (D(i), D(j))),)
        for j in range(1, p + 1):
            if i == j:
                rhs = [(one, ()), (q2, (V(i), D(i)))]
                rhs += [(q2 - 1, (V(k), D(k))) for k in range(i + 1, p + 1)]
                rules[(D(i), V(i))] = tuple(rhs)
            else:
                rules[(D(i), V(j))] = ((q, (V(j), D(i))),)
    return rules, nil


def make_context(n_boson: int, n_grassmann: int = 0, rule_set=RuleSet.CLASSICAL) -> AlgebraContext:
    rule_set = RuleSet(rule_set)
    if n_boson < 0 or n_grassmann < 0:
        raise InvalidContext("variable counts must be nonnegative")
    if rule_set is RuleSet.CLASSICAL and n_grassmann:
        raise InvalidContext("classical rule set has no Grassmann variables; use grassmann")
    if rule_set is RuleSet.CLASSICAL_GRASSMANN and n_grassmann < 1:
        raise InvalidContext("grassmann rule set needs at least one Grassmann variable")
    if rule_set is RuleSet.QLINE and (n_boson, n_grassmann) != (1, 0):
        raise InvalidContext("the q-line has exactly one variable")
    if rule_set is RuleSet.QUANTUM_PLANE and (n_boson, n_grassmann) != (2, 0):
        raise InvalidContext("the quantum plane has exactly two variables")
    if rule_set is RuleSet.QUANTUM_HYPERPLANE and (n_boson < 1 or n_grassmann):
        raise InvalidContext("the quantum hyperplane needs >= 1 variable and no Grassmann ones")
    return AlgebraContext(n_boson, n_grassmann, rule_set)


class OperatorExpr:
    """Linear combination of words with Scalar coefficients.

    ``terms`` holds the normal-ordered part; ``pending`` holds products that
    have not been rewritten yet.  Arithmetic is lazy; :meth:`normalize`
    (or :func:`normalize`) does the rewriting.
    """

    __slots__ = ("ctx", "_terms", "_pending")

    def __init__(self, ctx: AlgebraContext, terms: dict, pending: tuple = ()):
        self.ctx = ctx
        self._terms = terms
        self._pending = pending

    # -- inspection -------------------------------------------------------
    @property
    def is_normal(self) -> bool:
        return not self._pending

    @property
    def terms(self) -> dict:
        """Normal-ordered terms as ``{exponent tuple: Scalar}`` (normalizes first)."""
        return dict(self.normalize()._terms)

    def items(self):
        """Terms in canonical print order."""
        e = self.normalize()
        return sorted(e._terms.items(), key=lambda kv: sort_key(e.ctx, kv[0]))

    def monomials(self) -> list:
        return [(self.ctx.split(m), c) for m, c in self.items()]

    def coefficient(self, exps) -> Scalar:
        if isinstance(exps, NormalMonomial):
            exps = self.ctx.pack(exps)
        return self.normalize()._terms.get(tuple(exps), ZERO)

    def __len__(self):
        return len(self.normalize()._terms)

    def is_zero(self) -> bool:
        return not self.normalize()._terms

    def _check(self, other: "OperatorExpr"):
        if self.ctx != other.ctx:
            raise ContextMismatch(f"{self.ctx} vs {other.ctx}")

    def _coerce(self, other) -> "OperatorExpr":
        if isinstance(other, OperatorExpr):
            self._check(other)
            return other
        return self.ctx.scalar(other)

    # -- arithmetic (lazy) -------------------------------------------------
    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        terms = dict(self._terms)
        _accumulate(terms, other._terms)
        return OperatorExpr(self.ctx, terms, self._pending + other._pending)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "OperatorExpr":
        c = Scalar.coerce(c)
        if not c:
            return self.ctx.zero()
        return OperatorExpr(self.ctx, {m: v * c for m, v in self._terms.items()},
                            tuple((v * c, w) for v, w in self._pending))

    def _words(self):
        for m, c in self._terms.items():
            yield c, self.ctx.word_of(m)
        yield from self._pending

    def __mul__(self, other):
        if not isinstance(other, OperatorExpr):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        self._check(other)
        pending = tuple((c1 * c2, w1 + w2) for c1, w1 in self._words() for c2, w2 in other._words())
        return OperatorExpr(self.ctx, {}, pending)

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __pow__(self, k: int):
        return power(self, k)

    # -- normal ordering --------------------------------------------------
    def normalize(self) -> "OperatorExpr":
        if not self._pending:
            return self
        ctx = self.ctx
        terms = dict(self._terms)
        ident = (0,) * ctx.size
        for c, w in self._pending:
            if c:
                _accumulate(terms, ctx.fold({ident: ONE}, w), c)
        return OperatorExpr(ctx, terms)

    def eval_at(self, q0) -> "OperatorExpr":
        """Substitute ``q := q0`` in every coefficient."""
        e = self.normalize()
        terms = {}
        _accumulate(terms, {m: Scalar.coerce(c.eval_at(q0)) for m, c in e._terms.items()})
        return OperatorExpr(self.ctx, terms)

    def relabel(self, ctx: AlgebraContext) -> "OperatorExpr":
        """Reinterpret the same exponent tuples in a context of the same shape."""
        if ctx.size != self.ctx.size or ctx.n_boson != self.ctx.n_boson:
            raise ContextMismatch(f"cannot relabel {self.ctx} as {ctx}")
        return OperatorExpr(ctx, dict(self.normalize()._terms))

    def __eq__(self, other):
        if not isinstance(other, OperatorExpr):
            try:
                other = self._coerce(other)
            except (TypeError, ContextMismatch):
                return NotImplemented
        return self.ctx == other.ctx and self.normalize()._terms == other.normalize()._terms

    __hash__ = None

    def __str__(self):
        from .exprlang import print_expr
        return print_expr(self)

    def __repr__(self):
        return f"OperatorExpr[{self.ctx}]({self})"


def sort_key(ctx: AlgebraContext, exps: tuple):
    """Graded degree, then total length, then exponents lexicographically descending."""
    return (ctx.degree(exps), sum(exps), tuple(-k for k in exps))


def normalize(e: OperatorExpr) -> OperatorExpr:
    return e.normalize()


def mul_normal(a: OperatorExpr, b: OperatorExpr) -> OperatorExpr:
    """Eager product of two expressions, normal-ordered."""
    a._check(b)
    a, b = a.normalize(), b.normalize()
    ctx = a.ctx
    terms: dict = {}
    for m2, c2 in b._terms.items():
        _accumulate(terms, ctx.fold(dict(a._terms), ctx.word_of(m2)), c2)
    return OperatorExpr(ctx, terms)


def power(e: OperatorExpr, k: int) -> OperatorExpr:
    """``e**k``, normalizing after every factor."""
    if k < 0:
        raise ValueError("negative power")
    e = e.normalize()
    out = e.ctx.one()
    for _ in range(k):
        out = mul_normal(out, e)
    return out


def commutator(a: OperatorExpr, b: OperatorExpr, q_a=ONE, q_b=ONE) -> OperatorExpr:
    """``q_a * a b - q_b * b a`` normal-ordered."""
    return mul_normal(a, b).scale(q_a) - mul_normal(b, a).scale(q_b)


def graded_degree(e: OperatorExpr) -> Optional[int]:
    """Common value of (#variables - #derivatives) over all terms, or None."""
    e = e.normalize()
    degrees = {e.ctx.degree(m) for m in e._terms}
    return degrees.pop() if len(degrees) == 1 else None


def derivative_orders(e: OperatorExpr) -> set:
    e = e.normalize()
    half = e.ctx.n_boson + e.ctx.n_grassmann
    return {sum(m[half:]) for m in e._terms}


# -- explicit rewriting (strategy-driven; used to test confluence) -----------

def rewrite(ctx: AlgebraContext, word: Word, strategy: str = "leftmost",
            rng: Optional[random.Random] = None, max_steps: int = 10**6) -> OperatorExpr:
    """Normalize a single word by repeated one-step rewrites.

    ``strategy`` picks the redex: ``leftmost``, ``rightmost`` or ``random``.
    Independent of the memoized engine except for the shared rule table.
    """
    if strategy == "random" and rng is None:
        rng = random.Random(0)
    todo: dict = {tuple(word): ONE}
    done: dict = {}
    steps = 0
    while todo:
        w, c = todo.popitem()
        redexes = [i for i in range(len(w) - 1) if ctx.is_redex(w[i], w[i + 1])]
        if not redexes:
            exps = [0] * ctx.size
            for g in w:
                exps[g] += 1
            _accumulate(done, {tuple(exps): c})
            continue
        steps += 1
        if steps > max_steps:
            raise RuntimeError("rewriting did not terminate")
        if strategy == "leftmost":
            i = redexes[0]
        elif strategy == "rightmost":
            i = redexes[-1]
        else:
            i = rng.choice(redexes)
        for c2, rep in ctx.rule(w[i], w[i + 1]):
            _accumulate(todo, {w[:i] + rep + w[i + 2:]: c * c2})
    return OperatorExpr(ctx, done)
