"""Operators acting on the polynomial modules ``P_n`` and their matrices.

The action is read off the rewriting rules: to apply ``e`` to ``p`` we
normal-order ``e * p`` and evaluate on the constant ``1``, where every
normal monomial carrying a derivative vanishes.  For the classical and
q-line rule sets this is ordinary differentiation and the Jackson
derivative; on the quantum plane and hyperplane it *defines* the module.
"""

from __future__ import annotations

from itertools import product
from typing import Optional

import numpy as np

from .errors import ContextMismatch, NotInvariant
from .opalg import AlgebraContext, OperatorExpr, _accumulate, mul_normal
from .scalar import ONE, ZERO, Scalar


class PolyElement:
    """Polynomial in the context variables, keyed by ``(var exps..., grassmann flags...)``."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: AlgebraContext, terms: dict):
        self.ctx = ctx
        width = ctx.n_boson + ctx.n_grassmann
        clean: dict = {}
        for m, c in terms.items():
            m = tuple(m)
            if len(m) != width or any(k < 0 for k in m):
                raise ValueError(f"bad exponent vector {m}")
            if any(k > 1 for k in m[ctx.n_boson:]):
                continue
            _accumulate(clean, {m: Scalar.coerce(c)})
        self.terms = clean

    @classmethod
    def monomial(cls, ctx: AlgebraContext, exps, coeff=ONE) -> "PolyElement":
        return cls(ctx, {tuple(exps): coeff})

    @classmethod
    def from_operator(cls, e: OperatorExpr) -> "PolyElement":
        """Evaluate an operator on the constant 1."""
        half = e.ctx.n_boson + e.ctx.n_grassmann
        return cls(e.ctx, {m[:half]: c for m, c in e.terms.items() if not any(m[half:])})

    def as_operator(self) -> OperatorExpr:
        pad = (0,) * (self.ctx.n_boson + self.ctx.n_grassmann)
        return OperatorExpr(self.ctx, {m + pad: c for m, c in self.terms.items()})

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def eval_at(self, q0) -> "PolyElement":
        return PolyElement(self.ctx, {m: c.eval_at(q0) for m, c in self.terms.items()})

    def __add__(self, other):
        if self.ctx != other.ctx:
            raise ContextMismatch("polynomials live in different contexts")
        terms = dict(self.terms)
        _accumulate(terms, other.terms)
        return PolyElement(self.ctx, terms)

    def __eq__(self, other):
        if not isinstance(other, PolyElement):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    __hash__ = None

    def __str__(self):
        return str(self.as_operator())

    def __repr__(self):
        return f"PolyElement({self})"


def apply(e: OperatorExpr, p: PolyElement) -> PolyElement:
    if e.ctx != p.ctx:
        raise ContextMismatch(f"{e.ctx} vs {p.ctx}")
    return PolyElement.from_operator(mul_normal(e, p.as_operator()))


def basis(ctx: AlgebraContext, n: int) -> list:
    """Monomials of total degree <= n, graded then lexicographically descending.

    Grassmann variables carry degree 1 and exponent at most 1.
    """
    out = []
    for d in range(n + 1):
        out.extend(_monomials_of_degree(ctx, d))
    return out


def _monomials_of_degree(ctx: AlgebraContext, d: int) -> list:
    ranges = [range(d + 1)] * ctx.n_boson + [range(2)] * ctx.n_grassmann
    mons = [m for m in product(*ranges) if sum(m) == d]
    return sorted(mons, reverse=True)


def annihilates(e: OperatorExpr, n: int) -> bool:
    return all(apply(e, PolyElement.monomial(e.ctx, b)).is_zero() for b in basis(e.ctx, n))


def derivative_profile(e: OperatorExpr) -> set:
    """Set of total derivative orders present in the normal form of ``e``."""
    e = e.normalize()
    half = e.ctx.n_boson + e.ctx.n_grassmann
    return {sum(m[half:]) for m in e.terms}


class OperatorMatrix:
    """Matrix of an operator on the monomial basis of ``P_n``; column j is the image of basis[j]."""

    def __init__(self, ctx: AlgebraContext, n: int, entries: np.ndarray, basis_: Optional[list] = None):
        self.ctx = ctx
        self.n = n
        self.basis = basis_ if basis_ is not None else basis(ctx, n)
        self.entries = entries

    @property
    def shape(self):
        return self.entries.shape

    def __matmul__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        if self.ctx != other.ctx or self.n != other.n:
            raise ContextMismatch("matrices act on different modules")
        if self.entries.size == 0:
            return self
        return OperatorMatrix(self.ctx, self.n, self.entries @ other.entries, self.basis)

    def __pow__(self, k: int) -> "OperatorMatrix":
        out = identity_matrix(self.ctx, self.n)
        for _ in range(k):
            out = out @ self
        return out

    def __eq__(self, other):
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        return (self.ctx == other.ctx and self.n == other.n
                and self.shape == other.shape and bool(np.all(self.entries == other.entries)))

    __hash__ = None

    def is_zero(self) -> bool:
        return all(not x for x in self.entries.flat)

    def nilpotency_index(self) -> Optional[int]:
        """Least m >= 1 with M^m = 0, or None when M is not nilpotent."""
        dim = self.shape[0]
        power = self
        for m in range(1, dim + 2):
            if power.is_zero():
                return m
            power = power @ self
        return None

    def eval_at(self, q0) -> np.ndarray:
        return np.vectorize(lambda s: s.eval_at(q0), otypes=[object])(self.entries)

    def to_text(self) -> str:
        """Dense row-major block; one row per line, entries separated by `` | ``."""
        lines = [f"matrix {self.shape[0]}x{self.shape[1]} on P_{self.n} [{self.ctx}]"]
        lines.append("basis: " + ", ".join(_mono_text(self.ctx, b) for b in self.basis))
        for row in self.entries:
            lines.append(" | ".join(s.to_text() for s in row))
        return "\n".join(lines)

    def __str__(self):
        return self.to_text()


def _mono_text(ctx: AlgebraContext, b: tuple) -> str:
    return str(PolyElement.monomial(ctx, b))


def identity_matrix(ctx: AlgebraContext, n: int) -> OperatorMatrix:
    dim = len(basis(ctx, n))
    entries = np.full((dim, dim), ZERO, dtype=object)
    for i in range(dim):
        entries[i, i] = ONE
    return OperatorMatrix(ctx, n, entries)


def matrix_of(e: OperatorExpr, n: int) -> OperatorMatrix:
    ctx = e.ctx
    b = basis(ctx, n)
    index = {m: i for i, m in enumerate(b)}
    entries = np.full((len(b), len(b)), ZERO, dtype=object)
    for j, m in enumerate(b):
        image = apply(e, PolyElement.monomial(ctx, m))
        for mono, c in image.terms.items():
            i = index.get(mono)
            if i is None:
                raise NotInvariant(
                    f"image of basis monomial {_mono_text(ctx, m)} leaves P_{n} "
                    f"(contains {_mono_text(ctx, mono)})", monomial=m)
            entries[i, j] = c
    return OperatorMatrix(ctx, n, entries, b)


def preserves(e: OperatorExpr, n: int) -> bool:
    try:
        matrix_of(e, n)
    except NotInvariant:
        return False
    return True

