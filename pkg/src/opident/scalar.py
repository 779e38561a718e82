"""Exact Laurent polynomials in a formal parameter ``q`` over the rationals.

Coefficients are :class:`fractions.Fraction` (stored as ``int`` when
integral, which keeps the hot paths of the rewriting engine fast).  All
q-combinatorics works in base ``q**2``, so ``q_number(n)`` is
``1 + q^2 + ... + q^(2n-2)``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from numbers import Rational as _RationalABC
from typing import Iterable, Mapping, Union

from .errors import NotDivisible, OutOfRange, PartsMismatch, ZeroAtPole

Rational = Fraction
Coeff = Union[int, Fraction]


def _norm(c: Coeff) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class Scalar:
    """Immutable Laurent polynomial ``sum c_e q^e`` with rational ``c_e``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Coeff] | Iterable[tuple[int, Coeff]] | Coeff = ()):
        if isinstance(terms, (int, Fraction)):
            items = [(0, terms)]
        elif isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = terms
        acc: dict[int, Coeff] = {}
        for e, c in items:
            if not isinstance(c, (int, Fraction)):
                if isinstance(c, _RationalABC):
                    c = Fraction(c)
                else:
                    raise TypeError(f"coefficient {c!r} is not rational")
            acc[int(e)] = acc.get(int(e), 0) + c
        self._terms = tuple(sorted((e, _norm(c)) for e, c in acc.items() if c != 0))
        self._hash = None

    @classmethod
    def _raw(cls, terms: tuple) -> "Scalar":
        s = object.__new__(cls)
        s._terms = terms
        s._hash = None
        return s

    @classmethod
    def q_power(cls, e: int, c: Coeff = 1) -> "Scalar":
        return cls._raw(((e, _norm(Fraction(c) if not isinstance(c, int) else c)),) if c else ())

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> dict[int, Coeff]:
        return dict(self._terms)

    def items(self):
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and self._terms[0][0] == 0)

    def is_unit(self) -> bool:
        """True for nonzero monomials ``c q^e`` (the units of the Laurent ring)."""
        return len(self._terms) == 1

    def constant(self) -> Coeff:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self._terms[0][1] if self._terms else 0

    def min_exp(self) -> int:
        return self._terms[0][0]

    def max_exp(self) -> int:
        return self._terms[-1][0]

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == Scalar(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    # -- ring operations -------------------------------------------------
    @staticmethod
    def coerce(x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return _const(x)
        if isinstance(x, _RationalABC):
            return _const(Fraction(x))
        raise TypeError(f"cannot use {type(x).__name__} as a Scalar")

    def __add__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        acc = dict(self._terms)
        for e, c in other._terms:
            v = acc.get(e, 0) + c
            if v:
                acc[e] = v
            else:
                acc.pop(e, None)
        return Scalar._raw(tuple(sorted((e, _norm(c)) for e, c in acc.items())))

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(tuple((e, -c) for e, c in self._terms))

    def __sub__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return Scalar._raw(tuple((e, _norm(c * other)) for e, c in self._terms))
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if not self._terms or not other._terms:
            return ZERO
        if len(other._terms) == 1:
            f, d = other._terms[0]
            return Scalar._raw(tuple((e + f, _norm(c * d)) for e, c in self._terms))
        if len(self._terms) == 1:
            return other * self
        acc: dict[int, Coeff] = {}
        for e, c in self._terms:
            for f, d in other._terms:
                acc[e + f] = acc.get(e + f, 0) + c * d
        return Scalar._raw(tuple(sorted((e, _norm(c)) for e, c in acc.items() if c)))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_unit():
                raise NotDivisible(f"{self} is not invertible in the Laurent ring")
            (e, c), = self._terms
            return Scalar.q_power(e * k, Fraction(1) / Fraction(c) ** (-k))
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def exact_div(self, other) -> "Scalar":
        """Divide in the Laurent ring; raise :class:`NotDivisible` on a remainder."""
        other = Scalar.coerce(other)
        if not other._terms:
            raise ZeroDivisionError("division by the zero Scalar")
        if not self._terms:
            return ZERO
        quot, rem = _poly_divmod(self, other)
        if rem:
            raise NotDivisible(f"{other} does not divide {self}")
        return quot

    def __truediv__(self, other):
        return self.exact_div(other)

    def divides(self, other) -> bool:
        try:
            Scalar.coerce(other).exact_div(self)
        except NotDivisible:
            return False
        return True

    # -- evaluation -------------------------------------------------------
    def eval_at(self, q0) -> Coeff:
        """Substitute ``q := q0`` exactly."""
        q0 = Fraction(q0)
        if q0 == 0:
            if self._terms and self._terms[0][0] < 0:
                raise ZeroAtPole(f"{self} has a pole at q = 0")
            return self._terms[0][1] if self._terms and self._terms[0][0] == 0 else 0
        total = Fraction(0)
        for e, c in self._terms:
            total += c * q0 ** e
        return _norm(total)

    def substitute_q(self, k: int) -> "Scalar":
        """Return ``self(q**k)``."""
        return Scalar((e * k, c) for e, c in self._terms)

    # -- text -------------------------------------------------------------
    def to_text(self) -> str:
        """Canonical form, increasing exponent: ``1 + 2*q^2 - q^4``."""
        if not self._terms:
            return "0"
        out = []
        for i, (e, c) in enumerate(self._terms):
            body = _term_text(e, abs(c))
            if i == 0:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append((" - " if c < 0 else " + ") + body)
        return "".join(out)

    def to_compact(self) -> str:
        """Decreasing exponent without spaces, e.g. ``q^2-1``; used inside parentheses."""
        if not self._terms:
            return "0"
        out = []
        for i, (e, c) in enumerate(reversed(self._terms)):
            body = _term_text(e, abs(c))
            if i == 0:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append(("-" if c < 0 else "+") + body)
        return "".join(out)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"Scalar({self.to_text()!r})"


def _term_text(e: int, c: Coeff) -> str:
    if e == 0:
        return str(c)
    qp = "q" if e == 1 else f"q^{e}"
    return qp if c == 1 else f"{c}*{qp}"


def _const(c: Coeff) -> Scalar:
    return Scalar._raw(((0, _norm(c)),)) if c else ZERO


ZERO = Scalar._raw(())
ONE = Scalar._raw(((0, 1),))
Q = Scalar._raw(((1, 1),))


# -- polynomial helpers (Laurent -> ordinary polynomials) --------------------

def _poly_divmod(a: Scalar, b: Scalar) -> tuple[Scalar, Scalar]:
    """Division of Laurent polynomials: b's lowest power of q is a unit."""
    shift = b.min_exp()
    bt = [(e - shift, c) for e, c in b.items()]
    bdeg, blead = bt[-1]
    rem = {e: Fraction(c) for e, c in a.items()}
    quot: dict[int, Fraction] = {}
    low = a.min_exp()
    # Work top-down; stop once the remainder's degree drops below low + bdeg.
    while rem:
        top = max(rem)
        if top - bdeg < low:
            break
        f = rem[top] / blead
        d = top - bdeg
        quot[d] = quot.get(d, 0) + f
        for e, c in bt:
            k = e + d
            v = rem.get(k, 0) - f * c
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return Scalar(quot).__mul__(Scalar.q_power(-shift)), Scalar(rem)


def _strip(s: Scalar) -> Scalar:
    """Remove the unit factor: lowest exponent 0, top coefficient 1."""
    if not s:
        return s
    lead = Fraction(s.items()[-1][1])
    return Scalar((e - s.min_exp(), Fraction(c) / lead) for e, c in s.items())


def poly_gcd(a: Scalar, b: Scalar) -> Scalar:
    """Monic gcd in Q[q, 1/q] (defined up to units; returned normalized)."""
    a, b = _strip(a), _strip(b)
    while b:
        # plain polynomial remainder in Q[q]
        rem = {e: Fraction(c) for e, c in a.items()}
        bdeg, blead = b.max_exp(), Fraction(b.items()[-1][1])
        while rem and max(rem) >= bdeg:
            top = max(rem)
            f = rem[top] / blead
            for e, c in b.items():
                k = e + top - bdeg
                v = rem.get(k, 0) - f * c
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        a, b = b, _strip(Scalar(rem))
    return _strip(a) if a else a


class ScalarQuotient:
    """Reduced fraction of two Scalars.

    Used for ``n_hat`` and for fitted multiplicative factors; it is not a
    general rational-function field, just enough arithmetic for those.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=ONE):
        num, den = Scalar.coerce(num), Scalar.coerce(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num, self.den = ZERO, ONE
            return
        g = poly_gcd(num, den)
        num, den = num.exact_div(g), den.exact_div(g)
        # make den have lowest exponent 0 and top coefficient 1
        unit = Scalar.q_power(den.min_exp(), den.items()[-1][1])
        self.num = num.exact_div(unit)
        self.den = den.exact_div(unit)

    @staticmethod
    def coerce(x) -> "ScalarQuotient":
        return x if isinstance(x, ScalarQuotient) else ScalarQuotient(x)

    def is_scalar(self) -> bool:
        return self.den == ONE

    def __eq__(self, other):
        try:
            other = ScalarQuotient.coerce(other)
        except TypeError:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        other = ScalarQuotient.coerce(other)
        return ScalarQuotient(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return ScalarQuotient(-self.num, self.den)

    def __sub__(self, other):
        return self + (-ScalarQuotient.coerce(other))

    def __rsub__(self, other):
        return ScalarQuotient.coerce(other) - self

    def __mul__(self, other):
        other = ScalarQuotient.coerce(other)
        return ScalarQuotient(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = ScalarQuotient.coerce(other)
        return ScalarQuotient(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return ScalarQuotient.coerce(other) / self

    def __bool__(self):
        return bool(self.num)

    def eval_at(self, q0) -> Coeff:
        d = self.den.eval_at(q0)
        if d == 0:
            raise ZeroAtPole(f"denominator {self.den} vanishes at q = {q0}")
        return _norm(Fraction(self.num.eval_at(q0)) / d)

    def to_text(self) -> str:
        if self.den == ONE:
            return self.num.to_text()
        num = self.num.to_compact() if self.num.is_unit() else f"({self.num.to_compact()})"
        return f"{num}/({self.den.to_compact()})"

    __str__ = to_text

    def __repr__(self):
        return f"ScalarQuotient({self.to_text()!r})"


# -- q-combinatorics ----------------------------------------------------------

def _check_nonneg(*ns: int) -> None:
    for n in ns:
        if not isinstance(n, int) or n < 0:
            raise OutOfRange(f"expected a nonnegative integer, got {n!r}")


@lru_cache(maxsize=None)
def q_number(n: int) -> Scalar:
    """``{n} = (1 - q^(2n)) / (1 - q^2) = 1 + q^2 + ... + q^(2n-2)``."""
    _check_nonneg(n)
    return Scalar._raw(tuple((2 * i, 1) for i in range(n)))


@lru_cache(maxsize=None)
def q_factorial(n: int) -> Scalar:
    _check_nonneg(n)
    out = ONE
    for i in range(1, n + 1):
        out = out * q_number(i)
    return out


@lru_cache(maxsize=None)
def q_binomial(n: int, k: int) -> Scalar:
    """Gaussian binomial in base ``q^2``.

    Built from ``[n, k] = [n-1, k-1] + q^(2k) [n-1, k]``; the test suite
    checks it against ``{n}! / ({k}! {n-k}!)`` by exact division.
    """
    _check_nonneg(n, k)
    if k > n:
        raise OutOfRange(f"q_binomial({n}, {k}): k exceeds n")
    if k == 0 or k == n:
        return ONE
    return q_binomial(n - 1, k - 1) + Scalar.q_power(2 * k) * q_binomial(n - 1, k)


def multinomial(total: int, parts: Iterable[int]) -> int:
    parts = list(parts)
    _check_nonneg(total, *parts)
    if sum(parts) != total:
        raise PartsMismatch(f"parts {parts} do not sum to {total}")
    out = factorial(total)
    for p in parts:
        out //= factorial(p)
    return out


def n_hat(n: int) -> ScalarQuotient:
    """``{n}{n+1} / {2n+2}`` as a reduced quotient."""
    _check_nonneg(n)
    return ScalarQuotient(q_number(n) * q_number(n + 1), q_number(2 * n + 2))
