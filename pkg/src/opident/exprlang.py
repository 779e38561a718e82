"""Surface syntax for scalars and operator expressions.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := '-' factor | atom ('^' ['-'] uint)?
    atom   := uint | rational | 'q' | 'qnum(' uint ')' | 'qbinom(' uint ',' uint ')'
            | generator | '(' expr ')'

``*`` is the (noncommutative) product in source order.  A negative exponent
is accepted only on a unit scalar such as ``q^-1``.  Generator names depend
on the context: ``x``, ``y`` or ``x1``..``xk`` for variables, ``theta`` /
``theta1``.. for Grassmann variables, ``Px``/``P1`` (alias ``∂x``) for
classical derivatives, ``Dx``/``D1`` for Jackson derivatives and
``Ptheta``/``Ptheta1`` for Grassmann derivatives.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import ExprSyntaxError, IndexOutOfRange, UnknownGenerator
from .opalg import AlgebraContext, Generator, GenKind, OperatorExpr, make_context, power, sort_key
from .scalar import ONE, Scalar, q_binomial, q_number

_SCALAR_CTX = make_context(0, 0)

# -- AST ------------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class QSym:
    pass


@dataclass(frozen=True)
class QNum:
    n: int


@dataclass(frozen=True)
class QBinom:
    n: int
    k: int


@dataclass(frozen=True)
class Gen:
    name: str
    line: int
    column: int


@dataclass(frozen=True)
class Neg:
    arg: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str  # '+', '-', '*'
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int
    line: int
    column: int


Node = Union[Num, QSym, QNum, QBinom, Gen, Neg, BinOp, Pow]

# -- lexer ------------------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<rational>\d+/\d+)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_∂][A-Za-z_0-9]*)
  | (?P<op>[-+*^(),])
""", re.VERBOSE)


@dataclass
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> list:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "ws":
            for i, ch in enumerate(m.group(), start=pos):
                if ch == "\n":
                    line, line_start = line + 1, i + 1
        else:
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


# -- parser -----------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, msg: str, tok: Token = None):
        tok = tok or self.tok
        raise ExprSyntaxError(msg, tok.line, tok.column)

    def accept(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str):
        if not self.accept(text):
            found = self.tok.text or "end of input"
            self.error(f"expected {text!r}, found {found!r}")

    def uint(self) -> int:
        if self.tok.kind != "int":
            self.error("expected a nonnegative integer")
        v = int(self.tok.text)
        self.i += 1
        return v

    def parse(self) -> Node:
        if self.tok.kind == "eof":
            self.error("empty expression")
        node = self.expr()
        if self.tok.kind != "eof":
            self.error(f"unexpected {self.tok.text!r}")
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.tok.text
            self.i += 1
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.accept("*"):
            node = BinOp("*", node, self.factor())
        return node

    def factor(self) -> Node:
        if self.accept("-"):
            return Neg(self.factor())
        node = self.atom()
        tok = self.tok
        if self.accept("^"):
            sign = -1 if self.accept("-") else 1
            node = Pow(node, sign * self.uint(), tok.line, tok.column)
        return node

    def atom(self) -> Node:
        tok = self.tok
        if tok.kind == "int":
            self.i += 1
            return Num(Fraction(int(tok.text)))
        if tok.kind == "rational":
            self.i += 1
            num, den = tok.text.split("/")
            if int(den) == 0:
                self.error("zero denominator", tok)
            return Num(Fraction(int(num), int(den)))
        if self.accept("("):
            node = self.expr()
            self.expect(")")
            return node
        if tok.kind == "name":
            self.i += 1
            if tok.text == "q":
                return QSym()
            if tok.text == "qnum":
                self.expect("(")
                n = self.uint()
                self.expect(")")
                return QNum(n)
            if tok.text == "qbinom":
                self.expect("(")
                n = self.uint()
                self.expect(",")
                k = self.uint()
                self.expect(")")
                if k > n:
                    self.error(f"qbinom({n}, {k}) needs k <= n", tok)
                return QBinom(n, k)
            return Gen(tok.text, tok.line, tok.column)
        found = tok.text or "end of input"
        self.error(f"unexpected {found!r}")


def parse_ast(text: str) -> Node:
    return _Parser(text).parse()


# -- lowering ---------------------------------------------------------------------

_GEN = re.compile(r"^(?P<prefix>P|D|∂)?(?P<body>theta(?P<tidx>\d*)|x|y|(?P<vidx>\d+)|x(?P<xidx>\d+))?$")


def resolve_generator(name: str, ctx: AlgebraContext, line: int = 1, column: int = 1) -> Generator:
    m = _GEN.match(name)
    if m is None or (m.group("prefix") is None and m.group("body") is None):
        raise UnknownGenerator(f"unknown generator {name!r} (line {line}, column {column})")
    prefix, body = m.group("prefix"), m.group("body")
    if body is None:
        if ctx.n_boson != 1 or prefix is None:
            raise UnknownGenerator(f"bare {name!r} is ambiguous in {ctx}")
        index, grass = 1, False
    elif body.startswith("theta"):
        grass = True
        index = int(m.group("tidx")) if m.group("tidx") else 1
    else:
        grass = False
        if body in ("x", "y"):
            index = 1 if body == "x" else 2
        elif m.group("xidx"):
            index = int(m.group("xidx"))
        else:
            if prefix is None:
                raise UnknownGenerator(f"unknown generator {name!r}")
            index = int(m.group("vidx"))
    if grass:
        kind = GenKind.GRASSMANN_VAR if prefix is None else GenKind.GRASSMANN_DERIV
        if prefix == "D":
            raise UnknownGenerator("Grassmann derivatives are written Ptheta")
        limit = ctx.n_grassmann
    else:
        limit = ctx.n_boson
        if prefix is None:
            kind = GenKind.BOSON_VAR
        elif prefix == "∂":
            kind = ctx.deriv_kind
        else:
            kind = GenKind.JACKSON_DERIV if prefix == "D" else GenKind.CLASSICAL_DERIV
            if kind is not ctx.deriv_kind:
                what = "Jackson" if prefix == "D" else "classical"
                raise UnknownGenerator(f"{what} derivative {name!r} is not available in {ctx}")
    if not 1 <= index <= limit:
        raise IndexOutOfRange(f"{name!r} refers to index {index}, context {ctx} has {limit} "
                              f"(line {line}, column {column})")
    return Generator(kind, index)


def lower(node: Node, ctx: AlgebraContext) -> Union[Scalar, OperatorExpr]:
    """Lower an AST; pure scalar subtrees stay Scalars."""
    if isinstance(node, Num):
        return Scalar(node.value)
    if isinstance(node, QSym):
        return Scalar.q_power(1)
    if isinstance(node, QNum):
        return q_number(node.n)
    if isinstance(node, QBinom):
        return q_binomial(node.n, node.k)
    if isinstance(node, Gen):
        return ctx.gen(resolve_generator(node.name, ctx, node.line, node.column))
    if isinstance(node, Neg):
        return -lower(node.arg, ctx)
    if isinstance(node, Pow):
        base = lower(node.base, ctx)
        if isinstance(base, Scalar):
            if node.exponent < 0 and not base.is_unit():
                raise ExprSyntaxError("negative exponent on a non-unit scalar", node.line, node.column)
            return base ** node.exponent
        if node.exponent < 0:
            raise ExprSyntaxError("negative exponent on an operator", node.line, node.column)
        return power(base, node.exponent)
    a, b = lower(node.left, ctx), lower(node.right, ctx)
    if node.op == "*":
        if isinstance(a, Scalar) and isinstance(b, Scalar):
            return a * b
        if isinstance(a, Scalar):
            return b.scale(a)
        if isinstance(b, Scalar):
            return a.scale(b)
        return a * b
    if isinstance(a, Scalar) and isinstance(b, Scalar):
        return a + b if node.op == "+" else a - b
    a = a if isinstance(a, OperatorExpr) else ctx.scalar(a)
    b = b if isinstance(b, OperatorExpr) else ctx.scalar(b)
    return a + b if node.op == "+" else a - b


def parse(text: str, ctx: AlgebraContext) -> OperatorExpr:
    """Parse to an operator expression; products stay unnormalized, powers are expanded."""
    out = lower(parse_ast(text), ctx)
    return ctx.scalar(out) if isinstance(out, Scalar) else out


def parse_scalar(text: str) -> Scalar:
    out = lower(parse_ast(text), _SCALAR_CTX)
    if not isinstance(out, Scalar):
        raise ExprSyntaxError("expected a scalar expression")
    return out


# -- printer ----------------------------------------------------------------------

def monomial_text(ctx: AlgebraContext, exps: tuple) -> str:
    parts = []
    for pos, k in enumerate(exps):
        if k:
            name = ctx.name(pos)
            parts.append(name if k == 1 else f"{name}^{k}")
    return "*".join(parts)


def _term(c: Scalar, mono: str):
    """Return (negative, body) for one printed term."""
    if c.is_unit():
        (e, v), = c.items()
        neg = v < 0
        mag = Scalar.q_power(e, abs(v))
        if mono and mag == ONE:
            return neg, mono
        return neg, mag.to_text() + ("*" + mono if mono else "")
    body = "(" + c.to_compact() + ")"
    return False, body + ("*" + mono if mono else "")


def print_expr(e: OperatorExpr) -> str:
    e = e.normalize()
    items = sorted(e.terms.items(), key=lambda kv: sort_key(e.ctx, kv[0]))
    if not items:
        return "0"
    out = []
    for i, (m, c) in enumerate(items):
        neg, body = _term(c, monomial_text(e.ctx, m))
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def print_scalar(s: Scalar) -> str:
    return s.to_text()
