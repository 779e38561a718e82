"""The text syntax: parse, normalize, print, and parse again."""
from opident import make_context, parse, print_expr
from opident.errors import ExprSyntaxError, IndexOutOfRange

ql = make_context(1, 0, "qline")
e = parse("(x^2*Dx - qnum(2)*x)^3", ql)
text = print_expr(e)
print(text)
print("round trip:", parse(text, ql).normalize() == e)

qp = make_context(2, 0, "qplane")
print(print_expr(parse("x*y - q*y*x", qp)))        # 0
print(print_expr(parse("q^-1*Dy*Dx", qp)))

for bad in ("x*", "x3*Dx"):
    try:
        parse(bad, qp)
    except (ExprSyntaxError, IndexOutOfRange) as exc:
        print(f"{bad!r}: {exc}")
