"""Normal ordering in the Weyl algebra, with Grassmann variables and on the quantum plane."""
from opident import make_context, parse, print_expr, rewrite

weyl = make_context(1, 0, "classical")
print(print_expr(parse("Px*x", weyl)))          # product rule
print(print_expr(parse("Px^2*x^2", weyl)))

# a Grassmann pair: theta^2 = 0 and Ptheta*theta = 1 - theta*Ptheta
g = make_context(1, 2, "grassmann")
print(print_expr(parse("theta1*theta1", g)))
print(print_expr(parse("theta2*theta1 + theta1*theta2", g)))
print(print_expr(parse("Ptheta1*theta1", g)))

# quantum plane: x y = q y x, and the Jackson-type calculus
qp = make_context(2, 0, "qplane")
for src in ("y*x", "Dx*x", "Dy*y", "Dx*y", "Dy*Dx"):
    print(f"{src:6s} ->", print_expr(parse(src, qp)))

# the memoized engine and a plain rewriting loop agree
w = (2, 0, 3, 1, 2, 0)  # Dx x Dy y Dx x
print(rewrite(qp, w, "leftmost") == qp.word(w).normalize())
