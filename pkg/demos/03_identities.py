"""The collapse of (raising operator)^(n+1) to a single derivative order.

For the sl2 raising operator x^2 d - n x the (n+1)-th power is x^(2n+2) d^(n+1).
The same happens for two variables, for a Grassmann partner, and with q-deformation.
"""
from opident import IdentitySpec, print_expr, verify_identity

for n in range(4):
    r = verify_identity(IdentitySpec("eq1", n))
    print(f"n={n}: {print_expr(r.lhs_normal)}  equal={r.equal}")

print()
r = verify_identity(IdentitySpec("eq2", 2))
print("two variables, n=2:\n  ", print_expr(r.lhs_normal))

r = verify_identity(IdentitySpec("eq2", 2, grassmann=True))
print("with a Grassmann variable, n=2 (only two terms survive):\n  ", print_expr(r.lhs_normal))

r = verify_identity(IdentitySpec("eq3", 1, 3))
print("three variables, n=1:\n  ", print_expr(r.lhs_normal))

print()
for n in range(3):
    r = verify_identity(IdentitySpec("eq4", n))
    print(f"q-line n={n}: {print_expr(r.lhs_normal)}")

r = verify_identity(IdentitySpec("eq7", 1))
print("quantum plane n=1:\n  ", print_expr(r.lhs_normal))

# no closed form on the hyperplane, but the power still kills polynomials of degree <= n
for n in range(3):
    r = verify_identity(IdentitySpec("hyperplane", n, 3))
    print(f"hyperplane k=3 n={n}: annihilates P_n = {r.equal}, terms = {r.term_count}")
