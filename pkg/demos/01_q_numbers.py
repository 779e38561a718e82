"""q-numbers, Gaussian binomials and the ratio n_hat.

Everything here is exact: coefficients are Fractions and q is a formal symbol.
"""
from opident import Scalar, n_hat, q_binomial, q_factorial, q_number

# {n} = 1 + q^2 + ... + q^(2n-2)
for n in range(5):
    print(f"{{{n}}} =", q_number(n).to_text())

# factorials and binomials are polynomials in q^2
print("{4}! =", q_factorial(4).to_text())
print("[4 2] =", q_binomial(4, 2).to_text())

# at q = 1 everything collapses to the integer version
print("[6 3] at q=1:", q_binomial(6, 3).eval_at(1))

# n_hat is a genuine quotient; it is kept in lowest terms
for n in range(4):
    r = n_hat(n)
    print(f"n_hat({n}) = {r.to_text()}   (q=1: {r.eval_at(1)})")

# exact division refuses to round
a = Scalar({0: 1, 4: -1})
print("(1 - q^4) / (1 - q^2) =", a.exact_div(Scalar({0: 1, 2: -1})).to_text())
