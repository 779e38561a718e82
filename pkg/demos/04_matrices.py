"""Finite-dimensional representations: matrices on polynomials of degree <= n."""
import numpy as np

from opident import build_q_sl2, build_sl2, matrix_of
from opident.polyrep import PolyElement, apply

n = 3
plus, zero, minus = build_sl2(n)
M = matrix_of(plus, n)
print(M.to_text())
print("nilpotency index:", M.nilpotency_index())

# numeric view at q = 1 for the classical triple
num = np.array([[float(s.eval_at(1)) for s in row] for row in M.entries])
print(num)
print("eigenvalues of J0:", np.diag(np.array(
    [[float(s.eval_at(1)) for s in row] for row in matrix_of(zero, n).entries])))

# the q version: entries are polynomials in q
Mq = matrix_of(build_q_sl2(n).plus, n)
print(Mq.to_text())
print("nilpotency index:", Mq.nilpotency_index())

# one step of the raising operator on x^i gives (i - n) x^(i+1)
for i in range(n + 1):
    img = apply(plus, PolyElement.monomial(plus.ctx, (i,)))
    print(f"J+ x^{i} =", img)
