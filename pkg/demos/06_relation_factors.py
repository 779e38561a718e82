"""Fitting the scalar factors in the q-deformed sl2 relations.

Only the product alpha_plus * alpha_minus is fixed by the relations, so
alpha_minus = 1 is chosen and the rest follows.
"""
from opident import fit_relations5

for n in range(4):
    fit = fit_relations5(n)
    print(f"n={n} hold={fit.relations_hold} classical={fit.classical_limit_ok}")
    for name, v in sorted(fit.factors.items()):
        print(f"   {name:11s} = {v.to_text():40s} q=1 -> {v.eval_at(1)}")
