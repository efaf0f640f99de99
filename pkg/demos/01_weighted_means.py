"""Weighted means, nested terms and their convex-combination normal form."""
import numpy as np

from baryalg import check_axioms, eval_term, flatten, left_comb, parse, print_term
from baryalg.baryterm import comb_from_combination, complement, dual_mul

np.set_printoptions(precision=6, suppress=True)

# A weighted mean p(a, b) sits a fraction p of the way from a to b.
a, b, c = np.array([0.0, 0.0]), np.array([4.0, 0.0]), np.array([0.0, 4.0])
print("complement of 0.25:", complement(0.25))
print("dual product 0.5 o 0.5:", dual_mul(0.5, 0.5))

# The three laws hold numerically for any weights in (0, 1).
report = check_axioms(0.3, 0.6, a, b, c)
print("axioms hold:", report.all_passed)

# Terms are written as [p](s, t) with leaves v1, v2, ...
t = parse("[0.5]([0.25](v1, v2), v3)")
print("canonical form:", print_term(t))
print("value on a, b, c:", eval_term(t, [a, b, c]))

# Flattening gives the coefficients of the same point as a convex combination.
cc = flatten(t, 3)
print("coefficients:", cc.coefficients)
print("combination applied:", cc.combine([a, b, c]))

# Going back: a left comb reproduces the combination.
comb = comb_from_combination(cc)
print("left comb:", print_term(comb))
print("same coefficients:", np.allclose(flatten(comb, 3).coefficients, cc.coefficients))

# Left combs can also be built straight from weights.
print("comb of (0.5, 1/3):", print_term(left_comb([0.5, 1 / 3])))
