"""
Operator norm brackets
======================

Two degree-one homogeneous maps come with a classified tensor: the 2-norm
rescaled contraction (T) and the componentwise-root contraction (F, even
order).  Any tensor admits row-absolute-sum upper bounds on their operator
norms; class members get far simpler diagonal-only upper bounds plus lower
bounds, and a seeded multistart ascent confirms the bracket empirically.
"""
import math

from btensor import (
    bound_report,
    estimate_norm,
    f_norm_bounds,
    general_upper_bound,
    load_example,
    t_norm_bounds,
)

ex41 = load_example("ex41")
ex42 = load_example("ex42")

# Headline comparison on ex41: the diagonal-only upper bound (54) is
# tighter than the general row-absolute-sum bound (57) for the max norm.
general = general_upper_bound(ex41, "T", math.inf)
lower, upper = t_norm_bounds(ex41, math.inf, "B")
print(f"ex41, map T, max norm: {lower} <= |T| <= {upper}  (general bound {general})")

# The same effect for the root map at p = 1.
f_general = general_upper_bound(ex41, "F", 1.0)
f_lower, f_upper = f_norm_bounds(ex41, 1.0, "B")
print(f"ex41, map F, 1-norm:  {f_lower:.4f} <= |F| <= {f_upper:.4f}  (general bound {f_general:.4f})")

# On ex42 the diagonal upper bound is 48 for every p, while the general
# bound stays above 64 * 4^(3/p).
for p in (1.0, 2.0, 4.0):
    _, upper = t_norm_bounds(ex42, p, "B")
    general = general_upper_bound(ex42, "T", p)
    print(f"ex42, map T, p={p:g}: diagonal bound {upper:.6f} vs general {general:.2f}")

# An empirical estimate has to land inside the bracket.  The estimator is
# deterministic in its seed and only ever reports attained values, so it
# never overshoots the true norm.
estimate, witness = estimate_norm(ex41, "T", math.inf, samples=256, ascent_steps=40, seed=7)
print(f"\nempirical |T| estimate on ex41: {estimate:.6f} at witness {witness.round(4)}")

# bound_report bundles everything and enforces the sandwich.
report = bound_report(ex42, "T", 2.0, samples=128, ascent_steps=30, seed=7)
print(
    f"ex42 report, p=2: {report.b_lower:.4f} <= {report.empirical_estimate:.4f}"
    f" <= min({report.general_upper:.2f}, {report.b_upper:.2f})"
)
