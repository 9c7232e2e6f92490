"""
Classifying structured tensors
==============================

A tensor belongs to the strict class when every row sum is positive and the
row average beats every off-diagonal entry of the row.  This walk-through
classifies the two bundled tensors, inspects the per-row evidence, and
checks the sampled semi-positivity certificate that membership implies.
"""
import numpy as np

from btensor import (
    Tensor,
    classify,
    load_example,
    membership_diagnostics,
    random_b_tensor,
    semipositivity_certificate,
)

# The first bundled tensor: order 4, dimension 3, mostly 2.0 entries.
ex41 = load_example("ex41")
report = classify(ex41)
print("ex41 verdict:", report.verdict)
print("  row sums:  ", report.row_sums)
print("  thresholds:", report.thresholds.round(4), "(row sum / n^(m-1))")
print("  offdiag max:", report.max_offdiag)

# Three dominance facts follow from membership; all rows must pass.
diagnostics = membership_diagnostics(ex41, strict=True)
print("  diagnostics all hold:", diagnostics.all_hold())

# Membership guarantees strict semi-positivity: on every simplex direction
# some supported coordinate of the contraction stays positive.  The grid
# certificate samples all rational directions at the given resolution.
certificate = semipositivity_certificate(ex41, mode="strict", resolution=12)
print("  semi-positivity violated:", certificate.violated)
print("  worst direction:", certificate.worst_point.round(4), "value", round(certificate.worst_value, 4))

# Break membership on purpose: one negative diagonal entry sinks a row sum.
broken = Tensor.diagonal_tensor(3, 3, [1.0, -1.0, 1.0])
bad = classify(broken)
print("\nnegative diagonal verdict:", bad.verdict)
for witness in bad.witnesses:
    print("  witness row", witness.row, "reason:", witness.reason)

# Generated members are classified by construction, at any seed.
rng = np.random.default_rng(0)
generated = random_b_tensor(4, 3, rng)
print("\ngenerated member verdict:", classify(generated).verdict)
