"""
Eigenpair search and diagonal-only spectra bounds
=================================================

Two real eigenpair kinds: H-pairs solve ``A x^(m-1) = lambda x^[m-1]``
componentwise, Z-pairs solve ``A x^(m-1) = mu x (x.x)^((m-2)/2)``.  Both
searches are seeded multistart heuristics, so they find a subset of the
true pairs; the point of this demo is that every pair found lands inside
bounds computed from the diagonal entries alone.
"""
import numpy as np

from btensor import (
    Tensor,
    eigenvalue_bounds,
    find_h_eigenpairs,
    find_z_eigenpairs,
    load_example,
    random_b_tensor,
    verify_eigen_bounds,
)

# A diagonal tensor is the fully understood case: H-values are exactly the
# diagonal entries, Z-values are reciprocals of the support size.
diag = Tensor.diagonal_tensor(4, 2, [1.0, 2.0])
print("diagonal tensor H-values:", sorted({round(p.value, 6) for p in find_h_eigenpairs(diag, starts=24, seed=0)}))
print("unit diagonal Z-values:  ", sorted({round(p.value, 6) for p in find_z_eigenpairs(Tensor.diagonal_tensor(4, 2), starts=24, seed=0)}))

# The bundled example: bounds need nothing but the diagonal (6, 5, 6).
ex41 = load_example("ex41")
bounds = eigenvalue_bounds(ex41, "B")
print(f"\nex41 H bound {bounds.h_bound:.4f}, Z bound {bounds.z_bound}")

h_pairs = find_h_eigenpairs(ex41, starts=64, seed=1)
z_pairs = find_z_eigenpairs(ex41, starts=64, seed=1)
print("found H values:", [round(p.value, 4) for p in h_pairs])
print("found Z values:", [round(p.value, 4) for p in z_pairs])
print("max residual:", max(p.residual for p in h_pairs + z_pairs))

report = verify_eigen_bounds(ex41, h_pairs + z_pairs, "B")
print(f"all {report.pairs_checked} pairs within bounds:", report.all_within)

# The same falsification run on a generated, non-symmetric member, where
# the Z search switches to its Newton formulation automatically.
rng = np.random.default_rng(5)
member = random_b_tensor(4, 3, rng)
pairs = find_h_eigenpairs(member, starts=64, seed=2) + find_z_eigenpairs(member, starts=64, seed=2)
report = verify_eigen_bounds(member, pairs, "B")
print(
    f"\ngenerated member: {report.pairs_checked} pairs, "
    f"max|H| {report.max_abs_h:.3f} < {report.h_bound:.3f}, "
    f"max|Z| {report.max_abs_z:.3f} < {report.z_bound:.3f}, within={report.all_within}"
)
