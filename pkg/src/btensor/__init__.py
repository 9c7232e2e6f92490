"""Structured-tensor toolkit: classification, operator-norm and eigenvalue
bounds, and tensor complementarity solving, all verifiable at desk scale."""

from .core import (
    DimensionMismatch,
    Tensor,
    UnsupportedOrder,
    contract,
    contract_batch,
    contraction_jacobian,
    homogeneous_form,
    is_entry_symmetric,
    root_map,
    scaled_map,
    vector_norm,
    vector_power,
)
from .datasets import load_example
from .opnorms import (
    NormBoundReport,
    SandwichViolation,
    bound_report,
    estimate_norm,
    f_norm_bounds,
    general_upper_bound,
    t_norm_bounds,
)
from .spectral import (
    EigenBoundReport,
    EigenPair,
    eigenvalue_bounds,
    find_h_eigenpairs,
    find_z_eigenpairs,
    h_residual,
    verify_eigen_bounds,
    z_residual,
)
from .structure import (
    ClassificationError,
    ClassificationReport,
    DominanceDiagnostics,
    GridTooLarge,
    SemiPositivityCertificate,
    classify,
    membership_diagnostics,
    random_b0_tensor,
    random_b_tensor,
    random_tensor,
    row_profile,
    semipositivity_certificate,
    simplex_lattice,
)
from .tcp import (
    SolutionBoundCertificate,
    TcpInstance,
    TcpOutcome,
    boundedness_probe,
    residual as tcp_residual,
    solution_lower_bounds,
    solve as tcp_solve,
    verify_solution_bounds,
)
from .tensorio import (
    TensorFormatError,
    dump_tensor,
    dumps_tensor,
    load_tensor,
    loads_tensor,
    tensor_from_obj,
    tensor_to_obj,
)

__version__ = "0.1.0"
