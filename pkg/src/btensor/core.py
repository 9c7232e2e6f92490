"""Dense hypermatrix arithmetic.

A tensor here is an order-m, dimension-n real hypermatrix stored as a dense
``(n, ..., n)`` float array.  This module provides the contraction
primitives, the componentwise power, the vector norms, and the two
degree-one positively homogeneous maps built from a tensor (the 2-norm
rescaled contraction and the componentwise-root contraction).
"""
from __future__ import annotations

import math
from itertools import permutations

import numpy as np

__all__ = [
    "Tensor",
    "DimensionMismatch",
    "UnsupportedOrder",
    "contract",
    "contract_batch",
    "contraction_jacobian",
    "homogeneous_form",
    "vector_power",
    "vector_norm",
    "scaled_map",
    "root_map",
    "is_entry_symmetric",
]

_EINSUM_LETTERS = "abcdefghijklmnopqrstuvwxy"  # 'z' reserved for the batch axis


class DimensionMismatch(ValueError):
    """Vector length does not match the tensor dimension."""


class UnsupportedOrder(ValueError):
    """Operation is only defined for even tensor order."""


class Tensor:
    """Order-m, dimension-n real hypermatrix with immutable entries.

    The flat entry order is lexicographic in the index tuple with the first
    index slowest, which is exactly the C-order raveling of the array.
    """

    __slots__ = ("array", "symmetric")

    def __init__(self, array, symmetric: bool = False):
        arr = np.array(array, dtype=float)
        if arr.ndim < 2:
            raise ValueError(f"tensor order must be at least 2, got {arr.ndim}")
        n = arr.shape[0]
        if n < 1 or any(s != n for s in arr.shape):
            raise ValueError(f"tensor axes must all have the same positive length, got {arr.shape}")
        arr.flags.writeable = False
        self.array = arr
        self.symmetric = bool(symmetric)

    @property
    def order(self) -> int:
        return self.array.ndim

    @property
    def dim(self) -> int:
        return self.array.shape[0]

    @property
    def entries(self) -> np.ndarray:
        """Flat lexicographic view of the entries, length ``dim ** order``."""
        return self.array.reshape(-1)

    @property
    def diagonal(self) -> np.ndarray:
        """The n entries with all indices equal."""
        n, m = self.dim, self.order
        idx = np.arange(n)
        return self.array[(idx,) * m]

    @classmethod
    def from_flat(cls, order: int, dim: int, entries, symmetric: bool = False) -> "Tensor":
        flat = np.asarray(entries, dtype=float).reshape(-1)
        if flat.size != dim**order:
            raise ValueError(
                f"expected {dim**order} entries for order {order}, dim {dim}, got {flat.size}"
            )
        return cls(flat.reshape((dim,) * order), symmetric=symmetric)

    @classmethod
    def diagonal_tensor(cls, order: int, dim: int, values=1.0) -> "Tensor":
        """Tensor with the given values on the all-equal-index positions, zero elsewhere."""
        if order < 2 or dim < 1:
            raise ValueError("need order >= 2 and dim >= 1")
        arr = np.zeros((dim,) * order)
        vals = np.broadcast_to(np.asarray(values, dtype=float), (dim,))
        idx = np.arange(dim)
        arr[(idx,) * order] = vals
        return cls(arr, symmetric=True)

    @classmethod
    def zeros(cls, order: int, dim: int) -> "Tensor":
        return cls(np.zeros((dim,) * order), symmetric=True)

    def scaled(self, factor: float) -> "Tensor":
        return Tensor(factor * self.array, symmetric=self.symmetric)

    def __repr__(self) -> str:
        return f"Tensor(order={self.order}, dim={self.dim})"


def _as_vector(tensor: Tensor, x) -> np.ndarray:
    v = np.asarray(x, dtype=float)
    if v.shape != (tensor.dim,):
        raise DimensionMismatch(
            f"expected a vector of length {tensor.dim}, got shape {v.shape}"
        )
    return v


def contract(tensor: Tensor, x) -> np.ndarray:
    """Contract ``x`` into every index but the first.

    Returns the vector whose i-th component is the sum over all remaining
    indices of ``a[i, i2, ..., im] * x[i2] * ... * x[im]``.
    """
    v = _as_vector(tensor, x)
    out = tensor.array
    for _ in range(tensor.order - 1):
        out = out @ v
    return out


def contract_batch(tensor: Tensor, points: np.ndarray) -> np.ndarray:
    """Row-wise :func:`contract` for a batch of vectors, shape (k, n) -> (k, n)."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != tensor.dim:
        raise DimensionMismatch(f"expected shape (k, {tensor.dim}), got {pts.shape}")
    m = tensor.order
    if m > len(_EINSUM_LETTERS):
        raise ValueError(f"order {m} exceeds the einsum contraction limit")
    letters = _EINSUM_LETTERS[:m]
    operands = ",".join("z" + c for c in letters[1:])
    subscripts = f"{letters},{operands}->z{letters[0]}"
    return np.einsum(subscripts, tensor.array, *([pts] * (m - 1)), optimize=True)


def contraction_jacobian(tensor: Tensor, x) -> np.ndarray:
    """Derivative matrix of ``x -> contract(tensor, x)``.

    Uses the exact multilinear rule: one term per contracted index slot, so
    no symmetry of the entries is assumed.
    """
    v = _as_vector(tensor, x)
    m, n = tensor.order, tensor.dim
    jac = np.zeros((n, n))
    for slot in range(1, m):
        part = np.moveaxis(tensor.array, slot, 1)
        for _ in range(m - 2):
            part = part @ v
        jac += part
    return jac


def homogeneous_form(tensor: Tensor, x) -> float:
    """Degree-m polynomial value ``x . contract(tensor, x)``."""
    v = _as_vector(tensor, x)
    return float(np.dot(v, contract(tensor, v)))


def vector_power(x, exponent: float) -> np.ndarray:
    """Componentwise power.

    Integer exponents apply the plain signed power (odd powers keep the
    sign).  Non-integer exponents require nonnegative components.
    """
    v = np.asarray(x, dtype=float)
    r = float(exponent)
    if r.is_integer():
        return v ** int(r)
    if np.any(v < 0):
        raise ValueError(f"negative component with non-integer exponent {r}")
    return v**r


def vector_norm(x, p: float = 2.0) -> float:
    """The p-norm for p >= 1, or the max-abs norm for ``p = math.inf``."""
    v = np.asarray(x, dtype=float)
    if v.ndim != 1:
        raise ValueError(f"expected a vector, got shape {v.shape}")
    if p == math.inf:
        return float(np.max(np.abs(v)))
    p = float(p)
    if p < 1:
        raise ValueError(f"norm exponent must be >= 1, got {p}")
    return float(np.linalg.norm(v, ord=p))


def scaled_map(tensor: Tensor, x) -> np.ndarray:
    """Degree-one homogeneous map: the contraction rescaled by ``|x|_2 ** (2 - m)``.

    Defined as 0 at the origin.
    """
    v = _as_vector(tensor, x)
    if not v.any():
        return np.zeros(tensor.dim)
    scale = float(np.linalg.norm(v)) ** (2 - tensor.order)
    return scale * contract(tensor, v)


def signed_root(values, k: int) -> np.ndarray:
    """Componentwise real k-th root for odd integer k, keeping the sign."""
    v = np.asarray(values, dtype=float)
    return np.sign(v) * np.abs(v) ** (1.0 / k)


def root_map(tensor: Tensor, x) -> np.ndarray:
    """Degree-one homogeneous map: componentwise (m-1)-th root of the contraction.

    Only defined for even order m; m - 1 is then odd and the real root keeps
    the sign of each component.
    """
    if tensor.order % 2:
        raise UnsupportedOrder(f"map needs an even order, got {tensor.order}")
    return signed_root(contract(tensor, x), tensor.order - 1)


def is_entry_symmetric(tensor: Tensor, limit: int = 1_000_000) -> bool:
    """Exhaustively check invariance of the entries under index permutations."""
    if tensor.dim**tensor.order > limit:
        raise ValueError("tensor too large for the exhaustive symmetry check")
    arr = tensor.array
    return all(
        np.array_equal(arr, arr.transpose(perm))
        for perm in permutations(range(tensor.order))
    )
