"""Independent reference computations used to cross-check the library."""
import itertools

import numpy as np


def naive_contract(tensor, x):
    """m-nested-loop contraction, deliberately kept free of numpy reductions."""
    m, n = tensor.order, tensor.dim
    arr = tensor.array
    out = np.zeros(n)
    for i in range(n):
        total = 0.0
        for idx in itertools.product(range(n), repeat=m - 1):
            term = arr[(i, *idx)]
            for j in idx:
                term *= x[j]
            total += term
        out[i] = total
    return out


def naive_row_sums(tensor):
    m, n = tensor.order, tensor.dim
    arr = tensor.array
    sums = np.zeros(n)
    for i in range(n):
        total = 0.0
        for idx in itertools.product(range(n), repeat=m - 1):
            total += arr[(i, *idx)]
        sums[i] = total
    return sums


def grid_min_residual(tensor, q, radius, points=2001, chunk=250_000):
    """Exhaustive complementarity-residual scan over [0, radius]^2 (dim 2 only)."""
    assert tensor.dim == 2 and tensor.order == 3
    arr = tensor.array
    axis = np.linspace(0.0, radius, points)
    g1, g2 = np.meshgrid(axis, axis, indexing="ij")
    grid = np.column_stack([g1.ravel(), g2.ravel()])
    best = np.inf
    for lo in range(0, len(grid), chunk):
        block = grid[lo : lo + chunk]
        values = np.einsum("ijk,pj,pk->pi", arr, block, block)
        w = q[None, :] + values
        residuals = np.max(np.abs(np.minimum(block, w)), axis=1)
        best = min(best, float(residuals.min()))
    return best


def radial_grid_oracle(tensor, q, resolution=24):
    """Coarse complementarity search: scan simplex directions, solve radially.

    Along a fixed direction u the slack is w(t) = q + t**(m-1) * c with
    c the contraction at u, so each coordinate's zero crossing has the
    closed form t_k = ((-q_k) / c_k) ** (1/(m-1)); the best point per
    direction sits at one of those crossings (refined by a short golden
    section sweep between them).  Returns (best_x, best_residual).
    """
    from btensor.structure import simplex_lattice

    m = tensor.order
    best_x, best_res = None, np.inf

    def ray_residual(u, c, t):
        x = t * u
        w = q + t ** (m - 1) * c
        return float(np.max(np.abs(np.minimum(x, w))))

    for u in simplex_lattice(resolution, tensor.dim):
        c = naive_contract(tensor, u)
        candidates = [0.0]
        for k in range(tensor.dim):
            if u[k] > 0 and c[k] != 0 and -q[k] / c[k] > 0:
                candidates.append(float((-q[k] / c[k]) ** (1.0 / (m - 1))))
        lo = 0.0
        hi = 1.5 * max(candidates) + 1e-6
        ratio = (np.sqrt(5.0) - 1.0) / 2.0
        a, b = lo, hi
        c1 = b - ratio * (b - a)
        c2 = a + ratio * (b - a)
        f1, f2 = ray_residual(u, c, c1), ray_residual(u, c, c2)
        for _ in range(80):
            if f1 <= f2:
                b, c2, f2 = c2, c1, f1
                c1 = b - ratio * (b - a)
                f1 = ray_residual(u, c, c1)
            else:
                a, c1, f1 = c1, c2, f2
                c2 = a + ratio * (b - a)
                f2 = ray_residual(u, c, c2)
        candidates.append(0.5 * (a + b))
        for t in candidates:
            res = ray_residual(u, c, t)
            if res < best_res:
                best_res, best_x = res, t * u
    return best_x, best_res
