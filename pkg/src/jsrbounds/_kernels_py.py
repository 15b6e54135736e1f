"""Pure-numpy implementations of the hot kernels.

These mirror the compiled kernels in `_kernels_cy` bit-for-bit up to
floating-point associativity: same enumeration order, same closed forms,
same tie-breaking (first word in lexicographic order wins).

Norm kind codes shared with the compiled side: 0=INF, 1=ONE, 2=TWO.
"""

from __future__ import annotations

import numpy as np

KIND_INF = 0
KIND_ONE = 1
KIND_TWO = 2


def opnorms_2x2(stack: np.ndarray, kind: int) -> np.ndarray:
    """Induced operator norms of a (n, 2, 2) stack, closed form for TWO."""
    if kind == KIND_ONE:
        return np.abs(stack).sum(axis=1).max(axis=1)
    if kind == KIND_INF:
        return np.abs(stack).sum(axis=2).max(axis=1)
    # largest singular value: s^2 is the larger eigenvalue of M^T M, whose
    # trace is the Frobenius norm squared and whose determinant is det(M)^2
    f2 = (stack**2).sum(axis=(1, 2))
    det = stack[:, 0, 0] * stack[:, 1, 1] - stack[:, 0, 1] * stack[:, 1, 0]
    disc = np.maximum(f2 * f2 - 4.0 * det * det, 0.0)
    return np.sqrt(0.5 * (f2 + np.sqrt(disc)))


def spectral_radii_2x2(stack: np.ndarray) -> np.ndarray:
    """Largest eigenvalue modulus of a (n, 2, 2) stack via the quadratic
    characteristic roots."""
    tr = stack[:, 0, 0] + stack[:, 1, 1]
    det = stack[:, 0, 0] * stack[:, 1, 1] - stack[:, 0, 1] * stack[:, 1, 0]
    disc = tr * tr - 4.0 * det
    real = 0.5 * (np.abs(tr) + np.sqrt(np.maximum(disc, 0.0)))
    complex_pair = np.sqrt(np.maximum(det, 0.0))
    return np.where(disc >= 0.0, real, complex_pair)


def _opnorms_general(stack: np.ndarray, kind: int) -> np.ndarray:
    if kind == KIND_ONE:
        return np.abs(stack).sum(axis=1).max(axis=1)
    if kind == KIND_INF:
        return np.abs(stack).sum(axis=2).max(axis=1)
    return np.linalg.svd(stack, compute_uv=False)[:, 0]


def _spectral_radii_general(stack: np.ndarray) -> np.ndarray:
    return np.abs(np.linalg.eigvals(stack)).max(axis=1)


def depth_scan_2x2(base: np.ndarray, depth: int, kind: int):
    """Per-depth extrema over all words of 2x2 factors from ``base``.

    Returns three arrays of length ``depth``: the largest operator norm at
    each word length, the largest spectral radius, and the index (in
    lexicographic word order) of the first word attaining that radius.
    """
    return _depth_scan(base, depth, kind, opnorms_2x2, spectral_radii_2x2)


def depth_scan_general(base: np.ndarray, depth: int, kind: int):
    """Same contract as :func:`depth_scan_2x2` for any small dimension."""
    return _depth_scan(base, depth, kind, _opnorms_general, _spectral_radii_general)


def _depth_scan(base, depth, kind, norm_fn, sr_fn):
    m, d, _ = base.shape
    max_norms = np.empty(depth)
    max_srs = np.empty(depth)
    argmax_idx = np.empty(depth, dtype=np.int64)
    stack = np.ascontiguousarray(base, dtype=float)
    for k in range(1, depth + 1):
        max_norms[k - 1] = norm_fn(stack, kind).max()
        srs = sr_fn(stack)
        i = int(np.argmax(srs))
        max_srs[k - 1] = srs[i]
        argmax_idx[k - 1] = i
        if k < depth:
            # child i*m + j is parent i extended by factor j: lexicographic
            # word order is preserved level by level
            stack = np.einsum("nij,mjk->nmik", stack, base).reshape(-1, d, d)
    return max_norms, max_srs, argmax_idx


def vector_norms_2d(ys: np.ndarray, kind: int) -> np.ndarray:
    if kind == KIND_ONE:
        return np.abs(ys).sum(axis=1)
    if kind == KIND_INF:
        return np.abs(ys).max(axis=1)
    # plain sqrt of the sum of squares: keeps the compiled kernel bit-compatible
    return np.sqrt(ys[:, 0] ** 2 + ys[:, 1] ** 2)


def barabanov_sweep(mats: np.ndarray, xs: np.ndarray, h: np.ndarray, kind: int):
    """One application of the extremal-norm operator on a uniform angle grid.

    ``xs`` are the grid's base-norm unit vectors and ``h`` the current norm
    profile on the same grid; the image interpolates ``h`` piecewise
    linearly (periodically) at the angles of the mapped vectors.
    """
    g = h.shape[0]
    step = 2.0 * np.pi / g
    best = np.zeros(g)
    for A in mats:
        ys = xs @ A.T
        ny = vector_norms_2d(ys, kind)
        ang = np.arctan2(ys[:, 1], ys[:, 0])
        pos = np.mod(ang, 2.0 * np.pi) / step
        i0 = np.floor(pos).astype(np.int64)
        frac = pos - i0
        i0 = np.mod(i0, g)
        i1 = (i0 + 1) % g
        np.maximum(best, ny * (h[i0] * (1.0 - frac) + h[i1] * frac), out=best)
    return best
