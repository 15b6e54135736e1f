"""Kernel dispatch: prefer the compiled extension, fall back to numpy.

Set the environment variable ``JSRBOUNDS_PURE=1`` before import to force
the pure-numpy implementations (used by the benchmark and parity tests).
"""

from __future__ import annotations

import os

import numpy as np

from . import _kernels_py as pure

try:
    from . import _kernels_cy as compiled  # type: ignore[attr-defined]
except ImportError:  # extension not built; pure fallback is fully featured
    compiled = None

COMPILED_AVAILABLE = compiled is not None
_FORCE_PURE = os.environ.get("JSRBOUNDS_PURE", "").strip() not in ("", "0")
USING_COMPILED = COMPILED_AVAILABLE and not _FORCE_PURE

_impl = compiled if USING_COMPILED else pure

KIND_INF = pure.KIND_INF
KIND_ONE = pure.KIND_ONE
KIND_TWO = pure.KIND_TWO


def depth_scan(base: np.ndarray, depth: int, kind: int):
    """Per-depth (max operator norm, max spectral radius, argmax word index)
    over all words of length 1..depth. 2x2 inputs hit the fast path."""
    base = np.ascontiguousarray(base, dtype=float)
    if base.shape[1] == 2:
        return _impl.depth_scan_2x2(base, depth, kind)
    return pure.depth_scan_general(base, depth, kind)


def barabanov_sweep(
    mats: np.ndarray, xs: np.ndarray, h: np.ndarray, kind: int
) -> np.ndarray:
    """One extremal-norm operator application on a uniform angle grid."""
    mats = np.ascontiguousarray(mats, dtype=float)
    xs = np.ascontiguousarray(xs, dtype=float)
    h = np.ascontiguousarray(h, dtype=float)
    return np.asarray(_impl.barabanov_sweep(mats, xs, h, kind))
