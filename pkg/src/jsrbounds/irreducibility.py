"""Orbit clouds, inscribed-ball radii of symmetric convex hulls, and the
p-measure of irreducibility with a certified lower bound.

The exact geometry (hull edges, dual-norm support values, covering radius
of the angle grid) is implemented for dimension 2 only; higher dimensions
are rejected rather than silently sampled, because the certified lower
bound feeds the denominator of a Lipschitz constant and must never be
overestimated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core import (
    DEFAULT_WORD_BUDGET,
    MERGE_TOL,
    MatrixSet,
    NormKind,
    UnsupportedDimensionError,
    semigroup_up_to,
    set_norm,
    vector_norm,
)

#: Cross products smaller than this are treated as collinear in the hull.
COLLINEAR_TOL = 1e-12

#: Lipschitz constant (per norm kind) of the map angle -> unit vector of
#: that norm, used to certify the covering radius of an angle grid. For
#: TWO the unit circle is traversed at unit speed; for ONE/INF the speed
#: of the normalized parameterization peaks at 2 (at the square's corners).
_UNIT_SPEED = {NormKind.TWO: 1.0, NormKind.ONE: 2.0, NormKind.INF: 2.0}


@dataclass(frozen=True)
class PointCloud:
    """A finite set of d-vectors (an orbit of a starting vector)."""

    dim: int
    points: np.ndarray

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != self.dim or pts.shape[0] < 1:
            raise ValueError(f"expected a nonempty (n, {self.dim}) array")
        if not np.all(np.isfinite(pts)):
            raise ValueError("points must be finite")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return self.points.shape[0]


@dataclass(frozen=True)
class IrreducibilityCertificate:
    """Point estimate and certified lower bound for the p-measure of
    irreducibility, together with the grid parameters justifying it.

    ``chi_lower = max(0, chi_estimate - lipschitz_L * covering_delta)``:
    moving the start vector by at most the grid's covering radius moves
    each orbit point by at most ``lipschitz_L`` times that, the symmetric
    hull moves by at most the same amount in Hausdorff distance, and the
    inscribed radius is 1-Lipschitz under Hausdorff perturbation.
    """

    p: int
    kind: NormKind
    chi_estimate: float
    chi_lower: float
    grid_count: int
    lipschitz_L: float
    covering_delta: float

    def __post_init__(self):
        if not 0.0 <= self.chi_lower <= self.chi_estimate:
            raise ValueError("certificate requires 0 <= chi_lower <= chi_estimate")

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "kind": self.kind.value,
            "chi_estimate": self.chi_estimate,
            "chi_lower": self.chi_lower,
            "grid_count": self.grid_count,
            "lipschitz_L": self.lipschitz_L,
            "covering_delta": self.covering_delta,
        }


class Irreducibility(Enum):
    IRREDUCIBLE = "irreducible"
    REDUCIBLE = "reducible"
    UNDECIDED = "undecided"


def orbit(
    S: MatrixSet, p: int, x, budget: int = DEFAULT_WORD_BUDGET
) -> PointCloud:
    """All images of ``x`` under products of at most ``p`` members,
    including ``x`` itself (the empty product)."""
    v = np.asarray(x, dtype=float)
    if v.shape != (S.dim,):
        raise ValueError(f"expected a vector of dimension {S.dim}")
    if float(np.abs(v).max()) == 0.0:
        raise ValueError("orbit start vector must be nonzero")
    sg = semigroup_up_to(S, p, budget=budget)
    pts = np.array([w @ v for w, _ in sg.words])
    return PointCloud(dim=S.dim, points=pts)


def unit_vector(theta: float, kind: NormKind) -> np.ndarray:
    """The kind-norm unit vector at polar angle ``theta``."""
    e = np.array([math.cos(theta), math.sin(theta)])
    return e / vector_norm(e, kind)


# ---------------------------------------------------------------------------
# Exact planar hull geometry
# ---------------------------------------------------------------------------


def _merge_close(points: np.ndarray, tol: float = MERGE_TOL) -> list[tuple[float, float]]:
    out: list[tuple[float, float]] = []
    for p in points:
        x, y = float(p[0]), float(p[1])
        if not any(max(abs(x - qx), abs(y - qy)) <= tol for qx, qy in out):
            out.append((x, y))
    return out


def _convex_hull(points: list[tuple[float, float]]) -> list[tuple[float, float]]:
    """Monotone-chain hull in counterclockwise order; collinear points on
    the boundary are dropped (cross-product threshold ``COLLINEAR_TOL``)."""
    pts = sorted(points)
    if len(pts) <= 2:
        return pts

    def chain(seq):
        out: list[tuple[float, float]] = []
        for p in seq:
            while len(out) > 1:
                cross = (out[-1][0] - out[-2][0]) * (p[1] - out[-2][1]) - (
                    p[0] - out[-2][0]
                ) * (out[-1][1] - out[-2][1])
                if cross <= COLLINEAR_TOL:
                    out.pop()
                else:
                    break
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(reversed(pts))
    return lower[:-1] + upper[:-1]


def inscribed_radius(cloud: PointCloud, kind: NormKind) -> float:
    """Largest ``t`` such that the kind-norm ball of radius ``t`` fits in
    the symmetrized convex hull of the cloud.

    Exact planar path: symmetrize the points, build the hull, and take the
    minimum over edges of the support value divided by the dual norm of
    the outward normal. Degenerate (lower-dimensional) hulls yield 0.
    """
    if cloud.dim != 2:
        raise UnsupportedDimensionError(
            "exact inscribed radius is implemented for dimension 2 only; "
            "see inscribed_radius_sampled for the non-certifying estimate"
        )
    sym = np.vstack([cloud.points, -cloud.points])
    merged = _merge_close(sym)
    hull = _convex_hull(merged)
    if len(hull) < 3:
        return 0.0
    dual_ord = kind.dual.np_ord
    r = math.inf
    n = len(hull)
    for i in range(n):
        ax, ay = hull[i]
        bx, by = hull[(i + 1) % n]
        # outward normal of the ccw edge a -> b
        nx, ny = by - ay, -(bx - ax)
        support = nx * ax + ny * ay
        if support < 0.0:
            nx, ny, support = -nx, -ny, -support
        dual_norm = float(np.linalg.norm([nx, ny], ord=dual_ord))
        if dual_norm <= 0.0:
            continue
        r = min(r, support / dual_norm)
    return max(float(r), 0.0)


def inscribed_radius_sampled(
    cloud: PointCloud,
    kind: NormKind,
    directions: int = 100_000,
    refine_iters: int = 80,
) -> float:
    """Upper bound on the inscribed radius by direction sampling.

    | Minimizes the symmetric support function ``max_i |<u, v_i>|`` over
    dual-unit directions: a dense angular scan followed by golden-section
    refinement around the best bracket. Only an upper bound on the true
    radius (the minimum over a subset can only overestimate), so this path
    never certifies; it serves as an independent cross-check of the exact
    hull path.
    """
    if cloud.dim != 2:
        raise UnsupportedDimensionError("sampled path is implemented for dimension 2")
    pts = cloud.points
    dual = kind.dual

    def value(theta: float) -> float:
        u = unit_vector(theta, dual)
        return float(np.abs(pts @ u).max())

    thetas = np.pi * np.arange(directions) / directions
    us = np.stack([np.cos(thetas), np.sin(thetas)], axis=1)
    us /= np.linalg.norm(us, ord=dual.np_ord, axis=1)[:, None]
    vals = np.abs(us @ pts.T).max(axis=1)
    j = int(np.argmin(vals))
    best = float(vals[j])

    # golden-section refinement on the bracketing angular interval
    step = np.pi / directions
    lo, hi = thetas[j] - step, thetas[j] + step
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = value(c), value(d)
    for _ in range(refine_iters):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = value(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = value(d)
    return min(best, fc, fd)


def covering_delta(kind: NormKind, grid_count: int, subdiv: int = 128) -> float:
    """Certified upper bound on the covering radius of the angle grid.

    The grid samples the kind-norm unit sphere at angles ``j*pi/grid_count``
    together with their negatives, i.e. uniformly spaced by ``pi/grid_count``
    around the full circle. For each gap the distance to the nearer endpoint
    is maximized over a dense angular sub-grid and padded with the
    Lipschitz-slack of the sub-grid spacing, so the result can only
    overestimate the true covering radius (the safe direction).
    """
    if grid_count < 1:
        raise ValueError("grid_count must be positive")
    gap = math.pi / grid_count
    # one gap per sample pair; the sphere is only piecewise smooth, so every
    # gap around the full circle is checked rather than assuming congruence
    starts = gap * np.arange(2 * grid_count)
    offsets = np.linspace(0.0, gap, subdiv)
    phis = starts[:, None] + offsets[None, :]

    def units(angles: np.ndarray) -> np.ndarray:
        e = np.stack([np.cos(angles), np.sin(angles)], axis=-1)
        if kind is NormKind.TWO:
            nrm = np.sqrt((e**2).sum(axis=-1))
        elif kind is NormKind.ONE:
            nrm = np.abs(e).sum(axis=-1)
        else:
            nrm = np.abs(e).max(axis=-1)
        return e / nrm[..., None]

    u = units(phis)
    left = units(starts)[:, None, :]
    right = units(starts + gap)[:, None, :]

    def dist(a, b):
        d = a - b
        if kind is NormKind.TWO:
            return np.sqrt((d**2).sum(axis=-1))
        if kind is NormKind.ONE:
            return np.abs(d).sum(axis=-1)
        return np.abs(d).max(axis=-1)

    nearest = np.minimum(dist(u, left), dist(u, right))
    slack = _UNIT_SPEED[kind] * (gap / (subdiv - 1)) / 2.0
    return float(nearest.max() + slack)


def chi(
    S: MatrixSet,
    p: int,
    kind: NormKind,
    grid_count: int = 256,
    budget: int = DEFAULT_WORD_BUDGET,
) -> IrreducibilityCertificate:
    """The p-measure of irreducibility with a certified lower bound.

    Samples start vectors on the unit half-circle (the inscribed radius is
    even under negation, so antipodal samples are redundant), takes the
    smallest inscribed radius of their orbits as the point estimate, and
    subtracts the worst-case variation over one covering radius of the
    grid to obtain a sound lower bound.
    """
    if S.dim != 2:
        raise UnsupportedDimensionError("chi is implemented for dimension 2 only")
    if p < 1:
        raise ValueError("p must be >= 1")
    if grid_count < 8:
        raise ValueError("grid_count must be >= 8")
    estimate = math.inf
    for j in range(grid_count):
        x = unit_vector(math.pi * j / grid_count, kind)
        estimate = min(estimate, inscribed_radius(orbit(S, p, x, budget=budget), kind))
    lipschitz_l = max(1.0, set_norm(S, kind) ** p)
    delta = covering_delta(kind, grid_count)
    lower = max(0.0, estimate - lipschitz_l * delta)
    return IrreducibilityCertificate(
        p=p,
        kind=kind,
        chi_estimate=float(estimate),
        chi_lower=float(lower),
        grid_count=grid_count,
        lipschitz_L=float(lipschitz_l),
        covering_delta=float(delta),
    )


# ---------------------------------------------------------------------------
# Algebraic oracle: common invariant line detection (planar, exact up to tol)
# ---------------------------------------------------------------------------


def _real_eigendirections(M: np.ndarray, tol: float) -> list[np.ndarray] | None:
    """Real eigendirections of a 2x2 matrix, or None when the matrix is
    (numerically) scalar and leaves every line invariant."""
    scale = max(float(np.abs(M).max()), 1.0)
    off = max(abs(M[0, 1]), abs(M[1, 0]))
    if off <= tol * scale and abs(M[0, 0] - M[1, 1]) <= tol * scale:
        return None
    tr = M[0, 0] + M[1, 1]
    det = M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
    disc = tr * tr - 4.0 * det
    if disc < -tol * scale * scale:
        return []  # complex pair: no real eigendirection
    sq = math.sqrt(max(disc, 0.0))
    dirs: list[np.ndarray] = []
    for lam in ((tr + sq) / 2.0, (tr - sq) / 2.0):
        N = M - lam * np.eye(2)
        # null direction from the larger row of the (singular) shifted matrix
        r0 = np.array([N[0, 1], -N[0, 0]])
        r1 = np.array([N[1, 1], -N[1, 0]])
        v = r0 if np.abs(r0).max() >= np.abs(r1).max() else r1
        nv = float(np.linalg.norm(v))
        if nv <= tol * scale:
            continue
        v = v / nv
        if not any(abs(float(v @ np.array([-w[1], w[0]]))) <= tol for w in dirs):
            dirs.append(v)
    return dirs


def algebra_span_irreducible(S: MatrixSet, tol: float = 1e-10) -> bool:
    """True iff the members share no common invariant line.

    Independent of the chi machinery: candidate lines are the real
    eigendirections of the first non-scalar member; each is tested for
    invariance under every member. Scalar members constrain nothing; a
    member with a complex eigenvalue pair rules every line out.
    """
    if S.dim != 2:
        raise UnsupportedDimensionError(
            "the invariant-line oracle is implemented for dimension 2 only"
        )
    candidates: list[np.ndarray] | None = None
    for M in S.members:
        dirs = _real_eigendirections(M, tol)
        if dirs is None:
            continue
        if not dirs:
            return True
        candidates = dirs
        break
    if candidates is None:
        return False  # every member scalar: all lines invariant
    for v in candidates:
        perp = np.array([-v[1], v[0]])
        ok = True
        for M in S.members:
            scale = max(float(np.abs(M).max()), 1.0)
            if abs(float(perp @ (M @ v))) > tol * scale:
                ok = False
                break
        if ok:
            return False
    return True


def is_irreducible(
    S: MatrixSet,
    kind: NormKind,
    tol: float = 1e-9,
    p: int | None = None,
    grid_count: int = 256,
    budget: int = DEFAULT_WORD_BUDGET,
) -> Irreducibility:
    """Three-way irreducibility decision.

    REDUCIBLE when the algebraic oracle exhibits a common invariant line;
    IRREDUCIBLE when the certified lower bound of the p-measure is
    positive; UNDECIDED otherwise (in particular when the point estimate
    exceeds ``tol`` but the grid correction swallows it - refine the grid).
    """
    if S.dim != 2:
        raise UnsupportedDimensionError("is_irreducible requires dimension 2")
    if not algebra_span_irreducible(S):
        return Irreducibility.REDUCIBLE
    p_eff = (S.dim - 1) if p is None else p
    cert = chi(S, p_eff, kind, grid_count=grid_count, budget=budget)
    if cert.chi_lower > 0.0:
        return Irreducibility.IRREDUCIBLE
    return Irreducibility.UNDECIDED
