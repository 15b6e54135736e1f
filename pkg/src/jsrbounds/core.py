"""Matrix-set primitives: norms and their duals, product enumeration,
semigroups of bounded word length, and the Hausdorff metric between
finite matrix sets."""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Sequence

import numpy as np

#: Hard cap on the number of matrix products any enumeration may touch.
#: Exceeding it raises; certified bounds must never come from truncation.
DEFAULT_WORD_BUDGET = 1_000_000

#: Matrices/points closer than this (entrywise) are considered duplicates.
MERGE_TOL = 1e-12


class BudgetExceededError(RuntimeError):
    """An enumeration would require more products than the word budget."""

    def __init__(self, requested: int, budget: int):
        super().__init__(
            f"enumeration needs {requested} products, budget is {budget}"
        )
        self.requested = requested
        self.budget = budget


class UnsupportedDimensionError(ValueError):
    """Operation is only implemented (exactly) for the stated dimension."""


class CertificationError(RuntimeError):
    """A certificate could not be established (e.g. zero certified lower
    bound, reducible input, or a non-converged norm iteration)."""


class NormKind(Enum):
    """Vector norm selector; operator norms are the induced ones.

    ONE and INF are dual to each other, TWO is self-dual.
    """

    ONE = "one"
    TWO = "two"
    INF = "inf"

    @property
    def dual(self) -> "NormKind":
        if self is NormKind.ONE:
            return NormKind.INF
        if self is NormKind.INF:
            return NormKind.ONE
        return NormKind.TWO

    @property
    def np_ord(self):
        """Order argument understood by :func:`numpy.linalg.norm`."""
        return {NormKind.ONE: 1, NormKind.TWO: 2, NormKind.INF: np.inf}[self]

    @property
    def code(self) -> int:
        """Integer code shared with the compiled kernels (0=INF, 1=ONE, 2=TWO)."""
        return {NormKind.INF: 0, NormKind.ONE: 1, NormKind.TWO: 2}[self]

    @classmethod
    def parse(cls, name: str) -> "NormKind":
        try:
            return cls(name.strip().lower())
        except ValueError:
            raise ValueError(
                f"unknown norm kind {name!r}; expected one of 'one', 'two', 'inf'"
            ) from None


def as_matrix(a, dim: int | None = None) -> np.ndarray:
    """Validate and freeze a square real matrix.

    Returns a read-only float64 copy. Raises ``ValueError`` on non-square
    shape, non-finite entries, or a dimension mismatch with ``dim``.
    """
    m = np.array(a, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    if dim is not None and m.shape[0] != dim:
        raise ValueError(f"dimension mismatch: expected {dim}, got {m.shape[0]}")
    m.setflags(write=False)
    return m


@dataclass(frozen=True)
class MatrixSet:
    """A finite nonempty collection of d-by-d real matrices.

    Finiteness stands in for compactness: every bound computed from a
    MatrixSet is exact over its members. Instances are immutable; the
    member arrays are read-only.
    """

    dim: int
    members: tuple[np.ndarray, ...]

    def __post_init__(self):
        if not self.members:
            raise ValueError("matrix set must be nonempty")
        frozen = tuple(as_matrix(m, self.dim) for m in self.members)
        object.__setattr__(self, "members", frozen)

    @classmethod
    def from_matrices(cls, mats: Iterable) -> "MatrixSet":
        mats = [np.asarray(m, dtype=float) for m in mats]
        if not mats:
            raise ValueError("matrix set must be nonempty")
        return cls(dim=mats[0].shape[0], members=tuple(mats))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def stacked(self) -> np.ndarray:
        """Members as one (m, d, d) C-contiguous array."""
        return np.ascontiguousarray(np.stack(self.members))

    def scaled(self, c: float) -> "MatrixSet":
        return MatrixSet.from_matrices([c * m for m in self.members])


@dataclass(frozen=True)
class ProductSemigroup:
    """All products of at most ``depth`` factors from a base set, with the
    identity as the empty product. ``words`` pairs each product with its
    word length."""

    base: MatrixSet
    depth: int
    words: tuple[tuple[np.ndarray, int], ...]

    def of_length(self, k: int) -> list[np.ndarray]:
        return [w for w, length in self.words if length == k]


def vector_norm(x, kind: NormKind) -> float:
    """The selected vector norm of ``x``; zero iff ``x`` is zero."""
    v = np.asarray(x, dtype=float)
    if v.ndim != 1:
        raise ValueError(f"expected a vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector entries must be finite")
    return float(np.linalg.norm(v, ord=kind.np_ord))


def dual_witness(x, kind: NormKind) -> np.ndarray:
    """A vector ``u`` with ``<u, x> = ||x||_kind * ||u||_dual``.

    For TWO the witness is ``x`` itself; for ONE it is the sign pattern of
    ``x``; for INF a signed coordinate vector at the largest entry.
    """
    v = np.asarray(x, dtype=float)
    if kind is NormKind.TWO:
        return v.copy()
    if kind is NormKind.ONE:
        return np.where(v >= 0, 1.0, -1.0)
    u = np.zeros_like(v)
    j = int(np.argmax(np.abs(v)))
    u[j] = 1.0 if v[j] >= 0 else -1.0
    return u


def operator_norm(M, kind: NormKind) -> float:
    """Induced operator norm: max column sum (ONE), largest singular
    value (TWO), or max row sum (INF)."""
    m = as_matrix(M)
    return float(np.linalg.norm(m, ord=kind.np_ord))


def set_norm(S: MatrixSet, kind: NormKind) -> float:
    """Largest operator norm over the members of ``S``."""
    return max(operator_norm(m, kind) for m in S.members)


def _check_budget(requested: int, budget: int) -> None:
    if requested > budget:
        raise BudgetExceededError(requested, budget)


def products(
    S: MatrixSet, n: int, budget: int = DEFAULT_WORD_BUDGET
) -> list[np.ndarray]:
    """All ``m**n`` ordered n-fold products of members of ``S``.

    Enumeration order is lexicographic in the index word ``(j_1, ..., j_n)``
    where the product is ``S[j_1] @ S[j_2] @ ... @ S[j_n]``. Duplicate
    products are kept so the count is always exactly ``m**n``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    m = len(S)
    _check_budget(m**n, budget)
    level = [mat for mat in S.members]
    for _ in range(n - 1):
        level = [P @ A for P in level for A in S.members]
    return level


def semigroup_up_to(
    S: MatrixSet, p: int, budget: int = DEFAULT_WORD_BUDGET
) -> ProductSemigroup:
    """Identity plus all products of 1..p factors, each tagged with its
    word length."""
    if p < 0:
        raise ValueError("p must be >= 0")
    m = len(S)
    total = sum(m**k for k in range(p + 1))
    _check_budget(total, budget)
    words: list[tuple[np.ndarray, int]] = [(np.eye(S.dim), 0)]
    level = [np.eye(S.dim)]
    for k in range(1, p + 1):
        level = [P @ A for P in level for A in S.members]
        words.extend((P, k) for P in level)
    return ProductSemigroup(base=S, depth=p, words=tuple(words))


def hausdorff(S: MatrixSet, T: MatrixSet, kind: NormKind) -> float:
    """Hausdorff distance between two finite matrix sets.

    Max of the two directed distances, each a max-of-min of operator-norm
    differences; exact over finite sets.
    """
    if S.dim != T.dim:
        raise ValueError(f"dimension mismatch: {S.dim} vs {T.dim}")

    def directed(P: MatrixSet, Q: MatrixSet) -> float:
        return max(
            min(operator_norm(a - b, kind) for b in Q.members) for a in P.members
        )

    return max(directed(S, T), directed(T, S))


def dedup_matrices(
    mats: Sequence[np.ndarray], tol: float = MERGE_TOL
) -> list[np.ndarray]:
    """Optional post-pass collapsing matrices equal within ``tol``
    (entrywise). Keeps first occurrences, preserving order."""
    out: list[np.ndarray] = []
    for m in mats:
        if not any(np.max(np.abs(m - q)) <= tol for q in out):
            out.append(m)
    return out


# ---------------------------------------------------------------------------
# Matrix-set file format: {"dim": d, "matrices": [[[row], [row], ...], ...]}
# ---------------------------------------------------------------------------


def matrix_set_to_json_dict(S: MatrixSet) -> dict:
    return {"dim": S.dim, "matrices": [m.tolist() for m in S.members]}


def matrix_set_from_json_dict(doc: dict) -> MatrixSet:
    if not isinstance(doc, dict) or "dim" not in doc or "matrices" not in doc:
        raise ValueError('expected a JSON object with "dim" and "matrices" keys')
    dim = doc["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise ValueError(f'"dim" must be a positive integer, got {dim!r}')
    mats = doc["matrices"]
    if not isinstance(mats, list) or not mats:
        raise ValueError('"matrices" must be a nonempty list')
    return MatrixSet(dim=dim, members=tuple(as_matrix(m, dim) for m in mats))


def _reject_json_constant(name: str):
    raise ValueError(f"non-finite JSON constant {name!r} is not allowed")


def load_matrix_set(path) -> MatrixSet:
    """Read a matrix set from its JSON file format."""
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh, parse_constant=_reject_json_constant)
    return matrix_set_from_json_dict(doc)


def save_matrix_set(S: MatrixSet, path) -> None:
    """Write a matrix set to the JSON file format (round-trips entry-exact:
    floats are serialized with shortest round-trip repr)."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(matrix_set_to_json_dict(S), fh, allow_nan=False)
        fh.write("\n")
