"""Pairwise-comparison matrices, judgment sets and the multiplicative consistency check."""

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, List, Sequence, Union

import numpy as np

from .exceptions import DuplicatePair, MissingPair, NonPositiveValue, PCError, ValueOutOfScale
from .validation import check_in_scale, check_reciprocal, check_scale, check_square_matrix

DEFAULT_CONSISTENCY_TOL = 1e-9


@dataclass(frozen=True)
class RatingScale:
    """A "1 to m" rating scale. ``m`` may be any finite real above 1."""

    m: float

    def __post_init__(self):
        object.__setattr__(self, "m", check_scale(self.m))

    def contains(self, value):
        """True if ``value`` is a legal raw ratio on this scale, i.e. in ``[1/m, m]``."""
        return 1.0 / self.m <= value <= self.m


def as_scale(scale):
    return scale if isinstance(scale, RatingScale) else RatingScale(scale)


@dataclass(frozen=True)
class RawJudgment:
    """Entity ``i`` compared with entity ``j``; ``value >= 1`` means i dominates j."""

    i: int
    j: int
    value: float

    def __post_init__(self):
        if self.i == self.j:
            raise PCError(f"judgment compares entity {self.i} with itself")
        if self.i < 0 or self.j < 0:
            raise PCError(f"negative entity index in judgment ({self.i}, {self.j})")


@dataclass(frozen=True)
class JudgmentSet:
    n: int
    scale: RatingScale
    judgments: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if self.n < 1:
            raise PCError(f"entity count must be >= 1, got {self.n}")
        object.__setattr__(self, "scale", as_scale(self.scale))
        js = tuple(
            j if isinstance(j, RawJudgment) else RawJudgment(*j) for j in self.judgments
        )
        object.__setattr__(self, "judgments", js)


class PCMatrix:
    """Square positive reciprocal matrix with unit diagonal.

    The stored array is read-only. Use :meth:`from_upper` or :meth:`from_array`
    to build a matrix whose lower triangle holds exact reciprocals.
    """

    def __init__(self, entries, tol=1e-12):
        A = check_square_matrix(entries)
        check_reciprocal(A, tol)
        A.setflags(write=False)
        self._entries = A

    @classmethod
    def from_upper(cls, entries):
        """Build from the strict upper triangle of ``entries``; the rest is derived."""
        A = check_square_matrix(entries)
        n = A.shape[0]
        out = np.ones((n, n))
        iu = np.triu_indices(n, 1)
        out[iu] = A[iu]
        out.T[iu] = 1.0 / A[iu]
        return cls(out, tol=1e-12)

    @classmethod
    def from_array(cls, entries, tol=1e-9):
        """Validate an externally supplied matrix at ``tol`` and store exact reciprocals."""
        A = check_square_matrix(entries)
        check_reciprocal(A, tol)
        return cls.from_upper(A)

    @property
    def entries(self):
        return self._entries

    @property
    def n(self):
        return self._entries.shape[0]

    def upper_triangle(self):
        """The judgments ``(i, j, a_ij)`` for ``i < j`` in row-major order."""
        return [(i, j, float(self._entries[i, j])) for i, j in combinations(range(self.n), 2)]

    def __array__(self, dtype=None, copy=None):
        return np.array(self._entries, dtype=dtype)

    def __eq__(self, other):
        if not isinstance(other, PCMatrix):
            return NotImplemented
        return np.array_equal(self._entries, other._entries)

    __hash__ = None

    def __repr__(self):
        return f"PCMatrix({self._entries.tolist()!r})"


PCMatrixLike = Union[PCMatrix, Sequence[Sequence[float]], np.ndarray]


def as_pc_matrix(M, tol=1e-9):
    if isinstance(M, PCMatrix):
        return M
    return PCMatrix.from_array(M, tol=tol)


@dataclass(frozen=True)
class Triad:
    i: int
    j: int
    k: int
    a_ij: float
    a_jk: float
    a_ik: float

    @property
    def indices(self):
        return (self.i, self.j, self.k)

    @property
    def values(self):
        return (self.a_ij, self.a_jk, self.a_ik)

    def deviation(self):
        """Relative violation ``|a_ij * a_jk - a_ik| / a_ik`` of the consistency condition."""
        return abs(self.a_ij * self.a_jk - self.a_ik) / self.a_ik


def matrix_from_judgments(js: JudgmentSet) -> PCMatrix:
    """Place raw judgment values in a PC matrix. Values are not normalized here."""
    n, m = js.n, js.scale.m
    upper = np.ones((n, n))
    seen = set()
    for jd in js.judgments:
        i, j, v = jd.i, jd.j, float(jd.value)
        if i >= n or j >= n:
            raise PCError(f"judgment ({i}, {j}) refers to an entity outside 0..{n - 1}")
        key = (min(i, j), max(i, j))
        if key in seen:
            raise DuplicatePair(f"pair {key} is judged more than once")
        seen.add(key)
        if not v > 0:
            raise NonPositiveValue(f"judgment ({i}, {j}) has non-positive value {v!r}")
        if not js.scale.contains(v):
            raise ValueOutOfScale(
                f"judgment ({i}, {j}) = {v!r} is outside the scale range [1/{m:g}, {m:g}]"
            )
        if i < j:
            upper[i, j] = v
        else:
            upper[j, i] = 1.0 / v
    missing = [p for p in combinations(range(n), 2) if p not in seen]
    if missing:
        raise MissingPair(f"no judgment for pair(s) {missing}")
    return PCMatrix.from_upper(upper)


def validate_reciprocity(M, tol=1e-12) -> bool:
    """True iff the diagonal is exactly 1 and ``|a_ij * a_ji - 1| <= tol`` everywhere.

    Accepts raw array-likes so externally loaded matrices can be screened before
    they are turned into a :class:`PCMatrix`.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    A = check_square_matrix(M.entries if isinstance(M, PCMatrix) else M)
    n = A.shape[0]
    if not np.all(np.diag(A) == 1.0):
        return False
    return bool(np.all(np.abs(A * A.T - 1.0) <= tol)) if n > 1 else True


def triads(M) -> List[Triad]:
    """All C(n, 3) triads ``(a_ij, a_jk, a_ik)`` with ``i < j < k``; empty when n < 3."""
    A = as_pc_matrix(M).entries
    return list(_iter_triads(A))


def _iter_triads(A) -> Iterator[Triad]:
    for i, j, k in combinations(range(A.shape[0]), 3):
        yield Triad(i, j, k, float(A[i, j]), float(A[j, k]), float(A[i, k]))


def max_triad_deviation(M) -> float:
    A = as_pc_matrix(M).entries
    n = A.shape[0]
    if n < 3:
        return 0.0
    i, j, k = np.array(list(combinations(range(n), 3))).T
    dev = np.abs(A[i, j] * A[j, k] - A[i, k]) / A[i, k]
    return float(dev.max())


def is_consistent(M, tol=DEFAULT_CONSISTENCY_TOL) -> bool:
    if tol <= 0:
        raise ValueError("tol must be positive")
    return max_triad_deviation(M) <= tol


def consistent_matrix(weights) -> PCMatrix:
    """The consistent matrix ``a_ij = w_i / w_j`` generated by a positive weight vector."""
    w = np.asarray(weights, dtype=float)
    if w.ndim != 1 or w.size == 0 or np.any(w <= 0):
        raise NonPositiveValue("weights must be a non-empty vector of positive values")
    return PCMatrix.from_upper(np.outer(w, 1.0 / w))


def judgments_from_matrix(M, scale) -> JudgmentSet:
    M = as_pc_matrix(M)
    return JudgmentSet(M.n, as_scale(scale), tuple(RawJudgment(*t) for t in M.upper_triangle()))


def check_matrix_in_scale(M, scale):
    check_in_scale(as_pc_matrix(M).entries, as_scale(scale).m)
