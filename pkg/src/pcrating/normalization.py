"""Mapping rating-scale values on "1 to m" into PC-matrix ratios in [1, 2].

The map is the affine ``f(v) = 1 + (v - 1) / (m - 1)``, so ``f(1) = 1`` and
``f(m) = 2``. Entries below 1 (the reverse direction of a judgment) are mapped
by ``1 / f(1 / a)`` so reciprocity survives.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .core import PCMatrix, RatingScale, as_pc_matrix, as_scale
from .exceptions import NonPositiveValue, ValueOutOfScale
from .validation import check_in_scale, check_reciprocal, check_scale, check_square_matrix


def normalize_value(v, scale) -> float:
    m = as_scale(scale).m
    v = float(v)
    if not 1.0 <= v <= m:
        raise ValueOutOfScale(f"value {v!r} is outside [1, {m:g}]")
    return 1.0 + (v - 1.0) / (m - 1.0)


def normalize_entry(a, scale) -> float:
    scale = as_scale(scale)
    a = float(a)
    if not a > 0:
        raise NonPositiveValue(f"entry {a!r} is not positive")
    if not scale.contains(a):
        raise ValueOutOfScale(f"entry {a!r} is outside [1/{scale.m:g}, {scale.m:g}]")
    if a >= 1.0:
        return normalize_value(a, scale)
    # 1/a can overshoot m by an ulp when a sits exactly at 1/m
    return 1.0 / normalize_value(min(1.0 / a, scale.m), scale)


def _normalize_array(A, m):
    # vectorised normalize_entry; A already validated as positive and in scale
    out = np.empty_like(A)
    up = A >= 1.0
    out[up] = 1.0 + (A[up] - 1.0) / (m - 1.0)
    out[~up] = 1.0 / (1.0 + (np.minimum(1.0 / A[~up], m) - 1.0) / (m - 1.0))
    return out


def normalize_matrix(M, scale) -> PCMatrix:
    """Entrywise normalization of a raw PC matrix; the result has entries in [1/2, 2]."""
    M = as_pc_matrix(M)
    m = as_scale(scale).m
    check_in_scale(M.entries, m)
    return PCMatrix.from_upper(_normalize_array(M.entries, m))


@dataclass(frozen=True)
class CorrectionTable:
    scale: RatingScale
    rows: Tuple[Tuple[float, float], ...]

    @property
    def original(self):
        return tuple(r[0] for r in self.rows)

    @property
    def corrected(self):
        return tuple(r[1] for r in self.rows)


def correction_table(scale, values=None) -> CorrectionTable:
    """Pair each scale value with its normalized ratio.

    ``values`` defaults to the integers ``1..floor(m)``, with ``m`` itself
    appended when it is not an integer.
    """
    scale = as_scale(scale)
    if values is None:
        values = integer_points(scale.m)
    rows = tuple((float(v), normalize_value(v, scale)) for v in values)
    return CorrectionTable(scale, rows)


def integer_points(m):
    pts = [float(k) for k in range(1, int(np.floor(m)) + 1)]
    if pts[-1] != m:
        pts.append(float(m))
    return pts


class ScaleNormalizer(TransformerMixin, BaseEstimator):
    """Transformer that rescales a raw PC matrix from the "1 to scale" range.

    Parameters
    ----------
    scale : float, default=9
        Upper limit of the rating scale the judgments were collected on.
    tol : float, default=1e-9
        Reciprocity tolerance applied when validating input matrices.

    Examples
    --------
    >>> ScaleNormalizer(scale=9).fit_transform([[1, 2], [0.5, 1]])
    array([[1.        , 1.125     ],
           [0.88888889, 1.        ]])
    """

    def __init__(self, scale=9, tol=1e-9):
        self.scale = scale
        self.tol = tol

    def fit(self, X, y=None):
        self.scale_ = RatingScale(check_scale(self.scale))
        A = check_square_matrix(X)
        check_reciprocal(A, self.tol)
        check_in_scale(A, self.scale_.m)
        self.n_entities_ = A.shape[0]
        return self

    def transform(self, X):
        if not hasattr(self, "scale_"):
            from sklearn.exceptions import NotFittedError

            raise NotFittedError("ScaleNormalizer is not fitted yet; call fit first")
        M = PCMatrix.from_array(X, tol=self.tol)
        return np.array(normalize_matrix(M, self.scale_))
