"""Input validation helpers shared by the functional API and the estimators.

These mirror the role of ``sklearn.utils.check_array``: they coerce array-likes
to float ndarrays and raise the package's own exception types with messages
that name the offending entry.
"""

import math

import numpy as np

from .exceptions import (
    BadScale,
    DimensionMismatch,
    NonPositiveValue,
    NotReciprocal,
    ValueOutOfScale,
)


def check_scale(m):
    """Return ``m`` as a float after checking it is a finite number above 1."""
    try:
        m = float(m)
    except (TypeError, ValueError):
        raise BadScale(f"scale upper limit must be a real number, got {m!r}") from None
    if not math.isfinite(m) or m <= 1.0:
        raise BadScale(f"scale upper limit must be finite and > 1, got {m!r}")
    return m


def check_square_matrix(X):
    """Coerce ``X`` to a 2-d float array with finite, strictly positive entries."""
    A = np.array(X, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise DimensionMismatch(f"expected a non-empty square matrix, got shape {A.shape}")
    bad = np.argwhere(~np.isfinite(A))
    if bad.size:
        i, j = bad[0]
        raise NonPositiveValue(f"entry ({i}, {j}) is not finite: {float(A[i, j])!r}")
    bad = np.argwhere(A <= 0)
    if bad.size:
        i, j = bad[0]
        raise NonPositiveValue(f"entry ({i}, {j}) = {float(A[i, j])!r} is not positive")
    return A


def reciprocity_violations(A, tol):
    """Index pairs (i, j), i <= j, where reciprocity or the unit diagonal fails."""
    n = A.shape[0]
    out = []
    for i in range(n):
        if A[i, i] != 1.0:
            out.append((i, i))
        for j in range(i + 1, n):
            if abs(A[i, j] * A[j, i] - 1.0) > tol:
                out.append((i, j))
    return out


def check_reciprocal(A, tol):
    bad = reciprocity_violations(A, tol)
    if bad:
        i, j = bad[0]
        if i == j:
            raise NotReciprocal(f"diagonal entry ({i}, {i}) = {float(A[i, i])!r} is not 1")
        raise NotReciprocal(
            f"entries ({i}, {j}) = {float(A[i, j])!r} and ({j}, {i}) = {float(A[j, i])!r} are not reciprocal"
        )


def check_in_scale(A, m):
    """Raise ``ValueOutOfScale`` for the first entry outside ``[1/m, m]``."""
    lo = 1.0 / m
    bad = np.argwhere((A < lo) | (A > m))
    if bad.size:
        i, j = bad[0]
        raise ValueOutOfScale(
            f"entry ({i}, {j}) = {float(A[i, j])!r} is outside the scale range [1/{m:g}, {m:g}]"
        )
