"""Priority weights from a PC matrix: row geometric means and Fulop's convex program.

Fulop's program works in log space. With ``x_n`` pinned to 0, every unordered
pair ``i < j`` contributes ``f_{a_ij}(x_i - x_j)`` where

    f_a(t) = (exp(t) - a)**2 + (exp(-t) - 1/a)**2.

The objective is strictly convex whenever every entry lies below Fulop's
constant, which holds for all normalized matrices (entries in [1/2, 2]).
"""

import math
import warnings
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from sklearn.base import BaseEstimator

from .core import PCMatrix, as_pc_matrix
from .exceptions import ConvergenceWarning, ConvexityBoundWarning, DimensionMismatch, NonPositiveValue

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 500


def fulop_constant() -> float:
    """Fulop's constant ``sqrt((11 + 5*sqrt(5)) / 2)``, approximately 3.330191."""
    return math.sqrt((11.0 + 5.0 * math.sqrt(5.0)) / 2.0)


@dataclass(frozen=True)
class WeightVector:
    weights: Tuple[float, ...]
    normalized: bool = True

    def __post_init__(self):
        w = tuple(float(x) for x in self.weights)
        if not w or any(not (x > 0 and math.isfinite(x)) for x in w):
            raise NonPositiveValue(f"weights must be finite and positive, got {w}")
        if self.normalized and abs(math.fsum(w) - 1.0) > 1e-12:
            raise ValueError(f"normalized weights sum to {math.fsum(w)!r}, not 1")
        object.__setattr__(self, "weights", w)

    def __len__(self):
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    def __getitem__(self, i):
        return self.weights[i]

    def __array__(self, dtype=None, copy=None):
        return np.array(self.weights, dtype=dtype)

    def normalize(self):
        w = np.asarray(self.weights)
        return WeightVector(tuple(w / w.sum()), normalized=True)


@dataclass(frozen=True)
class FulopSolution:
    log_weights: Tuple[float, ...]
    objective_value: float
    iterations: int
    converged: bool
    gradient_norm: float = 0.0
    exceeds_convexity_bound: bool = False


def _sum_normalize(w):
    w = np.asarray(w, dtype=float)
    w = w / w.sum()
    # absorb the last rounding residue so the sum check at 1e-12 is robust for large n
    return w / math.fsum(w)


def geometric_mean_weights(M, normalize=True) -> WeightVector:
    A = as_pc_matrix(M).entries
    gm = np.exp(np.log(A).mean(axis=1))
    if normalize:
        return WeightVector(tuple(_sum_normalize(gm)), normalized=True)
    return WeightVector(tuple(gm), normalized=False)


def _check_a(a):
    if not a > 0:
        raise NonPositiveValue(f"ratio a must be positive, got {a!r}")


def fulop_univariate(a, x) -> float:
    _check_a(a)
    return (math.exp(x) - a) ** 2 + (math.exp(-x) - 1.0 / a) ** 2


def fulop_univariate_derivative(a, x) -> float:
    _check_a(a)
    e, ie = math.exp(x), math.exp(-x)
    return 2.0 * (e - a) * e - 2.0 * (ie - 1.0 / a) * ie


def _pairs(n):
    return np.triu_indices(n, 1)


def _terms(A, x):
    n = A.shape[0]
    x = np.asarray(x, dtype=float)
    if x.shape != (n - 1,):
        raise DimensionMismatch(f"expected {n - 1} log-weights for n={n}, got shape {x.shape}")
    y = np.append(x, 0.0)
    I, J = _pairs(n)
    a = A[I, J]
    t = y[I] - y[J]
    return I, J, a, np.exp(t), np.exp(-t)


def _objective(A, x):
    _, _, a, e, ie = _terms(A, x)
    return float(np.sum((e - a) ** 2 + (ie - 1.0 / a) ** 2))


def _gradient(A, x):
    n = A.shape[0]
    I, J, a, e, ie = _terms(A, x)
    d = 2.0 * (e - a) * e - 2.0 * (ie - 1.0 / a) * ie
    g = np.bincount(I, d, minlength=n) - np.bincount(J, d, minlength=n)
    return g[: n - 1]


def _hessian(A, x):
    n = A.shape[0]
    I, J, a, e, ie = _terms(A, x)
    h = 4.0 * e * e - 2.0 * a * e + 4.0 * ie * ie - (2.0 / a) * ie
    H = np.zeros((n, n))
    np.add.at(H, (I, I), h)
    np.add.at(H, (J, J), h)
    np.add.at(H, (I, J), -h)
    np.add.at(H, (J, I), -h)
    return H[: n - 1, : n - 1]


def fulop_objective(M, x) -> float:
    """Sum of ``f_{a_ij}(x_i - x_j)`` over all pairs ``i < j``, with ``x_n = 0``."""
    return _objective(as_pc_matrix(M).entries, x)


def fulop_gradient(M, x) -> np.ndarray:
    return _gradient(as_pc_matrix(M).entries, x)


def fulop_hessian(M, x) -> np.ndarray:
    return _hessian(as_pc_matrix(M).entries, x)


def _newton_direction(H, g):
    try:
        L = np.linalg.cholesky(H)
    except np.linalg.LinAlgError:
        return None
    return -np.linalg.solve(L.T, np.linalg.solve(L, g))


def _line_search(A, x, f, g, p, c=1e-4, beta=0.5, max_halvings=60):
    """Armijo backtracking. Returns the accepted point or None."""
    slope = float(g @ p)
    if slope >= 0:
        return None
    gnorm = np.max(np.abs(g))
    t = 1.0
    for _ in range(max_halvings):
        x_new = x + t * p
        f_new = _objective(A, x_new)
        if f_new <= f + c * t * slope:
            return x_new, f_new
        # near the optimum f stalls at rounding level; accept if the gradient still shrinks
        if f_new - f <= 1e-15 * max(f, 1.0) and np.max(np.abs(_gradient(A, x_new))) < gnorm:
            return x_new, f_new
        t *= beta
    return None


def fulop_weights(M, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER, x0=None):
    """Minimize the Fulop objective and return ``(WeightVector, FulopSolution)``.

    Damped Newton with Armijo backtracking, falling back to steepest descent
    whenever the Hessian is not positive definite (possible only when some
    entry reaches Fulop's constant). Starts from the geometric-mean solution
    unless ``x0`` is given. Weights are ``exp(x_i)`` with ``w_n = 1``,
    sum-normalized.

    A run that does not reach ``max|grad| <= tol`` issues a
    :class:`ConvergenceWarning` and returns the best iterate with
    ``converged=False``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    A = as_pc_matrix(M).entries
    n = A.shape[0]
    over = bool(np.any(A >= fulop_constant()))
    if over:
        warnings.warn(
            "matrix has entries at or above Fulop's constant; the objective may not be "
            "strictly convex and the solution may be only a local minimum",
            ConvexityBoundWarning,
            stacklevel=2,
        )
    if n == 1:
        sol = FulopSolution((), 0.0, 0, True, 0.0, over)
        return WeightVector((1.0,)), sol

    if x0 is None:
        logs = np.log(A).mean(axis=1)
        x = logs[:-1] - logs[-1]
    else:
        x = np.array(x0, dtype=float)
    f = _objective(A, x)
    g = _gradient(A, x)
    converged = False
    it = 0
    while True:
        if np.max(np.abs(g)) <= tol:
            converged = True
            break
        if it >= max_iter:
            break
        it += 1
        p = _newton_direction(_hessian(A, x), g)
        step = _line_search(A, x, f, g, p) if p is not None else None
        if step is None:
            step = _line_search(A, x, f, g, -g)
        if step is None:
            break
        x, f = step
        g = _gradient(A, x)

    gnorm = float(np.max(np.abs(g)))
    sol = FulopSolution(tuple(float(v) for v in x), f, it, converged, gnorm, over)
    if not converged:
        warnings.warn(
            f"Fulop solver stopped after {it} iterations with max|grad| = {gnorm:.3g} > {tol:g}",
            ConvergenceWarning,
            stacklevel=2,
        )
    w = np.exp(np.append(x, 0.0))
    return WeightVector(tuple(_sum_normalize(w))), sol


def fulop_raw_weights(solution: FulopSolution) -> WeightVector:
    """Unnormalized weights ``exp(x_i)`` with the last entity pinned at 1."""
    return WeightVector(tuple(np.exp(np.append(solution.log_weights, 0.0))), normalized=False)


class _WeightEstimator(BaseEstimator):
    def _store(self, wv: WeightVector):
        self.weights_ = np.array(wv)
        self.n_entities_ = len(wv)
        self.ranking_ = np.argsort(-self.weights_, kind="stable")

    def fit_predict(self, X, y=None):
        """Fit on the PC matrix ``X`` and return its weights."""
        return self.fit(X).weights_


class GeometricMeanWeights(_WeightEstimator):
    """Row geometric-mean priorities of a PC matrix.

    Attributes
    ----------
    weights_ : ndarray of shape (n_entities,)
    ranking_ : ndarray of entity indices, most important first
    """

    def __init__(self, normalize=True, tol=1e-9):
        self.normalize = normalize
        self.tol = tol

    def fit(self, X, y=None):
        self._store(geometric_mean_weights(as_pc_matrix(X, self.tol), normalize=self.normalize))
        return self


class FulopWeights(_WeightEstimator):
    """Weights minimizing Fulop's strictly convex least-squares objective.

    Attributes
    ----------
    weights_ : ndarray of shape (n_entities,)
    ranking_ : ndarray of entity indices, most important first
    solution_ : FulopSolution
    objective_ : float
    n_iter_ : int
    """

    def __init__(self, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER, normalize=True):
        self.tol = tol
        self.max_iter = max_iter
        self.normalize = normalize

    def fit(self, X, y=None):
        wv, sol = fulop_weights(as_pc_matrix(X), tol=self.tol, max_iter=self.max_iter)
        self._store(wv if self.normalize else fulop_raw_weights(sol))
        self.solution_ = sol
        self.objective_ = sol.objective_value
        self.n_iter_ = sol.iterations
        self.converged_ = sol.converged
        return self
