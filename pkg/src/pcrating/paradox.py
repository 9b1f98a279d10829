"""How much do weights move when raw scale values are normalized before use?"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .core import RatingScale, as_pc_matrix, as_scale
from .exceptions import NotConverged, ValueOutOfScale
from .normalization import normalize_matrix
from .weights import WeightVector, fulop_weights, geometric_mean_weights

METHODS = ("gm", "fulop")
REFERENCES = ("original", "corrected")
DEFAULT_SWEEP_SCALES = (3.0, 5.0, 9.0, 101.0, 1e6)


@dataclass(frozen=True)
class ComparisonReport:
    original_weights: WeightVector
    corrected_weights: WeightVector
    relative_errors: Tuple[float, ...]
    reference: str
    scale: RatingScale
    method: str

    def to_dict(self):
        return {
            "original_weights": list(self.original_weights),
            "corrected_weights": list(self.corrected_weights),
            "relative_errors": list(self.relative_errors),
            "reference": self.reference,
            "scale": self.scale.m,
            "method": self.method,
        }


@dataclass(frozen=True)
class SweepRow:
    m: float
    corrected_weights: WeightVector
    max_deviation_from_uniform: float


def relative_error(v, v_approx) -> float:
    """``|1 - v_approx / v|``. Raises ZeroDivisionError for ``v == 0``."""
    if v == 0:
        raise ZeroDivisionError("relative error is undefined for a zero reference value")
    return abs(1.0 - v_approx / v)


def scale_position(v, scale) -> float:
    """Fractional position ``(v - 1) / (m - 1)`` of ``v`` on the scale."""
    m = as_scale(scale).m
    if not 1.0 <= v <= m:
        raise ValueOutOfScale(f"value {v!r} is outside [1, {m:g}]")
    return (v - 1.0) / (m - 1.0)


def _weights(M, method, tol=None, max_iter=None):
    if method == "gm":
        return geometric_mean_weights(M)
    if method == "fulop":
        kw = {k: v for k, v in (("tol", tol), ("max_iter", max_iter)) if v is not None}
        wv, sol = fulop_weights(M, **kw)
        if not sol.converged:
            raise NotConverged(
                f"Fulop solver did not converge (max|grad| = {sol.gradient_norm:.3g})", sol
            )
        return wv
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


def compare(M_raw, scale, method="gm", reference="original", **solver_kw) -> ComparisonReport:
    """Weights of the raw matrix against weights of its normalized image.

    With ``reference="original"`` each error is ``|1 - corrected_i / original_i|``;
    ``"corrected"`` swaps the roles.
    """
    if reference not in REFERENCES:
        raise ValueError(f"unknown reference {reference!r}; expected one of {REFERENCES}")
    M_raw = as_pc_matrix(M_raw)
    scale = as_scale(scale)
    corrected_matrix = normalize_matrix(M_raw, scale)
    orig = _weights(M_raw, method, **solver_kw)
    corr = _weights(corrected_matrix, method, **solver_kw)
    if reference == "original":
        errors = tuple(relative_error(v, va) for v, va in zip(orig, corr))
    else:
        errors = tuple(relative_error(v, va) for v, va in zip(corr, orig))
    return ComparisonReport(orig, corr, errors, reference, scale, method)


def sweep(M_raw, scales=DEFAULT_SWEEP_SCALES, method="gm", **solver_kw):
    """Corrected weights across scale upper limits, ordered by ascending ``m``."""
    M_raw = as_pc_matrix(M_raw)
    n = M_raw.n
    rows = []
    for m in sorted(float(s) for s in scales):
        w = _weights(normalize_matrix(M_raw, RatingScale(m)), method, **solver_kw)
        dev = float(np.max(np.abs(np.asarray(w) - 1.0 / n)))
        rows.append(SweepRow(m, w, dev))
    return rows
