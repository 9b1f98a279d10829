"""Rating-scale normalization and weight derivation for pairwise comparison matrices."""

from .core import (
    JudgmentSet,
    PCMatrix,
    RatingScale,
    RawJudgment,
    Triad,
    consistent_matrix,
    is_consistent,
    matrix_from_judgments,
    max_triad_deviation,
    triads,
    validate_reciprocity,
)
from .exceptions import (
    BadScale,
    ConvergenceWarning,
    ConvexityBoundWarning,
    DimensionMismatch,
    DuplicatePair,
    MissingPair,
    NonPositiveValue,
    NotConverged,
    NotReciprocal,
    PCError,
    ValueOutOfScale,
)
from .normalization import (
    CorrectionTable,
    ScaleNormalizer,
    correction_table,
    normalize_entry,
    normalize_matrix,
    normalize_value,
)
from .paradox import ComparisonReport, SweepRow, compare, relative_error, scale_position, sweep
from .weights import (
    FulopSolution,
    FulopWeights,
    GeometricMeanWeights,
    WeightVector,
    fulop_constant,
    fulop_gradient,
    fulop_objective,
    fulop_univariate,
    fulop_univariate_derivative,
    fulop_weights,
    geometric_mean_weights,
)

__version__ = "0.1.0"
