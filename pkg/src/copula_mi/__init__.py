"""Mutual information estimation via empirical copula entropy.

The pipeline: rank-transform samples to pseudo-observations of the
empirical copula, estimate that distribution's differential entropy with
a k-nearest-neighbor estimator, and negate. A Kraskov-style bivariate
estimator and a correlated-Gaussian benchmark sweep round out the kit.
"""

from .copula import PseudoObservations, RankScaling, TiePolicy, empirical_cdf, rank_transform
from .data import (
    ColumnSpec,
    Finding,
    SampleMatrix,
    coincident_row_groups,
    parse_csv,
    read_csv,
    to_csv,
    validate,
)
from .errors import CoincidentPointsError, DataError, EstimationError
from .estimators import (
    EntropyEstimate,
    EstimatorConfig,
    MIEstimate,
    copula_entropy,
    decomposition_residual,
    digamma,
    kl_entropy,
    mi_copula,
    mi_ksg,
)
from .knn import Backend, NeighborResult, NormKind, count_within, kth_neighbor_distances
from .sweep import SweepConfig, SweepResult, SweepRow, run_sweep, sweep_to_csv, sweep_to_json
from .synth import GaussianSpec, gaussian_mi_analytic, gaussian_sample

__version__ = "0.1.0"

__all__ = [
    "Backend",
    "ColumnSpec",
    "CoincidentPointsError",
    "DataError",
    "EntropyEstimate",
    "EstimationError",
    "EstimatorConfig",
    "Finding",
    "GaussianSpec",
    "MIEstimate",
    "NeighborResult",
    "NormKind",
    "PseudoObservations",
    "RankScaling",
    "SampleMatrix",
    "SweepConfig",
    "SweepResult",
    "SweepRow",
    "TiePolicy",
    "coincident_row_groups",
    "copula_entropy",
    "count_within",
    "decomposition_residual",
    "digamma",
    "empirical_cdf",
    "gaussian_mi_analytic",
    "gaussian_sample",
    "kl_entropy",
    "kth_neighbor_distances",
    "mi_copula",
    "mi_ksg",
    "parse_csv",
    "rank_transform",
    "read_csv",
    "run_sweep",
    "sweep_to_csv",
    "sweep_to_json",
    "to_csv",
    "validate",
]
