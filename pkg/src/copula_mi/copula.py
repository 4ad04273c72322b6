"""Empirical copula rank transform.

Each column is replaced by its scaled ranks, i.e. the empirical CDF
evaluated at the sample points. The result is a set of pseudo-observations
in the unit hypercube: samples from the empirical copula density. Because
ranks depend only on within-column order, the transform is bit-identical
under strictly increasing per-column maps.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.stats import rankdata

from .data import SampleMatrix
from .errors import DataError

__all__ = [
    "RankScaling",
    "TiePolicy",
    "PseudoObservations",
    "empirical_cdf",
    "rank_transform",
]


class RankScaling(str, Enum):
    """Denominator for scaled ranks.

    T matches the plain empirical CDF (values reach 1.0 exactly); T+1
    keeps every pseudo-observation strictly inside the open unit cube,
    which avoids boundary effects in the neighbor-based entropy step.
    """

    T = "T"
    T_PLUS_1 = "T+1"


class TiePolicy(str, Enum):
    """How tied values are ranked.

    occurrence: ties ranked by ascending row index, so each column is a
    permutation of the rank grid and downstream neighbor distances stay
    positive. average: tied values share the mean rank, the literal
    empirical-CDF behavior, which produces coincident pseudo-observations.
    """

    OCCURRENCE = "occurrence"
    AVERAGE = "average"


@dataclass
class PseudoObservations:
    """Rank-transformed samples in (0, 1], plus how they were produced."""

    values: np.ndarray
    scaling: RankScaling
    tie_policy: TiePolicy

    def __post_init__(self):
        values = np.ascontiguousarray(self.values, dtype=np.float64)
        if values.ndim != 2:
            raise DataError("pseudo-observations must form a 2-dimensional matrix")
        if values.size and (values.min() <= 0.0 or values.max() > 1.0):
            raise DataError("pseudo-observations must lie in (0, 1]")
        self.values = values

    @property
    def T(self) -> int:
        return self.values.shape[0]

    @property
    def N(self) -> int:
        return self.values.shape[1]


def empirical_cdf(column, x: float) -> float:
    """Fraction of sample values <= x.

    Direct evaluation of the empirical distribution function of one
    column: (1/T) * #{t : column[t] <= x}.
    """
    col = np.asarray(column, dtype=np.float64).ravel()
    if col.size == 0:
        raise DataError("empirical_cdf needs a nonempty column")
    if not np.all(np.isfinite(col)):
        raise DataError("empirical_cdf needs finite values")
    return float(np.count_nonzero(col <= x)) / col.size


def _column_ranks(col: np.ndarray, tie_policy: TiePolicy) -> np.ndarray:
    if tie_policy is TiePolicy.OCCURRENCE:
        # one stable sort per column; ties fall in row order
        return rankdata(col, method="ordinal").astype(np.float64)
    return rankdata(col, method="average")


def rank_transform(
    m: SampleMatrix | np.ndarray,
    scaling: RankScaling | str = RankScaling.T_PLUS_1,
    tie_policy: TiePolicy | str = TiePolicy.OCCURRENCE,
) -> PseudoObservations:
    """Map every column to its scaled ranks.

    Entry (t, i) becomes rank(x[t, i] within column i) / den with den = T
    or T+1. Under the occurrence policy each output column is a
    permutation of {1/den, ..., T/den}; under the average policy tied
    values share the mean rank.
    """
    scaling = RankScaling(scaling)
    tie_policy = TiePolicy(tie_policy)
    values = m.values if isinstance(m, SampleMatrix) else np.ascontiguousarray(m, dtype=np.float64)
    if values.ndim != 2:
        raise DataError("rank_transform expects a T x N matrix")
    if not np.all(np.isfinite(values)):
        raise DataError("rank_transform requires finite input")
    T = values.shape[0]
    den = float(T if scaling is RankScaling.T else T + 1)
    out = np.empty_like(values)
    for j in range(values.shape[1]):
        out[:, j] = _column_ranks(values[:, j], tie_policy) / den
    return PseudoObservations(out, scaling=scaling, tie_policy=tie_policy)
