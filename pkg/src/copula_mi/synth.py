"""Synthetic correlated Gaussian data and its closed-form MI.

Sampling is counter-based so identical seeds reproduce identical streams
on every platform: draw j of a stream is SplitMix64(seed + (j+1) * GAMMA)
mapped to a uniform in (0, 1], and normals come from the Box-Muller
transform of uniform pairs. No global RNG state is involved.
"""

import math
from dataclasses import dataclass

import numpy as np

from .data import SampleMatrix
from .errors import DataError

__all__ = [
    "GaussianSpec",
    "gaussian_sample",
    "gaussian_mi_analytic",
]

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_U64 = np.uint64(0xFFFFFFFFFFFFFFFF)
_TWO_NEG53 = 2.0 ** -53


@dataclass(frozen=True)
class GaussianSpec:
    """Two correlated standard Gaussians: covariance rho, T draws, a seed."""

    rho: float
    T: int
    seed: int

    def __post_init__(self):
        if not abs(self.rho) < 1.0:
            raise DataError(f"|rho| must be < 1, got {self.rho}")
        if self.T < 2:
            raise DataError(f"need at least 2 samples, got {self.T}")


def _splitmix64(counters: np.ndarray) -> np.ndarray:
    z = counters
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


def _uniform_open(seed: int, start: int, count: int) -> np.ndarray:
    """count uniforms in (0, 1] from stream positions start..start+count-1."""
    seed64 = np.uint64(seed & 0xFFFFFFFFFFFFFFFF)
    steps = (np.arange(start + 1, start + count + 1, dtype=np.uint64)) & _U64
    states = seed64 + steps * _GAMMA  # wraps mod 2^64
    bits = _splitmix64(states)
    return ((bits >> np.uint64(11)).astype(np.float64) + 1.0) * _TWO_NEG53


def _standard_normals(seed: int, first_draw: int, count: int) -> np.ndarray:
    """count N(0,1) draws from the 2*count stream positions starting at
    2*first_draw: one block of count uniforms for the radius, one for the
    angle."""
    u1 = _uniform_open(seed, 2 * first_draw, count)
    u2 = _uniform_open(seed, 2 * first_draw + count, count)
    return np.sqrt(-2.0 * np.log(u1)) * np.cos((2.0 * math.pi) * u2)


def gaussian_sample(spec: GaussianSpec) -> SampleMatrix:
    """T i.i.d. draws of (X, Y) with X ~ N(0,1), Y = rho X + sqrt(1-rho^2) Z.

    Deterministic given the seed: the same spec always yields a
    bit-identical matrix.
    """
    x = _standard_normals(spec.seed, 0, spec.T)
    z = _standard_normals(spec.seed, spec.T, spec.T)
    y = spec.rho * x + math.sqrt(1.0 - spec.rho * spec.rho) * z
    return SampleMatrix(np.column_stack((x, y)))


def gaussian_mi_analytic(rho: float) -> float:
    """Closed-form MI of two standard Gaussians with covariance rho:
    -(1/2) ln(1 - rho^2), in nats."""
    if not abs(rho) < 1.0:
        raise DataError(f"|rho| must be < 1, got {rho}")
    return -0.5 * math.log(1.0 - rho * rho)
