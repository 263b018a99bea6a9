"""Bivariate Gaussian momentum-space models for a two-particle collision.

Two statistical models live here: an uncorrelated equal-width Gaussian pair
(the pre-collision configuration) and its correlated counterpart (the
post-collision configuration).  Both share a common momentum width ``sigma``
and a correlation coefficient ``r`` (``r = 0`` selects the uncorrelated
model).  The quantum square amplitudes of the collision are the same
functional forms with the means pinned to the incident momenta ``(+k0, -k0)``;
the correspondence checks below quantify that identification on a grid.

Coordinate convention used everywhere in this package: a model point is
``(mu_k1, mu_k2, sigma)`` with ``r`` treated as a fixed model constant, not a
manifold coordinate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ModelParameterError

__all__ = [
    "CORRELATION_CAP",
    "GaussianModelParams",
    "MomentumPair",
    "pdf",
    "pdf_values",
    "log_pdf_values",
    "pre_collision_amplitude",
    "post_collision_amplitude",
    "qm_ig_pre_correspondence",
    "qm_ig_post_correspondence",
    "square_grid",
]

# Construction cap on |r|: covariance conditioning degrades like 1/(1 - r^2),
# and every result in this package lives in the weak-correlation regime.
CORRELATION_CAP = 0.999


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ModelParameterError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class GaussianModelParams:
    """A point on the 3-parameter statistical manifold, plus the fixed correlation.

    Attributes:
        mu_k1: mean of the first momentum coordinate.
        mu_k2: mean of the second momentum coordinate.
        sigma: common momentum width, strictly positive.
        r: correlation coefficient; |r| < 0.999, 0 selects the uncorrelated model.
    """

    mu_k1: float
    mu_k2: float
    sigma: float
    r: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "mu_k1", _require_finite("mu_k1", self.mu_k1))
        object.__setattr__(self, "mu_k2", _require_finite("mu_k2", self.mu_k2))
        object.__setattr__(self, "sigma", _require_finite("sigma", self.sigma))
        object.__setattr__(self, "r", _require_finite("r", self.r))
        if self.sigma <= 0.0:
            raise ModelParameterError(f"sigma must be > 0, got {self.sigma}")
        if abs(self.r) >= CORRELATION_CAP:
            raise ModelParameterError(
                f"|r| must be < {CORRELATION_CAP} (near-singular covariance), got {self.r}"
            )

    @property
    def theta(self) -> tuple[float, float, float]:
        """Manifold coordinates in the fixed ordering (mu_k1, mu_k2, sigma)."""
        return (self.mu_k1, self.mu_k2, self.sigma)


@dataclass(frozen=True)
class MomentumPair:
    """A single (k1, k2) momentum sample."""

    k1: float
    k2: float

    def __post_init__(self):
        object.__setattr__(self, "k1", _require_finite("k1", self.k1))
        object.__setattr__(self, "k2", _require_finite("k2", self.k2))


def pdf_values(params: GaussianModelParams, k1, k2) -> np.ndarray:
    """Vectorized density of the (possibly correlated) equal-width Gaussian pair.

    ``k1`` and ``k2`` may be scalars or broadcastable arrays.
    """
    k1 = np.asarray(k1, dtype=float)
    k2 = np.asarray(k2, dtype=float)
    d1 = k1 - params.mu_k1
    d2 = k2 - params.mu_k2
    r = params.r
    sigma = params.sigma
    one_m = 1.0 - r * r
    z = (d1 * d1 - 2.0 * r * d1 * d2 + d2 * d2) / (2.0 * sigma * sigma * one_m)
    return np.exp(-z) / (2.0 * np.pi * sigma * sigma * np.sqrt(one_m))


def log_pdf_values(params: GaussianModelParams, k1, k2) -> np.ndarray:
    """Log-density; stable in far tails where the density itself underflows."""
    k1 = np.asarray(k1, dtype=float)
    k2 = np.asarray(k2, dtype=float)
    d1 = k1 - params.mu_k1
    d2 = k2 - params.mu_k2
    r = params.r
    sigma = params.sigma
    one_m = 1.0 - r * r
    z = (d1 * d1 - 2.0 * r * d1 * d2 + d2 * d2) / (2.0 * sigma * sigma * one_m)
    return -z - np.log(2.0 * np.pi * sigma * sigma * np.sqrt(one_m))


def pdf(params: GaussianModelParams, k: MomentumPair | Sequence[float]) -> float:
    """Probability density at a single momentum pair (units: momentum^-2).

    Strictly positive for all finite inputs.
    """
    if isinstance(k, MomentumPair):
        k1, k2 = k.k1, k.k2
    else:
        k1, k2 = float(k[0]), float(k[1])
    return float(pdf_values(params, k1, k2))


def pre_collision_amplitude(k1, k2, k0: float, sigma0: float) -> np.ndarray:
    """Pre-collision two-particle square amplitude with incident momenta (+k0, -k0)."""
    k1 = np.asarray(k1, dtype=float)
    k2 = np.asarray(k2, dtype=float)
    d1 = k1 - k0
    d2 = k2 + k0
    z = (d1 * d1 + d2 * d2) / (2.0 * sigma0 * sigma0)
    return np.exp(-z) / (2.0 * np.pi * sigma0 * sigma0)


def post_collision_amplitude(k1, k2, k0: float, sigma0: float, r_qm: float) -> np.ndarray:
    """Post-collision square amplitude in the low-energy s-wave approximation.

    Reduces to the pre-collision amplitude when ``r_qm`` vanishes.
    """
    k1 = np.asarray(k1, dtype=float)
    k2 = np.asarray(k2, dtype=float)
    d1 = k1 - k0
    d2 = k2 + k0
    one_m = 1.0 - r_qm * r_qm
    z = (d1 * d1 - 2.0 * r_qm * d1 * d2 + d2 * d2) / (2.0 * sigma0 * sigma0 * one_m)
    return np.exp(-z) / (2.0 * np.pi * sigma0 * sigma0 * np.sqrt(one_m))


def _grid_columns(grid) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(grid, np.ndarray):
        arr = np.asarray(grid, dtype=float)
    else:
        pts = list(grid)
        if pts and isinstance(pts[0], MomentumPair):
            arr = np.array([(p.k1, p.k2) for p in pts], dtype=float)
        else:
            arr = np.asarray(pts, dtype=float)
    if arr.size == 0:
        raise ModelParameterError("correspondence grid must be non-empty")
    arr = arr.reshape(-1, 2)
    return arr[:, 0], arr[:, 1]


def qm_ig_pre_correspondence(k0: float, sigma0: float, grid) -> float:
    """Max |quantum - statistical| density difference over a grid, pre-collision.

    The statistical side is the uncorrelated model with means matched to
    (+k0, -k0) and width sigma0.  The two expressions are the same functional
    form, so the result is zero to machine precision.
    """
    k1, k2 = _grid_columns(grid)
    qm = pre_collision_amplitude(k1, k2, k0, sigma0)
    ig = pdf_values(GaussianModelParams(k0, -k0, sigma0, 0.0), k1, k2)
    return float(np.max(np.abs(qm - ig)))


def qm_ig_post_correspondence(k0: float, sigma0: float, r: float, grid) -> float:
    """Max |quantum - statistical| density difference over a grid, post-collision.

    The correlated model with means (+k0, -k0), width sigma0 and correlation r
    coincides with the post-collision amplitude at equal correlation for any
    |r| < 1, not only weak correlations; the difference is machine zero.
    """
    k1, k2 = _grid_columns(grid)
    qm = post_collision_amplitude(k1, k2, k0, sigma0, r)
    ig = pdf_values(GaussianModelParams(k0, -k0, sigma0, r), k1, k2)
    return float(np.max(np.abs(qm - ig)))


def square_grid(lo: float = -5.0, hi: float = 5.0, n: int = 101) -> np.ndarray:
    """(n*n, 2) array of momentum pairs on a uniform square grid."""
    axis = np.linspace(lo, hi, n)
    kk1, kk2 = np.meshgrid(axis, axis, indexing="ij")
    return np.column_stack([kk1.ravel(), kk2.ravel()])
