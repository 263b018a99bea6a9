"""Fisher-Rao geometry of the 3-parameter Gaussian manifolds.

Coordinates are ordered ``(mu_k1, mu_k2, sigma)`` everywhere, including file
output.  The correlation ``r`` is a fixed model constant selecting which of
the two manifolds (uncorrelated / correlated) is meant.

Closed forms implemented here:

* metric: mu-block ``[[1, -r], [-r, 1]] / (sigma^2 (1 - r^2))``,
  ``g_ss = 4 / sigma^2``, no mu-sigma cross terms;
* volume density: ``sqrt(det g) = 2 / (sigma^3 sqrt(1 - r^2))``;
* connection coefficients: the only nonzero entries are
  ``G^{a}_{a s} = -1/sigma`` (a = mu_k1, mu_k2),
  ``G^{s}_{a b} = Cinv_ab / (4 sigma)`` with
  ``Cinv = [[1, -r], [-r, 1]] / (1 - r^2)``, and ``G^{s}_{s s} = -1/sigma``.

Every closed form has an independent brute-force counterpart in
:mod:`igscatter.oracle` (score-quadrature metric, finite-difference
connection, quadrature volumes).
"""

from __future__ import annotations

import numpy as np

from .models import GaussianModelParams

__all__ = [
    "COORD_NAMES",
    "fisher_metric",
    "fisher_density",
    "christoffel",
    "metric_speed_squared",
]

COORD_NAMES = ("mu_k1", "mu_k2", "sigma")


def fisher_metric(params: GaussianModelParams) -> np.ndarray:
    """Analytic Fisher-Rao metric as a symmetric (3, 3) array.

    Positive definite for every valid parameter point (sigma > 0, |r| < 1).
    """
    sigma = params.sigma
    r = params.r
    s2 = sigma * sigma
    one_m = 1.0 - r * r
    g = np.zeros((3, 3))
    g[0, 0] = g[1, 1] = 1.0 / (s2 * one_m)
    g[0, 1] = g[1, 0] = -r / (s2 * one_m)
    g[2, 2] = 4.0 / s2
    return g


def fisher_density(params: GaussianModelParams) -> float:
    """sqrt(det g): the Riemannian volume density at a parameter point."""
    sigma = params.sigma
    r = params.r
    return 2.0 / (sigma ** 3 * np.sqrt(1.0 - r * r))


def christoffel(params: GaussianModelParams) -> np.ndarray:
    """Connection coefficients gamma[k, l, m], symmetric in (l, m)."""
    sigma = params.sigma
    r = params.r
    inv_s = 1.0 / sigma
    f = 1.0 / (4.0 * sigma * (1.0 - r * r))
    gam = np.zeros((3, 3, 3))
    gam[0, 0, 2] = gam[0, 2, 0] = -inv_s
    gam[1, 1, 2] = gam[1, 2, 1] = -inv_s
    gam[2, 0, 0] = gam[2, 1, 1] = f
    gam[2, 0, 1] = gam[2, 1, 0] = -r * f
    gam[2, 2, 2] = -inv_s
    return gam


def metric_speed_squared(theta, velocity, r: float) -> float:
    """Squared metric speed g_ij v^i v^j at coordinates theta = (mu1, mu2, sigma)."""
    sigma = float(theta[2])
    v1, v2, v3 = (float(v) for v in velocity)
    s2 = sigma * sigma
    return (v1 * v1 - 2.0 * r * v1 * v2 + v2 * v2) / (s2 * (1.0 - r * r)) + 4.0 * v3 * v3 / s2
