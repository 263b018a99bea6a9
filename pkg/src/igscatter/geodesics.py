"""Geodesic motion on the Gaussian statistical manifolds.

The geodesic equations for coordinates ``theta = (mu_k1, mu_k2, sigma)`` with
fixed correlation ``r`` are

    mu_a'' = (2 / sigma) mu_a' sigma'          (a = 1, 2)
    sigma'' = sigma'^2 / sigma
              - (mu_1'^2 - 2 r mu_1' mu_2' + mu_2'^2) / (4 sigma (1 - r^2))

Integration is delegated to an adaptive embedded Runge-Kutta kernel
(compiled when available, pure-Python otherwise; see ``igscatter._kernels``).
The conserved metric speed g_ij v^i v^j is tracked along every trajectory and
its worst relative drift is reported on the returned path, never discarded.

This module also hosts the momentum-attainment experiment: matched pairs of
correlated / uncorrelated trajectories are launched from the same point with
the same metric speed, the correlated launch having its momentum velocities
scaled by sqrt(1 - r).  The correlated momentum then saturates at
sqrt(1 - r) * k0 (the momentum gap), and the extra statistical time it needs
to enter the attainment band around the full target k0 is the numerical
entanglement duration.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import IO

import numpy as np

from . import _kernels
from .errors import (
    GeodesicIntegrationError,
    ModelParameterError,
    TargetNotReachedError,
)
from .geometry import metric_speed_squared

__all__ = [
    "GeodesicState",
    "GeodesicPath",
    "PATH_CSV_HEADER",
    "geodesic_rhs",
    "integrate_geodesic",
    "momentum_attainment_time",
    "duration_numeric",
    "collision_initial_state",
    "matched_pair_initial_states",
]

PATH_CSV_HEADER = ("tau", "mu_k1", "mu_k2", "sigma", "dmu_k1", "dmu_k2", "dsigma", "speed2")


def _check_r(r: float) -> float:
    r = float(r)
    if not math.isfinite(r) or abs(r) >= 1.0:
        raise ModelParameterError(f"correlation must satisfy |r| < 1, got {r}")
    return r


@dataclass(frozen=True)
class GeodesicState:
    """Phase-space point of the geodesic flow at statistical time tau."""

    theta: tuple[float, float, float]
    velocity: tuple[float, float, float]
    tau: float = 0.0

    def __post_init__(self):
        theta = tuple(float(x) for x in self.theta)
        velocity = tuple(float(x) for x in self.velocity)
        if len(theta) != 3 or len(velocity) != 3:
            raise ModelParameterError("theta and velocity must have 3 components")
        for x in theta + velocity + (self.tau,):
            if not math.isfinite(x):
                raise ModelParameterError("geodesic state components must be finite")
        if theta[2] <= 0.0:
            raise ModelParameterError(f"sigma must be > 0, got {theta[2]}")
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "velocity", velocity)
        object.__setattr__(self, "tau", float(self.tau))

    @property
    def mu_k1(self) -> float:
        return self.theta[0]

    @property
    def sigma(self) -> float:
        return self.theta[2]

    def speed_squared(self, r: float) -> float:
        return metric_speed_squared(self.theta, self.velocity, r)


@dataclass(frozen=True)
class GeodesicPath:
    """Sampled geodesic trajectory at the integrator's accepted steps.

    ``speed_drift`` is the worst relative deviation of the conserved squared
    speed from its initial value over the whole path.
    """

    tau: np.ndarray
    theta: np.ndarray
    velocity: np.ndarray
    speed2: np.ndarray
    speed_drift: float
    r: float
    n_rejected: int = 0

    def __len__(self) -> int:
        return self.tau.shape[0]

    def state(self, i: int) -> GeodesicState:
        return GeodesicState(tuple(self.theta[i]), tuple(self.velocity[i]), float(self.tau[i]))

    @property
    def samples(self) -> list[GeodesicState]:
        return [self.state(i) for i in range(len(self))]

    def write_csv(self, target: IO[str] | str) -> None:
        """Write the path in the fixed column order of PATH_CSV_HEADER."""
        if isinstance(target, str):
            with open(target, "w", newline="") as fh:
                self.write_csv(fh)
            return
        writer = csv.writer(target)
        writer.writerow(PATH_CSV_HEADER)
        for i in range(len(self)):
            row = [self.tau[i], *self.theta[i], *self.velocity[i], self.speed2[i]]
            writer.writerow([repr(float(x)) for x in row])


def geodesic_rhs(state: GeodesicState, r: float) -> tuple[float, float, float]:
    """Coordinate accelerations of the geodesic flow at the given state."""
    r = _check_r(r)
    sigma = state.theta[2]
    v1, v2, v3 = state.velocity
    a1 = 2.0 * v1 * v3 / sigma
    a2 = 2.0 * v2 * v3 / sigma
    a3 = (v3 * v3 - (v1 * v1 - 2.0 * r * v1 * v2 + v2 * v2) / (4.0 * (1.0 - r * r))) / sigma
    return (a1, a2, a3)


def _speed2_array(theta: np.ndarray, velocity: np.ndarray, r: float) -> np.ndarray:
    s2 = theta[:, 2] ** 2
    v1 = velocity[:, 0]
    v2 = velocity[:, 1]
    v3 = velocity[:, 2]
    return (v1 * v1 - 2.0 * r * v1 * v2 + v2 * v2) / (s2 * (1.0 - r * r)) + 4.0 * v3 * v3 / s2


def _raise_for_status(status: int, taus: np.ndarray, ys: np.ndarray):
    last_tau = float(taus[-1])
    last_state = GeodesicState(tuple(ys[-1, :3]), tuple(ys[-1, 3:]), last_tau)
    if status == _kernels.STATUS_SIGMA_FLOOR:
        raise GeodesicIntegrationError(
            f"sigma would cross zero near tau={last_tau}", last_tau, last_state
        )
    if status == _kernels.STATUS_STEP_UNDERFLOW:
        raise GeodesicIntegrationError(
            f"step size underflow near tau={last_tau}", last_tau, last_state
        )
    raise GeodesicIntegrationError(
        f"step budget exhausted near tau={last_tau}", last_tau, last_state
    )


def _integrate_raw(y0, r, tau0, tau_end, rtol, atol, max_step, max_steps):
    status, taus, ys, n_rej = _kernels.integrate(
        list(y0), r, tau0, tau_end, rtol, atol, max_step, max_steps
    )
    if status != _kernels.STATUS_OK:
        _raise_for_status(status, taus, ys)
    return taus, ys, n_rej


def integrate_geodesic(
    initial: GeodesicState,
    r: float,
    tau_max: float,
    tol: float = 1e-10,
    *,
    rtol: float | None = None,
    atol: float | None = None,
    max_step: float = math.inf,
    max_steps: int = 2_000_000,
) -> GeodesicPath:
    """Integrate a geodesic from ``initial`` up to statistical time ``tau_max``.

    ``tol`` sets the relative local error target; the absolute floor defaults
    to ``tol * 1e-3``.  Raises GeodesicIntegrationError (carrying the last
    valid state) if sigma would cross zero or the step size underflows.
    """
    r = _check_r(r)
    tau_max = float(tau_max)
    if tau_max < 0.0:
        raise ModelParameterError("tau_max must be >= 0")
    if tol <= 0.0:
        raise ModelParameterError("tol must be > 0")
    if rtol is None:
        rtol = float(tol)
    if atol is None:
        atol = float(tol) * 1e-3

    y0 = [*initial.theta, *initial.velocity]
    taus, ys, n_rej = _integrate_raw(
        y0, r, initial.tau, initial.tau + tau_max, rtol, atol, max_step, max_steps
    )
    theta = ys[:, :3].copy()
    velocity = ys[:, 3:].copy()
    speed2 = _speed2_array(theta, velocity, r)
    ref = speed2[0]
    denom = abs(ref) if abs(ref) > 1e-300 else 1.0
    drift = float(np.max(np.abs(speed2 - ref)) / denom)
    return GeodesicPath(taus, theta, velocity, speed2, drift, r, n_rej)


def momentum_attainment_time(
    initial: GeodesicState,
    r: float,
    target: float,
    epsilon: float,
    *,
    tau_max: float = 200.0,
    tol: float = 1e-11,
) -> float:
    """Smallest tau at which |mu_k1(tau) - target| <= epsilon * |target|.

    The first bracketing pair of accepted samples is refined by bisection on
    re-integrated sub-intervals.  Raises TargetNotReachedError if the band is
    not entered by ``tau_max``.
    """
    r = _check_r(r)
    epsilon = float(epsilon)
    if not 0.0 < epsilon <= 0.1:
        raise ModelParameterError(f"epsilon must be in (0, 0.1], got {epsilon}")
    target = float(target)
    band = epsilon * abs(target)

    def hit(mu1: float) -> bool:
        return abs(mu1 - target) <= band

    if hit(initial.theta[0]):
        return 0.0

    rtol = float(tol)
    atol = rtol * 1e-3
    y0 = [*initial.theta, *initial.velocity]
    taus, ys, _ = _integrate_raw(
        y0, r, initial.tau, initial.tau + float(tau_max), rtol, atol, math.inf, 2_000_000
    )
    mu1 = ys[:, 0]
    inside = np.abs(mu1 - target) <= band
    idx = np.flatnonzero(inside)
    if idx.size == 0:
        last = GeodesicState(tuple(ys[-1, :3]), tuple(ys[-1, 3:]), float(taus[-1]))
        raise TargetNotReachedError(
            f"momentum target {target} (band {band}) not reached by tau={taus[-1]}",
            float(taus[-1]),
            last,
        )
    i = int(idx[0])
    if i == 0:
        return 0.0

    lo = float(taus[i - 1])
    hi = float(taus[i])
    y_lo = list(ys[i - 1])
    # bisection on the flow between the bracketing accepted samples
    tau_tol = 1e-12 * (abs(hi) if abs(hi) > 1.0 else 1.0)
    while hi - lo > tau_tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        _, ys_mid, _ = _integrate_raw(y_lo, r, lo, mid, rtol, atol, math.inf, 2_000_000)
        y_mid = ys_mid[-1]
        if hit(float(y_mid[0])):
            hi = mid
        else:
            lo = mid
            y_lo = list(y_mid)
    return hi - initial.tau


def collision_initial_state(k0: float, sigma0: float) -> GeodesicState:
    """Unit-speed launch state for the reference (uncorrelated) collision run.

    The trajectory starts at (0, 0, sigma0) and follows the unique geodesic
    whose momentum coordinates saturate at (+k0, -k0).  In the half-plane
    coordinates (sqrt(2) mu, 2 sigma) this is the semicircle from (0, 2 sigma0)
    to the boundary point (sqrt(2) k0, 0), traversed at unit metric speed.
    """
    k0 = float(k0)
    sigma0 = float(sigma0)
    if k0 <= 0.0 or sigma0 <= 0.0:
        raise ModelParameterError("k0 and sigma0 must be > 0")
    length = math.sqrt(2.0) * k0
    y0 = 2.0 * sigma0
    rho = (length * length + y0 * y0) / (2.0 * length)
    tanh_phi0 = (y0 * y0 - length * length) / (y0 * y0 + length * length)
    sech_phi0 = y0 / rho
    # metric speed 1 corresponds to half-plane arc speed 1/2
    dm = 0.5 * rho * sech_phi0 * sech_phi0
    dy = -0.5 * rho * sech_phi0 * tanh_phi0
    dmu1 = dm / math.sqrt(2.0)
    return GeodesicState((0.0, 0.0, sigma0), (dmu1, -dmu1, 0.5 * dy))


def matched_pair_initial_states(
    k0: float, sigma0: float, r: float
) -> tuple[GeodesicState, GeodesicState]:
    """Launch states for a matched uncorrelated / correlated run pair.

    Both states share theta(0) and the initial metric speed measured in each
    manifold's own metric; the correlated launch scales the momentum velocity
    components by sqrt(1 - r), so its momentum excursions are exactly
    sqrt(1 - r) times the uncorrelated ones with an identical sigma history.
    """
    r = _check_r(r)
    uncorr = collision_initial_state(k0, sigma0)
    scale = math.sqrt(1.0 - r)
    v1, v2, v3 = uncorr.velocity
    corr = GeodesicState(uncorr.theta, (scale * v1, scale * v2, v3))
    return uncorr, corr


def _attainment_horizon(k0: float, sigma0: float, margin: float) -> float:
    """Generous tau horizon for an attainment run with relative gap ``margin``."""
    length = math.sqrt(2.0) * k0
    y0 = 2.0 * sigma0
    rho = (length * length + y0 * y0) / (2.0 * length)
    phi0 = math.atanh((y0 * y0 - length * length) / (y0 * y0 + length * length))
    approach = 0.5 * math.log(2.0 * rho / (length * margin))
    return 3.0 * (2.0 * (approach - phi0)) + 10.0


def duration_numeric(
    k0: float,
    sigma0: float,
    r: float,
    epsilon: float = 1e-3,
    *,
    tol: float = 1e-11,
) -> float:
    """Numerical entanglement duration tau_corr - tau_uncorr.

    Runs the matched pair of attainment experiments against the full momentum
    target k0.  Zero at r = 0 and monotone non-decreasing in r on the valid
    range.  Raises TargetNotReachedError when the momentum gap exceeds the
    attainment band (1 - epsilon >= sqrt(1 - r)).
    """
    from .scattering import r_upper_bound  # local import avoids a module cycle

    r = float(r)
    if r < 0.0:
        raise ModelParameterError(f"r must be >= 0, got {r}")
    bound = r_upper_bound(k0, sigma0)
    if r >= bound:
        raise ModelParameterError(
            f"r={r} is at or beyond the duration upper bound {bound}"
        )
    epsilon = float(epsilon)
    if not 0.0 < epsilon <= 0.1:
        raise ModelParameterError(f"epsilon must be in (0, 0.1], got {epsilon}")
    gap_ok = (1.0 - epsilon) < math.sqrt(1.0 - r)
    if not gap_ok:
        raise TargetNotReachedError(
            f"momentum gap at r={r} exceeds the attainment band epsilon={epsilon}"
        )
    uncorr, corr = matched_pair_initial_states(k0, sigma0, r)
    margin = 1.0 - (1.0 - epsilon) / math.sqrt(1.0 - r)
    horizon = _attainment_horizon(k0, sigma0, margin)
    tau_u = momentum_attainment_time(
        uncorr, 0.0, k0, epsilon, tau_max=horizon, tol=tol
    )
    tau_c = momentum_attainment_time(corr, r, k0, epsilon, tau_max=horizon, tol=tol)
    return tau_c - tau_u
