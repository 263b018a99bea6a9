"""Physical layer: s-wave scattering off a square potential and the
entanglement observables it induces.

Units: hbar = 1, with masses, momenta and lengths in mutually consistent
natural units.  The potential is constant (height V > 0 repulsive, depth
V < 0 attractive) over range d and zero beyond it; the relative motion has
reduced mass mu = m / 2 and kinetic energy T = k0^2 / (2 mu).

Key relations implemented here:

* wave vectors: k_out = k0, k_in = sqrt(2 mu (T - V)); for V >= T the run is
  evanescent and kappa = sqrt(2 mu (V - T)) is carried instead;
* the correlation induced by the potential, r = 2 mu V / k0^2, which makes
  k_in = sqrt(1 - r) k_out an exact identity;
* the matching-condition phase shift (exact), its low-energy series
  -(1/3) r d^3 k0^3, and the equivalent potential form -(2/3) mu V d^3 k0;
* cross section, purity of the post-collision pair, the duration gain factor
  eta_delta, the admissible correlation bound, and the closed-form
  entanglement duration.
"""

from __future__ import annotations

import dataclasses
import json
import math
import warnings
from dataclasses import dataclass

from .errors import (
    ConfigError,
    ModelParameterError,
    PhaseShiftBranchError,
    RegimeWarning,
    SeriesDomainError,
)

__all__ = [
    "LOW_ENERGY_KD_MAX",
    "WEAK_CORRELATION_MAX",
    "ScatteringConfig",
    "WaveVectors",
    "PhaseShiftReport",
    "wave_vectors",
    "r_ig_from_potential",
    "r_qm",
    "r_qm_value",
    "phase_shift_exact",
    "phase_shift_low_energy",
    "phase_shift_from_potential",
    "phase_shift_report",
    "cross_section",
    "purity_general",
    "purity_low_energy",
    "eta_delta",
    "r_upper_bound",
    "entanglement_duration",
    "a_s_from_phase_shift",
    "phase_shift_from_a_s",
]

# trusted-regime thresholds for the low-energy series and weak correlations
LOW_ENERGY_KD_MAX = 0.05
WEAK_CORRELATION_MAX = 0.01

_CONFIG_KEYS = ("mu_reduced", "V", "d", "k0", "sigma0", "R0")
_OPTIONAL_KEYS = ("a_s",)


@dataclass(frozen=True)
class ScatteringConfig:
    """Physical inputs of a collision run.

    ``a_s`` (the s-wave scattering length) is optional; it is only needed for
    the entanglement-strength parameter r_qm.
    """

    mu_reduced: float
    V: float
    d: float
    k0: float
    sigma0: float
    R0: float
    a_s: float | None = None

    def __post_init__(self):
        for name in _CONFIG_KEYS:
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ConfigError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
        for name in ("mu_reduced", "d", "k0", "sigma0", "R0"):
            if getattr(self, name) <= 0.0:
                raise ConfigError(f"{name} must be > 0, got {getattr(self, name)}")
        if self.a_s is not None:
            a_s = float(self.a_s)
            if not math.isfinite(a_s):
                raise ConfigError(f"a_s must be finite, got {a_s!r}")
            object.__setattr__(self, "a_s", a_s)

    @property
    def kinetic_energy(self) -> float:
        """Relative-motion kinetic energy T = k0^2 / (2 mu)."""
        return self.k0 * self.k0 / (2.0 * self.mu_reduced)

    @classmethod
    def from_dict(cls, data: dict) -> "ScatteringConfig":
        if not isinstance(data, dict):
            raise ConfigError(f"config must be a JSON object, got {type(data).__name__}")
        unknown = sorted(set(data) - set(_CONFIG_KEYS) - set(_OPTIONAL_KEYS))
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
        missing = sorted(set(_CONFIG_KEYS) - set(data))
        if missing:
            raise ConfigError(f"missing config keys: {', '.join(missing)}")
        for key, value in data.items():
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ConfigError(f"config key {key} must be a finite number")
        return cls(**data)

    @classmethod
    def from_json(cls, path: str) -> "ScatteringConfig":
        try:
            with open(path) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        out = {name: getattr(self, name) for name in _CONFIG_KEYS}
        if self.a_s is not None:
            out["a_s"] = self.a_s
        return out

    def replace(self, **changes) -> "ScatteringConfig":
        return dataclasses.replace(self, **changes)


@dataclass(frozen=True)
class WaveVectors:
    """Wave vectors outside / inside the potential region.

    In the evanescent regime (V >= T) ``k_in`` is None and ``kappa`` carries
    the decay constant sqrt(2 mu (V - T)); kappa == 0 marks the threshold.
    """

    k_out: float
    k_in: float | None
    kappa: float
    evanescent: bool


@dataclass(frozen=True)
class PhaseShiftReport:
    """Phase shift computed along all three routes, with regime flags."""

    theta_exact: float
    theta_low_energy: float
    theta_potential: float
    regime_low_energy: bool
    regime_weak_correlation: bool

    @property
    def regime_ok(self) -> bool:
        return self.regime_low_energy and self.regime_weak_correlation


def wave_vectors(cfg: ScatteringConfig) -> WaveVectors:
    """Wave vectors (k_in, k_out) of the relative motion.

    k_in = sqrt(1 - r) k_out holds exactly for V < T with r = 2 mu V / k0^2.
    """
    t = cfg.kinetic_energy
    k_out = math.sqrt(2.0 * cfg.mu_reduced * t)
    if cfg.V < t:
        k_in = math.sqrt(2.0 * cfg.mu_reduced * (t - cfg.V))
        return WaveVectors(k_out, k_in, 0.0, False)
    kappa = math.sqrt(2.0 * cfg.mu_reduced * (cfg.V - t))
    return WaveVectors(k_out, None, kappa, True)


def r_ig_from_potential(cfg: ScatteringConfig) -> float:
    """Correlation coefficient induced by the potential: 2 mu V / k0^2."""
    return 2.0 * cfg.mu_reduced * cfg.V / (cfg.k0 * cfg.k0)


def r_qm_value(k0: float, sigma0: float, R0: float, a_s: float) -> float:
    """Entanglement-strength parameter sqrt(8 (2 k0^2 + sigma0^2) R0 a_s).

    Rejects a negative radicand (a_s < 0 has no real-valued strength) and
    warns when the result leaves the weak-entanglement regime (>= 0.1).
    """
    radicand = 8.0 * (2.0 * k0 * k0 + sigma0 * sigma0) * R0 * a_s
    if radicand < 0.0:
        raise ModelParameterError(
            f"negative radicand {radicand} (attractive a_s) has no real strength"
        )
    value = math.sqrt(radicand)
    if value >= 0.1:
        warnings.warn(
            f"entanglement strength {value:.4g} >= 0.1 is outside the weak regime",
            RegimeWarning,
            stacklevel=2,
        )
    return value


def r_qm(cfg: ScatteringConfig) -> float:
    """Entanglement strength of a configured run; requires a_s."""
    if cfg.a_s is None:
        raise ConfigError("a_s is required for r_qm (see a_s_from_phase_shift)")
    return r_qm_value(cfg.k0, cfg.sigma0, cfg.R0, cfg.a_s)


def _tanhc(x: float) -> float:
    """tanh(x) / x, stable through x = 0."""
    if abs(x) < 1e-4:
        x2 = x * x
        return 1.0 - x2 / 3.0 + 2.0 * x2 * x2 / 15.0
    return math.tanh(x) / x


def phase_shift_exact(cfg: ScatteringConfig) -> float:
    """Phase shift from the matching condition at the potential edge.

    Principal branch (-pi/2, pi/2).  For V >= T the propagating form is
    analytically continued (tan(k_in d) -> tanh-form); that regime is flagged
    by wave_vectors and lies outside the low-energy results.  A singular
    denominator (branch boundary) raises PhaseShiftBranchError.
    """
    wv = wave_vectors(cfg)
    b = wv.k_out * cfg.d
    tb = math.tan(b)
    if not wv.evanescent:
        a = wv.k_in * cfg.d
        ta = math.tan(a)
        num = wv.k_out * ta - wv.k_in * tb
        den = wv.k_in + wv.k_out * tb * ta
    else:
        # continuation k_in -> i kappa; tanh(kappa d)/kappa is stable at kappa=0
        t_over = cfg.d * _tanhc(wv.kappa * cfg.d)
        num = wv.k_out * t_over - tb
        den = 1.0 + wv.k_out * tb * t_over
    if not (math.isfinite(num) and math.isfinite(den)) or den == 0.0:
        raise PhaseShiftBranchError(
            f"matching condition singular at k0*d={b} (branch boundary)"
        )
    ratio = num / den
    if not math.isfinite(ratio):
        raise PhaseShiftBranchError(
            f"matching condition singular at k0*d={b} (branch boundary)"
        )
    return math.atan(ratio)


def phase_shift_low_energy(r: float, d: float, k0: float) -> float:
    """Low-energy series phase shift -(1/3) r d^3 k0^3."""
    return -(1.0 / 3.0) * r * d ** 3 * k0 ** 3


def phase_shift_from_potential(cfg: ScatteringConfig) -> float:
    """Potential form -(2/3) mu V d^3 k0; equals the low-energy series with
    r = 2 mu V / k0^2 substituted."""
    return -(2.0 / 3.0) * cfg.mu_reduced * cfg.V * cfg.d ** 3 * cfg.k0


def phase_shift_report(cfg: ScatteringConfig) -> PhaseShiftReport:
    """All three phase-shift routes plus regime flags for a configuration."""
    r = r_ig_from_potential(cfg)
    return PhaseShiftReport(
        theta_exact=phase_shift_exact(cfg),
        theta_low_energy=phase_shift_low_energy(r, cfg.d, cfg.k0),
        theta_potential=phase_shift_from_potential(cfg),
        regime_low_energy=cfg.k0 * cfg.d <= LOW_ENERGY_KD_MAX,
        regime_weak_correlation=abs(r) <= WEAK_CORRELATION_MAX,
    )


def cross_section(theta0: float, k0: float) -> float:
    """s-wave cross section 4 pi |f|^2 with small-angle amplitude f = theta0 / k0."""
    if k0 <= 0.0:
        raise ModelParameterError(f"k0 must be > 0, got {k0}")
    f = theta0 / k0
    return 4.0 * math.pi * f * f


def purity_general(cfg: ScatteringConfig, theta0: float) -> float:
    """Post-collision purity 1 - 4 (2 k0^2 + sigma0^2) R0 sqrt(S0) / sqrt(pi).

    The subtracted term is first order in sqrt(S0); when it exceeds 0.1 the
    truncation is untrusted and a RegimeWarning is emitted.  No clamping:
    out-of-range values deliberately signal regime violations.
    """
    s0 = cross_section(theta0, cfg.k0)
    term = 4.0 * (2.0 * cfg.k0 ** 2 + cfg.sigma0 ** 2) * cfg.R0 * math.sqrt(s0) / math.sqrt(math.pi)
    if term > 0.1:
        warnings.warn(
            f"purity correction {term:.4g} > 0.1: first-order truncation untrusted",
            RegimeWarning,
            stacklevel=2,
        )
    return 1.0 - term


def purity_low_energy(cfg: ScatteringConfig) -> float:
    """Low-energy purity 1 - (16/3) mu V (2 k0^2 + sigma0^2) R0 d^3.

    Valid for repulsive potentials in the low-energy, weak-correlation
    regime; values outside [0, 1] are returned unclamped with a warning.
    """
    p = 1.0 - (16.0 / 3.0) * cfg.mu_reduced * cfg.V * (
        2.0 * cfg.k0 ** 2 + cfg.sigma0 ** 2
    ) * cfg.R0 * cfg.d ** 3
    if p < 0.0 or p > 1.0:
        warnings.warn(
            f"purity {p:.4g} outside [0, 1] signals a regime violation",
            RegimeWarning,
            stacklevel=2,
        )
    return p


def eta_delta(k0: float, sigma0: float) -> float:
    """Duration gain factor (k0/sigma0)^2 exp[(sigma0/k0)^2 - (3/4)(sigma0/k0)^4].

    The series behind the exponential is truncated at the displayed order and
    only trusted for sigma0/k0 < 0.3.
    """
    if k0 <= 0.0 or sigma0 <= 0.0:
        raise ModelParameterError("k0 and sigma0 must be > 0")
    x = sigma0 / k0
    if x >= 0.3:
        raise SeriesDomainError(
            f"sigma0/k0 = {x} >= 0.3: truncated series diverges"
        )
    x2 = x * x
    return math.exp(x2 - 0.75 * x2 * x2) / x2


def r_upper_bound(k0: float, sigma0: float) -> float:
    """Admissible-correlation bound 2 / eta_delta(k0, sigma0)."""
    return 2.0 / eta_delta(k0, sigma0)


def entanglement_duration(k0: float, sigma0: float, r: float) -> float:
    """Closed-form entanglement duration |ln(1 - ((1-r)^(-1/2) - 1) eta_delta)|.

    The overall proportionality constant is fixed to 1, so durations are
    comparable among themselves but carry no absolute normalisation.  The
    logarithm argument must stay positive, which restricts r to [0, bound)
    with bound ~ 2 / eta_delta.
    """
    r = float(r)
    if r < 0.0:
        raise ModelParameterError(f"r must be >= 0, got {r}")
    if r >= 1.0:
        raise ModelParameterError(f"r must be < 1, got {r}")
    eta = eta_delta(k0, sigma0)
    gap = math.expm1(-0.5 * math.log1p(-r))  # (1-r)^(-1/2) - 1, accurate for small r
    x = gap * eta
    if x >= 1.0:
        raise ModelParameterError(
            f"r={r} is at or beyond the duration upper bound (~{2.0 / eta})"
        )
    return abs(math.log1p(-x))


def a_s_from_phase_shift(theta0: float, k0: float) -> float:
    """Scattering length from the low-energy identification theta0 = -k0 a_s."""
    if k0 <= 0.0:
        raise ModelParameterError(f"k0 must be > 0, got {k0}")
    return -theta0 / k0


def phase_shift_from_a_s(a_s: float, k0: float) -> float:
    """Phase shift from the low-energy identification theta0 = -k0 a_s."""
    if k0 <= 0.0:
        raise ModelParameterError(f"k0 must be > 0, got {k0}")
    return -k0 * a_s
