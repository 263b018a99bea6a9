"""Independent brute-force verifiers for every closed form in the package.

Nothing here reuses the analytic expression it checks: metrics come from
quadrature of the score outer product, connection coefficients from finite
differences of a metric function, volumes from 3D quadrature of the metric
determinant, and the matching-condition phase shift from a 50-digit
evaluation.  The ``run_all`` sweep backs the ``verify`` CLI command;
``consistency_suite`` adds the cross-module identity checks.

Quadrature is adaptive tensor Gauss-Legendre: the node count doubles until
successive estimates agree to the requested tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import mpmath as mp
import numpy as np

from . import complexity as _complexity
from . import geometry as _geometry
from . import scattering as _scattering
from .errors import QuadratureError
from .geodesics import GeodesicState, integrate_geodesic
from .models import GaussianModelParams, log_pdf_values, pdf_values, square_grid
from .models import qm_ig_post_correspondence, qm_ig_pre_correspondence

__all__ = [
    "OracleReport",
    "fisher_metric_quadrature",
    "christoffel_fd",
    "volume_quadrature",
    "normalization_quadrature",
    "moments_quadrature",
    "phase_shift_highprec",
    "run_all",
    "consistency_suite",
    "reports_to_json",
]

# one decade of headroom under the 1e-7 / 1e-8 assertion tolerances
QUAD_TOL = 1e-10
FD_STEP_SCALE = 1e-5


@dataclass(frozen=True)
class OracleReport:
    """Outcome of one oracle-vs-analytic comparison (aggregated over a sweep)."""

    check_name: str
    max_abs_err: float
    max_rel_err: float
    tolerance: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "check_name": self.check_name,
            "max_abs_err": self.max_abs_err,
            "max_rel_err": self.max_rel_err,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


def reports_to_json(reports: Sequence[OracleReport]) -> str:
    import json

    return json.dumps([r.to_dict() for r in reports], indent=2)


# ---------------------------------------------------------------------------
# adaptive tensor Gauss-Legendre quadrature


def _gl_axis(n: int, lo: float, hi: float) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n)
    half = 0.5 * (hi - lo)
    return lo + half * (x + 1.0), half * w


def _adaptive_quad_2d(integrand, box, tol=QUAD_TOL, n0=48, n_max=1536) -> np.ndarray:
    """Integrate a stacked integrand over a rectangle until self-consistent.

    ``integrand(K1, K2)`` must return an array of shape (m, n, n); the result
    has shape (m,).
    """
    (x_lo, x_hi), (y_lo, y_hi) = box
    prev = None
    n = n0
    while n <= n_max:
        x, wx = _gl_axis(n, x_lo, x_hi)
        y, wy = _gl_axis(n, y_lo, y_hi)
        k1, k2 = np.meshgrid(x, y, indexing="ij")
        vals = integrand(k1, k2)
        est = np.einsum("mij,i,j->m", vals, wx, wy)
        if prev is not None and np.all(np.abs(est - prev) <= tol * np.maximum(1.0, np.abs(est))):
            return est
        prev = est
        n *= 2
    raise QuadratureError(f"2D quadrature did not converge below {tol} by n={n_max}")


def _adaptive_quad_3d(integrand, box, tol=QUAD_TOL, n0=24, n_max=384) -> float:
    """Scalar 3D analogue of _adaptive_quad_2d."""
    prev = None
    n = n0
    while n <= n_max:
        axes = [_gl_axis(n, lo, hi) for lo, hi in box]
        g1, g2, g3 = np.meshgrid(axes[0][0], axes[1][0], axes[2][0], indexing="ij")
        vals = integrand(g1, g2, g3)
        est = float(np.einsum("ijk,i,j,k->", vals, axes[0][1], axes[1][1], axes[2][1]))
        if prev is not None and abs(est - prev) <= tol * max(1.0, abs(est)):
            return est
        prev = est
        n *= 2
    raise QuadratureError(f"3D quadrature did not converge below {tol} by n={n_max}")


def _model_box(params: GaussianModelParams, half_width: float = 10.0):
    s = half_width * params.sigma
    return (
        (params.mu_k1 - s, params.mu_k1 + s),
        (params.mu_k2 - s, params.mu_k2 + s),
    )


# ---------------------------------------------------------------------------
# density checks


def normalization_quadrature(params: GaussianModelParams, tol=QUAD_TOL) -> float:
    """Quadrature of the model density over a +-10 sigma box (should be 1)."""

    def integrand(k1, k2):
        return pdf_values(params, k1, k2)[None, ...]

    return float(_adaptive_quad_2d(integrand, _model_box(params), tol)[0])


def moments_quadrature(params: GaussianModelParams, tol=QUAD_TOL) -> dict:
    """First and second moments of the density by quadrature."""

    def integrand(k1, k2):
        p = pdf_values(params, k1, k2)
        d1 = k1 - params.mu_k1
        d2 = k2 - params.mu_k2
        return np.stack([p, k1 * p, k2 * p, d1 * d1 * p, d2 * d2 * p, d1 * d2 * p])

    norm, m1, m2, v1, v2, cov = _adaptive_quad_2d(integrand, _model_box(params), tol)
    return {
        "norm": float(norm),
        "mean_k1": float(m1),
        "mean_k2": float(m2),
        "var_k1": float(v1),
        "var_k2": float(v2),
        "corr": float(cov / (params.sigma * params.sigma)),
    }


# ---------------------------------------------------------------------------
# geometry oracles


def _bumped(params: GaussianModelParams, index: int, delta: float) -> GaussianModelParams:
    theta = [params.mu_k1, params.mu_k2, params.sigma]
    theta[index] += delta
    return GaussianModelParams(theta[0], theta[1], theta[2], params.r)


def _fd_steps(params: GaussianModelParams, scale: float) -> list[float]:
    return [scale * max(1.0, abs(x)) for x in (params.mu_k1, params.mu_k2, params.sigma)]


def fisher_metric_quadrature(
    params: GaussianModelParams,
    step_scale: float = FD_STEP_SCALE,
    tol: float = QUAD_TOL,
) -> np.ndarray:
    """Metric as the quadrature expectation of the score outer product.

    Scores are central finite differences of log-density in the parameters,
    so this path never touches the analytic metric formula.
    """
    steps = _fd_steps(params, step_scale)
    pairs = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]

    def integrand(k1, k2):
        p = pdf_values(params, k1, k2)
        scores = []
        for i in range(3):
            lp = log_pdf_values(_bumped(params, i, steps[i]), k1, k2)
            lm = log_pdf_values(_bumped(params, i, -steps[i]), k1, k2)
            scores.append((lp - lm) / (2.0 * steps[i]))
        return np.stack([scores[i] * scores[j] * p for i, j in pairs])

    vals = _adaptive_quad_2d(integrand, _model_box(params), tol)
    g = np.zeros((3, 3))
    for (i, j), v in zip(pairs, vals):
        g[i, j] = g[j, i] = v
    return g


def christoffel_fd(
    params: GaussianModelParams,
    metric_fn: Callable[[GaussianModelParams], np.ndarray] | None = None,
    step_scale: float = FD_STEP_SCALE,
) -> np.ndarray:
    """Connection coefficients from finite differences of a metric function.

    gamma[k, l, m] = 1/2 g^{kn} (d_l g_nm + d_m g_nl - d_n g_lm) with the
    metric derivatives taken by central differences of ``metric_fn``
    (the analytic metric by default).
    """
    if metric_fn is None:
        metric_fn = _geometry.fisher_metric
    steps = _fd_steps(params, step_scale)
    dg = np.empty((3, 3, 3))  # dg[m] = d_m g
    for m in range(3):
        gp = metric_fn(_bumped(params, m, steps[m]))
        gm = metric_fn(_bumped(params, m, -steps[m]))
        dg[m] = (gp - gm) / (2.0 * steps[m])
    ginv = np.linalg.inv(metric_fn(params))
    # bracket[n, l, m] = d_l g_nm + d_m g_nl - d_n g_lm
    bracket = (
        np.einsum("lnm->nlm", dg)
        + np.einsum("mnl->nlm", dg)
        - dg
    )
    return 0.5 * np.einsum("kn,nlm->klm", ginv, bracket)


def volume_quadrature(
    domain: _complexity.GeodesicDomain,
    r: float,
    metric_fn: Callable[[GaussianModelParams], np.ndarray] | None = None,
    tol: float = QUAD_TOL,
) -> float:
    """Box volume from 3D quadrature of sqrt(det(metric)).

    The determinant comes from a metric function evaluated pointwise (the
    analytic matrix by default), never from the closed-form volume density.
    """
    if metric_fn is None:
        metric_fn = _geometry.fisher_metric
    lo = [min(a, b) for a, b in zip(domain.lower, domain.upper)]
    hi = [max(a, b) for a, b in zip(domain.lower, domain.upper)]
    if lo[0] == hi[0] or lo[1] == hi[1] or lo[2] == hi[2]:
        return 0.0

    def integrand(m1, m2, s):
        sig = s[0, 0, :]
        dens = np.empty_like(sig)
        for i, sv in enumerate(sig):
            g = metric_fn(GaussianModelParams(0.0, 0.0, float(sv), r))
            dens[i] = math.sqrt(np.linalg.det(g))
        return np.broadcast_to(dens[None, None, :], m1.shape)

    box = [(lo[0], hi[0]), (lo[1], hi[1]), (lo[2], hi[2])]
    return _adaptive_quad_3d(integrand, box, tol)


# ---------------------------------------------------------------------------
# extended-precision phase shift


def phase_shift_highprec(cfg: _scattering.ScatteringConfig, dps: int = 50) -> float:
    """Matching-condition phase shift evaluated at ``dps`` decimal digits."""
    with mp.workdps(dps):
        mu = mp.mpf(cfg.mu_reduced)
        v = mp.mpf(cfg.V)
        d = mp.mpf(cfg.d)
        k0 = mp.mpf(cfg.k0)
        t = k0 ** 2 / (2 * mu)
        k_out = mp.sqrt(2 * mu * t)
        tb = mp.tan(k_out * d)
        if v < t:
            k_in = mp.sqrt(2 * mu * (t - v))
            num = k_out * mp.tan(k_in * d) - k_in * tb
            den = k_in + k_out * tb * mp.tan(k_in * d)
        else:
            kappa = mp.sqrt(2 * mu * (v - t))
            if kappa == 0:
                t_over = d
            else:
                t_over = mp.tanh(kappa * d) / kappa
            num = k_out * t_over - tb
            den = 1 + k_out * tb * t_over
        return float(mp.atan(num / den))


# ---------------------------------------------------------------------------
# sweeps


def _default_model_points() -> list[GaussianModelParams]:
    points = []
    for sigma in (0.5, 1.0, 2.0):
        for r in (0.0, 0.3, -0.6):
            points.append(GaussianModelParams(0.3, -0.7, sigma, r))
    return points


def _default_scattering_configs() -> list[_scattering.ScatteringConfig]:
    mk = _scattering.ScatteringConfig
    return [
        mk(mu_reduced=0.5, V=0.01, d=0.1, k0=1.0, sigma0=0.05, R0=1.0),
        mk(mu_reduced=0.5, V=0.5, d=1.0, k0=1.0, sigma0=0.05, R0=1.0),
        mk(mu_reduced=0.5, V=-0.4, d=0.7, k0=1.3, sigma0=0.05, R0=1.0),
        mk(mu_reduced=0.5, V=3.0, d=0.5, k0=1.0, sigma0=0.05, R0=1.0),  # evanescent
    ]


def _default_domains(r: float) -> list[tuple[_complexity.GeodesicDomain, float]]:
    return [
        (_complexity.GeodesicDomain((0.0, 0.0, 1.0), (1.0, 1.0, 2.0)), r),
        (_complexity.GeodesicDomain((-0.5, 0.2, 0.8), (0.75, -1.0, 1.6)), r),
    ]


def _report(name: str, abs_errs, rel_errs, tol: float) -> OracleReport:
    max_abs = float(np.max(abs_errs)) if len(abs_errs) else 0.0
    max_rel = float(np.max(rel_errs)) if len(rel_errs) else 0.0
    return OracleReport(name, max_abs, max_rel, tol, max_rel <= tol)


def _guarded(name: str, tol: float, check) -> OracleReport:
    """Run one check; any exception becomes a failed report, never an abort."""
    try:
        abs_errs, rel_errs = check()
    except Exception:  # noqa: BLE001 - failures must be collected, not raised
        return OracleReport(name, math.inf, math.inf, tol, False)
    return _report(name, abs_errs, rel_errs, tol)


def _tensor_errs(analytic: np.ndarray, numeric: np.ndarray) -> tuple[float, float]:
    diff = float(np.max(np.abs(analytic - numeric)))
    scale = float(np.max(np.abs(analytic)))
    return diff, diff / (scale if scale > 0.0 else 1.0)


def run_all(
    model_points: Sequence[GaussianModelParams] | None = None,
    scattering_configs: Sequence[_scattering.ScatteringConfig] | None = None,
    *,
    metric_fn: Callable[[GaussianModelParams], np.ndarray] | None = None,
    christoffel_fn: Callable[[GaussianModelParams], np.ndarray] | None = None,
    volume_fn=None,
    density_fn=None,
) -> list[OracleReport]:
    """Every oracle-vs-analytic pair over a parameter sweep.

    With no arguments the documented default sweep is used (sigma in
    {0.5, 1, 2} x r in {0, 0.3, -0.6}, plus four scattering configurations).
    The ``*_fn`` hooks exist for fault injection in tests: each check compares
    its brute-force oracle against the injected function instead of the
    package closed form.  Failures never abort the run; reports come back
    sorted by check name.
    """
    if not model_points:
        model_points = _default_model_points()
    if not scattering_configs:
        scattering_configs = _default_scattering_configs()
    metric_fn = metric_fn or _geometry.fisher_metric
    christoffel_fn = christoffel_fn or _geometry.christoffel
    volume_fn = volume_fn or _complexity.domain_volume
    density_fn = density_fn or _geometry.fisher_density

    def normalization_check():
        errs = [abs(normalization_quadrature(p) - 1.0) for p in model_points]
        return errs, errs

    def metric_check():
        m_abs, m_rel = [], []
        for p in model_points:
            a, rel = _tensor_errs(metric_fn(p), fisher_metric_quadrature(p))
            m_abs.append(a)
            m_rel.append(rel)
        return m_abs, m_rel

    def density_check():
        d_abs, d_rel = [], []
        for p in model_points:
            dens = density_fn(p)
            quad_dens = math.sqrt(np.linalg.det(fisher_metric_quadrature(p)))
            d_abs.append(abs(dens - quad_dens))
            d_rel.append(abs(dens - quad_dens) / abs(quad_dens))
        return d_abs, d_rel

    def christoffel_check():
        c_abs, c_rel = [], []
        for p in model_points:
            fd = christoffel_fd(p, metric_fn=metric_fn)
            a, rel = _tensor_errs(christoffel_fn(p), fd)
            c_abs.append(a)
            c_rel.append(rel)
        return c_abs, c_rel

    def volume_check():
        v_abs, v_rel = [], []
        for r in (0.0, 0.3, -0.6):
            for domain, rr in _default_domains(r):
                quad = volume_quadrature(domain, rr, metric_fn=metric_fn)
                val = volume_fn(domain, rr)
                v_abs.append(abs(val - quad))
                v_rel.append(abs(val - quad) / max(abs(quad), 1e-300))
        return v_abs, v_rel

    def phase_check():
        p_abs, p_rel = [], []
        for cfg in scattering_configs:
            ref = phase_shift_highprec(cfg)
            got = _scattering.phase_shift_exact(cfg)
            p_abs.append(abs(got - ref))
            p_rel.append(abs(got - ref) / max(abs(ref), 1e-300))
        return p_abs, p_rel

    reports = [
        _guarded("pdf_normalization", 1e-8, normalization_check),
        _guarded("fisher_metric_vs_score_quadrature", 1e-7, metric_check),
        _guarded("fisher_density_vs_quadrature_determinant", 1e-7, density_check),
        _guarded("christoffel_vs_finite_difference", 1e-6, christoffel_check),
        _guarded("domain_volume_vs_quadrature", 1e-8, volume_check),
        _guarded("phase_shift_vs_highprec", 1e-12, phase_check),
    ]
    return sorted(reports, key=lambda rep: rep.check_name)


def consistency_suite() -> list[OracleReport]:
    """Cross-module identity checks used by the verify command."""
    reports = []
    mk = _scattering.ScatteringConfig

    # wave-vector scaling identity k_in = sqrt(1 - r) k_out for V < T
    errs = []
    for v in (0.0, 0.01, 0.19, 0.5, -0.3):
        cfg = mk(mu_reduced=0.5, V=v, d=0.1, k0=1.0, sigma0=0.01, R0=5.0)
        wv = _scattering.wave_vectors(cfg)
        r = _scattering.r_ig_from_potential(cfg)
        expected = math.sqrt(1.0 - r) * wv.k_out
        errs.append(abs(wv.k_in - expected) / expected)
    reports.append(_report("wave_vector_scaling_identity", errs, errs, 1e-15))

    # potential route equals low-energy series composed with r(V)
    errs = []
    for v, d, k0 in ((0.01, 0.1, 1.0), (0.2, 0.3, 2.0), (-0.05, 0.2, 0.7)):
        cfg = mk(mu_reduced=0.5, V=v, d=d, k0=k0, sigma0=0.01, R0=5.0)
        a = _scattering.phase_shift_from_potential(cfg)
        b = _scattering.phase_shift_low_energy(
            _scattering.r_ig_from_potential(cfg), cfg.d, cfg.k0
        )
        errs.append(abs(a - b) / max(abs(a), 1e-300))
    reports.append(_report("phase_shift_potential_route_identity", errs, errs, 1e-15))

    # low-energy purity equals the general form fed with the potential phase shift
    errs = []
    for v in (1e-5, 1e-4, 5e-4):
        cfg = mk(mu_reduced=0.5, V=v, d=0.2, k0=1.0, sigma0=0.01, R0=5.0)
        a = _scattering.purity_low_energy(cfg)
        b = _scattering.purity_general(cfg, _scattering.phase_shift_from_potential(cfg))
        errs.append(abs(a - b) / abs(a))
    reports.append(_report("purity_route_consistency", errs, errs, 1e-12))

    # purity equals 1 - strength^2 under theta0 = -k0 a_s
    errs = []
    for a_s in (1e-6, 1e-5):
        cfg = mk(mu_reduced=0.5, V=1e-5, d=0.2, k0=1.0, sigma0=0.01, R0=5.0, a_s=a_s)
        strength = _scattering.r_qm(cfg)
        p = _scattering.purity_general(cfg, _scattering.phase_shift_from_a_s(a_s, cfg.k0))
        errs.append(abs(p - (1.0 - strength * strength)) / abs(p))
    reports.append(_report("purity_vs_entanglement_strength", errs, errs, 1e-12))

    # complexity-law pair reproduces the low-energy purity
    errs = []
    for v in (1e-5, 2e-5):
        cfg = mk(mu_reduced=0.5, V=v, d=0.2, k0=1.0, sigma0=0.01, R0=5.0)
        r = _scattering.r_ig_from_potential(cfg)
        c_u = 1.0
        c_c = _complexity.predicted_complexity_ratio(r) * c_u
        a = _complexity.purity_from_complexity(cfg, c_u, c_c)
        b = _scattering.purity_low_energy(cfg)
        errs.append(abs(a - b) / abs(b))
    reports.append(_report("purity_from_complexity_chain", errs, errs, 1e-12))

    # quantum and statistical densities coincide on a grid
    grid = square_grid(-5.0, 5.0, 101)
    errs = [
        qm_ig_pre_correspondence(1.0, 1.0, grid),
        qm_ig_post_correspondence(1.0, 0.1, 1e-3, grid),
        qm_ig_post_correspondence(2.0, 1.0, 0.5, grid),
    ]
    reports.append(_report("qm_ig_correspondence", errs, errs, 1e-15))

    # pure-sigma geodesic follows the exponential closed form
    state = GeodesicState((0.0, 0.0, 1.0), (0.0, 0.0, 1.0))
    path = integrate_geodesic(state, 0.0, 1.0, 1e-10)
    errs = [abs(path.theta[-1, 2] - math.e) / math.e, path.speed_drift]
    reports.append(_report("geodesic_exponential_sigma", errs, errs, 1e-8))

    # conserved speed along a generic geodesic
    state = GeodesicState((0.2, -0.4, 1.5), (0.7, -0.3, 0.4))
    drifts = [
        integrate_geodesic(state, r, 10.0, 1e-10).speed_drift for r in (0.0, 0.5)
    ]
    reports.append(_report("geodesic_speed_conservation", drifts, drifts, 1e-8))

    # matched-pair complexity ratio against the closed form
    cfg = mk(mu_reduced=0.5, V=0.1, d=0.1, k0=1.0, sigma0=0.1, R0=1.0)
    rep = _complexity.complexity_ratio(cfg)
    err = abs(rep.ratio - rep.predicted_ratio) / rep.predicted_ratio
    reports.append(_report("complexity_ratio_numeric", [err], [err], 0.02))

    # duration vanishes with the correlation
    err = abs(_scattering.entanglement_duration(1.0, 1e-3, 0.0))
    reports.append(_report("duration_zero_correlation", [err], [err], 1e-15))

    return sorted(reports, key=lambda rep: rep.check_name)
