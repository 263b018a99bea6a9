"""igscatter: collision-induced entanglement observables and the
information geometry of the underlying Gaussian statistical manifolds.

The package models the head-on collision of two Gaussian wave packets by an
uncorrelated (pre-collision) and a correlated (post-collision) bivariate
Gaussian momentum model, computes the Fisher-Rao geometry and geodesic flow
of both manifolds, and connects the scattering observables (phase shift,
purity, entanglement duration) to the information-geometric complexity of
the corresponding geodesic motion.  A brute-force oracle layer independently
verifies every closed form.
"""

from ._kernels import backend_name
from .complexity import (
    ComplexityReport,
    GeodesicDomain,
    complexity_ratio,
    domain_volume,
    eta_complexity,
    igc,
    predicted_complexity_ratio,
    purity_from_complexity,
    r_from_complexities,
)
from .errors import (
    ConfigError,
    GeodesicIntegrationError,
    IgscatterError,
    ModelParameterError,
    PhaseShiftBranchError,
    QuadratureError,
    RegimeWarning,
    SeriesDomainError,
    TargetNotReachedError,
)
from .geodesics import (
    GeodesicPath,
    GeodesicState,
    collision_initial_state,
    duration_numeric,
    geodesic_rhs,
    integrate_geodesic,
    matched_pair_initial_states,
    momentum_attainment_time,
)
from .geometry import christoffel, fisher_density, fisher_metric, metric_speed_squared
from .models import (
    GaussianModelParams,
    MomentumPair,
    pdf,
    pdf_values,
    post_collision_amplitude,
    pre_collision_amplitude,
    qm_ig_post_correspondence,
    qm_ig_pre_correspondence,
    square_grid,
)
from .oracle import (
    OracleReport,
    christoffel_fd,
    consistency_suite,
    fisher_metric_quadrature,
    normalization_quadrature,
    phase_shift_highprec,
    run_all,
    volume_quadrature,
)
from .scattering import (
    PhaseShiftReport,
    ScatteringConfig,
    WaveVectors,
    a_s_from_phase_shift,
    cross_section,
    entanglement_duration,
    eta_delta,
    phase_shift_exact,
    phase_shift_from_a_s,
    phase_shift_from_potential,
    phase_shift_low_energy,
    phase_shift_report,
    purity_general,
    purity_low_energy,
    r_ig_from_potential,
    r_qm,
    r_qm_value,
    r_upper_bound,
    wave_vectors,
)

__version__ = "0.1.0"
