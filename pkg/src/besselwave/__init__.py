"""Waves in media with a Bessel-ratio memory kernel.

Special functions, the harmonic dispersion law, numerical inverse Laplace
transforms on Talbot contours and the transient step response.
"""

__version__ = "0.1.0"

from .dispersion import (
    ComplexWaveNumber,
    DispersionSample,
    MediumParams,
    dispersion_AB,
    dispersion_residual,
    dispersion_sample,
    group_velocity,
    group_velocity_semianalytic,
    k_squared,
    omega_tau_grid,
    phase_velocity,
    solve_branch,
)
from .errors import (
    BesselOverflow,
    BesselWaveError,
    BranchAmbiguity,
    BranchDegenerate,
    ComputeError,
    ConfigError,
    DenominatorUnderflow,
    InvalidOrder,
    NearPole,
    NonConvergent,
    PrecisionLoss,
    QuadratureNonFinite,
    SingularityInsideContour,
    StepTooLarge,
)
from .laplace import (
    CATALOGUE,
    TalbotConfig,
    TransformFn,
    catalogue_pair,
    convergence_study,
    invert,
    invert_grid,
    self_test,
)
from .special_functions import (
    DEFAULT_POLICY,
    EvalPolicy,
    bessel_i,
    bessel_i_scaled,
    bessel_ratio,
    bessel_recurrence_check,
    kelvin_bei,
    kelvin_ber,
)
from .transient import (
    FieldSample,
    StepResponseProblem,
    mu,
    profile,
    step_response,
    step_response_grid,
    xi_grid,
    y_tilde,
)
