"""Numerical laboratory for the hyperbolic Burgers equation.

Simulates mu v_tt + v_t + v v_x = nu v_xx for compactly supported initial
data and verifies, at desk scale, the computable objects of its blow-up
theory: finite propagation speed, the moment growth identity, the
Cauchy-Schwarz moment bound, blow-up certificates built from an explicit
ODE minorant, energy / Sobolev-type diagnostics, and sup-norm divergence
for certified initial data.
"""

from .errors import (
    CalibrationError,
    ConfigError,
    DomainError,
    EstimatorError,
    HyperburgError,
    ParameterError,
)
from .model import (
    ModelParams,
    WaveSpeed,
    derive_wave_speed,
    moment_thresholds,
    validate_params,
)
from .initial_data import (
    ProfileSpec,
    amplitude_for_sup_norm,
    bump_max_abs,
    bump_profile,
    calibrate,
    calibrated_profile,
    sample_initial_state,
)
from .solver import (
    Grid,
    GridState,
    RunOutcome,
    RunStatus,
    check_domain_margin,
    default_blowup_threshold,
    estimate_blowup_time,
    integrate,
    rhs,
    sample_trajectory,
    stable_dt,
    step_rk4,
)
from .diagnostics import (
    ConeSpec,
    DiagnosticsRecord,
    cone_max,
    energy,
    gronwall_check_E1,
    identity_residual,
    moment_F,
    moment_Fprime,
    schwartz_gap,
    sobolev_norms,
    sup_norm,
    support_interval,
)
from .certificate import (
    Certificate,
    OracleResult,
    aux_ode_oracle,
    build_certificate,
    check_moment_thresholds,
    comparison_check,
    epsilon_conditions_hold,
    epsilon_interval,
    g_closed_form,
    t_star,
)
from .config import ICConfig, OutputConfig, RunConfig, config_from_dict, load_config
from .runner import RunReport, execute_config
from .suite import PRESET_NAMES, SuiteCheck, run_suite

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "HyperburgError", "ParameterError", "ConfigError", "CalibrationError",
    "DomainError", "EstimatorError",
    # model
    "ModelParams", "WaveSpeed", "validate_params", "derive_wave_speed",
    "moment_thresholds",
    # initial data
    "ProfileSpec", "bump_profile", "bump_max_abs", "amplitude_for_sup_norm",
    "calibrate", "calibrated_profile", "sample_initial_state",
    # solver
    "Grid", "GridState", "RunStatus", "RunOutcome", "stable_dt", "rhs",
    "step_rk4", "integrate", "sample_trajectory", "estimate_blowup_time",
    "check_domain_margin", "default_blowup_threshold",
    # diagnostics
    "DiagnosticsRecord", "ConeSpec", "moment_F", "moment_Fprime", "energy",
    "sup_norm", "support_interval", "schwartz_gap", "identity_residual",
    "gronwall_check_E1", "sobolev_norms", "cone_max",
    # certificate
    "Certificate", "OracleResult", "check_moment_thresholds",
    "epsilon_conditions_hold", "epsilon_interval", "g_closed_form", "t_star",
    "aux_ode_oracle", "comparison_check", "build_certificate",
    # config / runner / suite
    "ICConfig", "OutputConfig", "RunConfig", "config_from_dict", "load_config",
    "RunReport", "execute_config", "PRESET_NAMES", "SuiteCheck", "run_suite",
]
