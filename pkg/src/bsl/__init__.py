"""Boussinesq shear lab: stability numerics near Couette flow.

The package is organized by scale:

* :mod:`bsl.multipliers` -- frequency-pointwise decaying weights A, B, M = A*B
  and the capped weight H, resonant windows, mode energies, weighted norms;
* :mod:`bsl.linmodes` -- per-mode linear evolution: the no-shear eigenvalue
  dichotomy, inviscid power-law exponents with an oscillator oracle, the
  viscous moving-frame integrator with exact integrating factor, growth
  envelopes, and the frequency-coupled evolution for non-affine profiles;
* :mod:`bsl.profiles` -- temperature profiles, their derivative spectra and
  the admissibility (smallness) conditions;
* :mod:`bsl.spectral` / :mod:`bsl.sim` -- the dealiased pseudospectral
  nonlinear solver in sheared coordinates with bootstrap-norm monitoring;
* :mod:`bsl.harness` / :mod:`bsl.cli` -- sweeps, stability bisection,
  scaling fits, exports and the ``bsl`` command line.
"""

from .errors import BracketError, BslError, ConfigError, DomainError, IntegrationFailure
from .harness import (
    ExperimentConfig,
    ScalingFit,
    SweepResult,
    ThresholdResult,
    default_mode_panel,
    export,
    run_experiment,
    scaling_fit,
    stability_predicate,
    threshold_bisect,
)
from .linmodes import (
    BoundReport,
    CoupledTrajectory,
    ExponentReport,
    ModeTrajectory,
    NoShearSystem,
    classify_no_shear,
    fit_growth_exponent,
    fitted_exponent_report,
    ghost_energy,
    integrate_affine_mode,
    integrate_coupled_linear,
    integrate_schrodinger,
    inviscid_exponents,
    no_shear_eigenvalues,
    orr_ratio,
    stability_envelope,
    verify_mode_bound,
    write_trajectory_csv,
)
from .multipliers import (
    CutoffConfig,
    DissipationConfig,
    FrequencyMode,
    ModeState,
    MultiplierWeights,
    evaluate_weights,
    mode_energy,
    multiplier_A,
    multiplier_B,
    multiplier_H,
    multiplier_M,
    resonant_window,
    weighted_sobolev_norm,
)
from .profiles import (
    AdmissibilityReport,
    ProfileSpectrum,
    TemperatureProfile,
    admit,
    condition_main,
    condition_sobolev,
    kernel_bound_check,
    load_profile,
    profile_spectrum,
)
from .sim import (
    BootstrapLedger,
    SimConfig,
    SimResult,
    SimState,
    bootstrap_norms,
    build_initial_state,
    read_snapshot,
    simulate,
    time_step,
    write_snapshot,
)
from .spectral import Grid2D, SpectralField, biot_savart, nonlinear_transport, shear_split

__version__ = "0.1.0"

__all__ = [
    "BslError", "ConfigError", "DomainError", "IntegrationFailure", "BracketError",
    "FrequencyMode", "ModeState", "DissipationConfig", "CutoffConfig",
    "MultiplierWeights", "multiplier_A", "multiplier_B", "multiplier_H",
    "multiplier_M", "evaluate_weights", "resonant_window", "mode_energy",
    "weighted_sobolev_norm",
    "NoShearSystem", "ModeTrajectory", "ExponentReport", "BoundReport",
    "CoupledTrajectory", "no_shear_eigenvalues", "classify_no_shear",
    "inviscid_exponents", "integrate_schrodinger", "fit_growth_exponent",
    "fitted_exponent_report", "integrate_affine_mode", "stability_envelope",
    "verify_mode_bound", "integrate_coupled_linear", "ghost_energy", "orr_ratio",
    "write_trajectory_csv",
    "TemperatureProfile", "ProfileSpectrum", "AdmissibilityReport",
    "profile_spectrum", "condition_main", "condition_sobolev",
    "kernel_bound_check", "admit", "load_profile",
    "Grid2D", "SpectralField", "shear_split", "biot_savart", "nonlinear_transport",
    "SimConfig", "SimState", "SimResult", "BootstrapLedger", "build_initial_state",
    "time_step", "bootstrap_norms", "simulate", "write_snapshot", "read_snapshot",
    "ExperimentConfig", "SweepResult", "ThresholdResult", "ScalingFit",
    "default_mode_panel", "stability_predicate", "threshold_bisect", "scaling_fit",
    "run_experiment", "export",
]
