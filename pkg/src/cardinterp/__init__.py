"""Cardinal interpolation on integer lattices.

Builds fundamental functions for polyharmonic, Gaussian and multiquadric
interpolators, applies them to lattice data, and measures recovery of
band-limited functions as the family parameter grows.
"""

from ._backend import backend_name
from .families import (
    GAUSSIAN,
    MULTIQUADRIC_ALPHA,
    MULTIQUADRIC_C,
    POLYHARMONIC,
    FamilySpec,
    m_ratio,
    log_phi_hat,
    periodization,
    phi_hat,
    regularity_report,
)
from .fundamental import (
    FrequencyGrid,
    FundamentalFunction,
    build_lhat,
    cardinality_check,
    decay_check,
    eval_L,
    eval_L_batch,
    lhat_sup_distance_to_char,
)
from .interpolation import LatticeData, interpolate, interpolate_grid, lp_stability
from .paleywiener import BandlimitedFunction, eval_f, l2_distance, sample_lattice
from .convergence import SweepPlan, SweepResult, judge, run_sweep
from .specfun import BesselEvalConfig, bessel_k, bessel_k_scaled

__version__ = "0.1.0"

__all__ = [
    "BandlimitedFunction",
    "BesselEvalConfig",
    "FamilySpec",
    "FrequencyGrid",
    "FundamentalFunction",
    "GAUSSIAN",
    "LatticeData",
    "MULTIQUADRIC_ALPHA",
    "MULTIQUADRIC_C",
    "POLYHARMONIC",
    "SweepPlan",
    "SweepResult",
    "backend_name",
    "bessel_k",
    "bessel_k_scaled",
    "build_lhat",
    "cardinality_check",
    "decay_check",
    "eval_L",
    "eval_L_batch",
    "eval_f",
    "interpolate",
    "interpolate_grid",
    "judge",
    "l2_distance",
    "lhat_sup_distance_to_char",
    "log_phi_hat",
    "lp_stability",
    "m_ratio",
    "periodization",
    "phi_hat",
    "regularity_report",
    "run_sweep",
    "sample_lattice",
]
