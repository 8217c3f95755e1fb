"""Exact Riemann solvers and a WENO5 scheme for the delta-shock limits of the
Aw-Rascle (gamma -> 0) and perturbed Aw-Rascle (gamma -> 1) traffic models."""

from .core import (DeltaShockProfile, Model, OnDeltaShock, PrimState, RiemannData, Wave,
                   WaveFan, WaveKind, eval_self_similar, jump)
from .errors import (NoConvergence, NonMonotone, NotAdmissible, NotDeltaRegime,
                     RegionMismatch, RiemannError, UnstableBlowup)
from .pgd import grh_residual, pgd_delta_profile, solve_pgd_riemann
from .ar import (ar_classify, ar_convergence_table, ar_limit_profile, ar_limit_quantities,
                 solve_ar_riemann)
from .par import (ParRegion, par_convergence_table, par_in_region_IV, par_limit_profile,
                  par_limit_quantities, solve_par_riemann)

__version__ = "0.1.0"

__all__ = [
    "DeltaShockProfile", "Model", "OnDeltaShock", "PrimState", "RiemannData", "Wave",
    "WaveFan", "WaveKind", "eval_self_similar", "jump",
    "NoConvergence", "NonMonotone", "NotAdmissible", "NotDeltaRegime", "RegionMismatch",
    "RiemannError", "UnstableBlowup",
    "grh_residual", "pgd_delta_profile", "solve_pgd_riemann",
    "ar_classify", "ar_convergence_table", "ar_limit_profile", "ar_limit_quantities",
    "solve_ar_riemann",
    "ParRegion", "par_convergence_table", "par_in_region_IV", "par_limit_profile",
    "par_limit_quantities", "solve_par_riemann",
]
