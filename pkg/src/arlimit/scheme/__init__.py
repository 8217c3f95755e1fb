"""Fifth-order WENO / SSP-RK3 shock-capturing solver for the AR and PAR systems."""

from .kernels import BACKEND, available_backends
from .weno import weno5_reconstruct
from .solver import (ARSystem, ConcentrationSummary, Field, Grid, LinearAdvection,
                     PARSystem, SimReport, conserved_from_primitive, detect_delta_concentration,
                     evolve, exact_profile, find_discontinuities, primitive_from_conserved,
                     run_simulation, system_for)

__all__ = [
    "BACKEND", "available_backends", "weno5_reconstruct", "ARSystem", "PARSystem",
    "LinearAdvection", "ConcentrationSummary", "Field", "Grid", "SimReport",
    "conserved_from_primitive", "primitive_from_conserved", "detect_delta_concentration",
    "evolve", "exact_profile", "find_discontinuities", "run_simulation", "system_for",
]
