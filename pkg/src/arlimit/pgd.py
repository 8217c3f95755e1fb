"""Exact Riemann solver for zero-pressure gas dynamics.

    rho_t + (rho u)_x = 0,    (rho u)_t + (rho u^2)_x = 0

Diverging data open a vacuum, equal velocities give a single contact and
converging data (u_left > u_right) produce a delta shock.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import (DeltaShockProfile, Model, PrimState, RiemannData, Wave,
                   WaveFan, WaveKind, jump)
from .errors import NonPositiveDensity, RiemannError

__all__ = ["GrhResidual", "pgd_delta_profile", "solve_pgd_riemann", "grh_residual"]


@dataclass(frozen=True)
class GrhResidual:
    r_position: float
    r_mass: float
    r_momentum: float

    def max(self) -> float:
        return max(self.r_position, self.r_mass, self.r_momentum)


def pgd_delta_profile(left: PrimState, right: PrimState) -> DeltaShockProfile:
    """Delta shock connecting ``left`` to ``right`` (requires u_left > u_right)."""
    sl, sr = math.sqrt(left.rho), math.sqrt(right.rho)
    sigma = (sr * right.u + sl * left.u) / (sr + sl)
    w1 = math.sqrt(left.rho * right.rho) * (left.u - right.u)
    w2 = (sigma * (right.momentum - left.momentum)
          - (right.rho * right.u ** 2 - left.rho * left.u ** 2))
    return DeltaShockProfile(sigma=sigma, w1_rate=w1, w2_rate=w2, u_delta=sigma)


def solve_pgd_riemann(data: RiemannData) -> WaveFan:
    if data.model is not Model.PGD:
        raise RiemannError(f"expected PGD data, got {data.model.value}")
    left, right = data.left, data.right
    if left.rho <= 0 or right.rho <= 0:
        raise NonPositiveDensity("PGD solver needs positive densities")

    if left.u < right.u:
        vl, vr = PrimState(0.0, left.u), PrimState(0.0, right.u)
        waves = [
            Wave.discontinuity(WaveKind.CONTACT, left.u, left, vl),
            Wave(WaveKind.VACUUM, left.u, right.u, vl, vr),
            Wave.discontinuity(WaveKind.CONTACT, right.u, vr, right),
        ]
        return WaveFan(waves, [left, vl, vr, right], data)
    if left.u == right.u:
        return WaveFan([Wave.discontinuity(WaveKind.CONTACT, left.u, left, right)],
                       [left, right], data)
    profile = pgd_delta_profile(left, right)
    wave = Wave.discontinuity(WaveKind.DELTA, profile.sigma, left, right, profile=profile)
    return WaveFan([wave], [left, right], data)


def grh_residual(profile: DeltaShockProfile, data: RiemannData) -> GrhResidual:
    """Residuals of the generalized Rankine-Hugoniot ODEs for a straight delta shock.

    With x(t) = sigma t and w(t) = w1_rate t the left-hand sides are
    sigma, w1_rate and sigma*w1_rate; the right-hand sides come from the
    jumps of the data.
    """
    sigma, w1 = profile.sigma, profile.w1_rate
    j_rho = jump(data, lambda s: s.rho)
    j_m = jump(data, lambda s: s.rho * s.u)
    j_mu = jump(data, lambda s: s.rho * s.u * s.u)
    return GrhResidual(
        r_position=0.0 if math.isfinite(sigma) else math.inf,
        r_mass=abs(w1 - (sigma * j_rho - j_m)),
        r_momentum=abs(sigma * w1 - (sigma * j_m - j_mu)),
    )
