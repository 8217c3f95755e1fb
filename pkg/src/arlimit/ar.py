"""Exact Riemann solver for the Aw-Rascle model with p(rho) = rho**gamma, 0 < gamma < 1.

The 1-family is genuinely nonlinear (shock or rarefaction), the 2-family is
a contact at xi = u.  Relative to a left state the (rho, u) quarter plane
splits into three regions:

* I   (u_r < u_l)               shock + contact
* II  (u_l <= u_r < u_l + rho_l**gamma)   rarefaction + contact
* III (u_r >= u_l + rho_l**gamma)         rarefaction + vacuum + contact

For data in region I the shock and contact merge as gamma -> 0 into a delta
shock moving at u_r with density weight rho_l (u_l - u_r) t.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import (DeltaShockProfile, Model, PrimState, RiemannData, Wave,
                   WaveFan, WaveKind, jump)
from .errors import DomainError, NotAdmissible, NotDeltaRegime, RiemannError

__all__ = [
    "DEFAULT_GAMMAS",
    "ArRegionLabel",
    "ArRegion",
    "ArLimitQuantities",
    "ArConvergenceRow",
    "ar_eigenvalues",
    "ar_wave_curve_u",
    "ar_shock_speed",
    "ar_classify",
    "ar_intermediate_log_density",
    "solve_ar_riemann",
    "ar_rarefaction_state",
    "ar_rh_residual",
    "ar_lax_holds",
    "ar_limit_quantities",
    "ar_limit_profile",
    "ar_convergence_table",
]

DEFAULT_GAMMAS = (0.6, 0.3, 0.1, 0.03, 0.01, 0.003, 0.001)

_LOG_MAX = math.log(1.7976931348623157e308)


class ArRegionLabel(str, enum.Enum):
    I = "I"
    II = "II"
    III = "III"


@dataclass(frozen=True)
class ArRegion:
    label: ArRegionLabel
    u_star_tilde: float


@dataclass(frozen=True)
class ArLimitQuantities:
    a: float
    sigma: float
    w1_rate: float
    w2_rate: float


@dataclass(frozen=True)
class ArConvergenceRow:
    gamma: float
    rho_star: float
    log_rho_star: float
    sigma1: float
    sigma2: float
    mass_integral: float


def _check_gamma(gamma):
    if not (0.0 < gamma < 1.0):
        raise DomainError(f"AR needs 0 < gamma < 1, got {gamma!r}")


def _exp_or_inf(x: float) -> float:
    return math.exp(x) if x < _LOG_MAX else math.inf


def ar_eigenvalues(s: PrimState, gamma: float) -> tuple[float, float]:
    if not s.rho > 0:
        raise DomainError(f"eigenvalues need rho > 0, got {s.rho!r}")
    return s.u - gamma * s.rho ** gamma, s.u


def ar_wave_curve_u(rho: float, left: PrimState, gamma: float) -> float:
    """Velocity on the 1-wave curve through ``left``: u = u_l - (rho**g - rho_l**g)."""
    if not rho > 0:
        raise DomainError(f"wave curve needs rho > 0, got {rho!r}")
    return left.u - (rho ** gamma - left.rho ** gamma)


def ar_shock_speed(left: PrimState, right_rho: float, gamma: float) -> float:
    if not right_rho > left.rho:
        raise NotAdmissible(
            f"1-shock needs right density above {left.rho}, got {right_rho!r}")
    u = ar_wave_curve_u(right_rho, left, gamma)
    return u - left.rho * (right_rho ** gamma - left.rho ** gamma) / (right_rho - left.rho)


def ar_classify(data: RiemannData) -> ArRegion:
    g = data.gamma
    ul, ur = data.left.u, data.right.u
    ut = ul + data.left.rho ** g
    if ur < ul:
        label = ArRegionLabel.I
    elif ur < ut:
        label = ArRegionLabel.II
    else:
        label = ArRegionLabel.III
    return ArRegion(label, ut)


def ar_intermediate_log_density(data: RiemannData) -> float:
    """log(rho*) for the state (rho*, u_r) on the 1-curve through the left state.

    Only meaningful when u_r < u_l + rho_l**gamma.
    """
    g = data.gamma
    p = data.left.rho ** g + data.left.u - data.right.u
    if not p > 0:
        raise RiemannError("no intermediate state with positive density (vacuum case)")
    return math.log(p) / g


def ar_rarefaction_state(left: PrimState, gamma: float, xi: float) -> PrimState:
    """State inside the 1-rarefaction issued from ``left`` at similarity speed ``xi``."""
    p = (left.u + left.rho ** gamma - xi) / (1.0 + gamma)
    if p <= 0.0:
        return PrimState(0.0, xi)
    return PrimState(p ** (1.0 / gamma), xi + gamma * p)


def _shock_gap(data: RiemannData, log_rho_star: float) -> float:
    # sigma2 - sigma1 = rho_l (u_l - u_r) / (rho* - rho_l), evaluated without forming rho*
    rl = data.left.rho
    du = data.left.u - data.right.u
    ratio = math.exp(math.log(rl) - log_rho_star)
    return _exp_or_inf(math.log(rl * du) - log_rho_star - math.log1p(-ratio))


def solve_ar_riemann(data: RiemannData) -> WaveFan:
    if data.model is not Model.AR:
        raise RiemannError(f"expected AR data, got {data.model.value}")
    g = data.gamma
    left, right = data.left, data.right
    region = ar_classify(data)

    if region.label is ArRegionLabel.I:
        log_rs = ar_intermediate_log_density(data)
        mid = PrimState(_exp_or_inf(log_rs), right.u)
        sigma1 = right.u - _shock_gap(data, log_rs)
        waves = [
            Wave.discontinuity(WaveKind.SHOCK, sigma1, left, mid, family=1),
            Wave.discontinuity(WaveKind.CONTACT, right.u, mid, right, family=2),
        ]
        return WaveFan(waves, [left, mid, right], data)

    head = left.u - g * left.rho ** g
    if region.label is ArRegionLabel.II:
        if right.u == left.u:
            # zero-strength rarefaction: the fan is the contact alone
            return WaveFan([Wave.discontinuity(WaveKind.CONTACT, left.u, left, right, family=2)],
                           [left, right], data)
        rs = math.exp(ar_intermediate_log_density(data))
        mid = PrimState(rs, right.u)
        tail = right.u - g * rs ** g
        waves = [
            Wave(WaveKind.RAREFACTION, head, tail, left, mid, family=1),
            Wave.discontinuity(WaveKind.CONTACT, right.u, mid, right, family=2),
        ]
        return WaveFan(waves, [left, mid, right], data)

    ut = region.u_star_tilde
    v0, v1 = PrimState(0.0, ut), PrimState(0.0, right.u)
    waves = [
        Wave(WaveKind.RAREFACTION, head, ut, left, v0, family=1),
        Wave(WaveKind.VACUUM, ut, right.u, v0, v1),
        Wave.discontinuity(WaveKind.CONTACT, right.u, v1, right, family=2),
    ]
    return WaveFan(waves, [left, v0, v1, right], data)


def _conserved(s: PrimState, g: float) -> tuple[float, float]:
    return s.rho, s.rho * s.u + s.rho ** (g + 1.0)


def _flux(s: PrimState, g: float) -> tuple[float, float]:
    y = s.rho * s.u + s.rho ** (g + 1.0)
    return s.rho * s.u, s.u * y


def ar_rh_residual(left: PrimState, right: PrimState, sigma: float, gamma: float) -> tuple[float, float]:
    """Scaled Rankine-Hugoniot residuals of a discontinuity at speed ``sigma``.

    Each component is |-sigma [U_k] + [F_k]| divided by the largest term
    magnitude entering it, so the values are comparable across scales.
    """
    ul, ur = _conserved(left, gamma), _conserved(right, gamma)
    fl, fr = _flux(left, gamma), _flux(right, gamma)
    out = []
    for k in range(2):
        terms = (sigma * ur[k], sigma * ul[k], fr[k], fl[k])
        scale = max(max(abs(t) for t in terms), 1e-300)
        out.append(abs(-sigma * (ur[k] - ul[k]) + (fr[k] - fl[k])) / scale)
    return out[0], out[1]


def ar_lax_holds(left: PrimState, right: PrimState, sigma: float, gamma: float) -> bool:
    """1-shock Lax chain: sigma < lambda1(left) and lambda1(right) < sigma < lambda2(right)."""
    l1_left, _ = ar_eigenvalues(left, gamma)
    l1_right, l2_right = ar_eigenvalues(right, gamma)
    return sigma < l1_left and l1_right < sigma < l2_right


def _require_delta(data: RiemannData):
    if not data.right.u < data.left.u:
        raise NotDeltaRegime(
            f"delta limit needs u_right < u_left, got {data.right.u} >= {data.left.u}")


def ar_limit_quantities(data: RiemannData) -> ArLimitQuantities:
    _require_delta(data)
    left, right = data.left, data.right
    sigma = right.u
    w1 = left.rho * (left.u - right.u)
    w2 = sigma * jump(data, lambda s: s.rho * s.u) - jump(data, lambda s: s.rho * s.u * s.u)
    return ArLimitQuantities(a=1.0 + left.u - right.u, sigma=sigma, w1_rate=w1, w2_rate=w2)


def ar_limit_profile(data: RiemannData) -> DeltaShockProfile:
    q = ar_limit_quantities(data)
    return DeltaShockProfile(sigma=q.sigma, w1_rate=q.w1_rate, w2_rate=q.w2_rate,
                             u_delta=data.right.u)


def ar_convergence_table(data: RiemannData, gammas: Iterable[float] = DEFAULT_GAMMAS
                         ) -> list[ArConvergenceRow]:
    """Shock/contact pair of region I for each gamma, with the mass between them.

    ``mass_integral`` is rho* (sigma2 - sigma1) = rho_l (u_l - u_r) / (1 - rho_l/rho*),
    evaluated in log space so that rho* may exceed the float range.
    """
    _require_delta(data)
    rows = []
    rl = data.left.rho
    du = data.left.u - data.right.u
    for g in gammas:
        g = float(g)
        _check_gamma(g)
        d = data.with_gamma(g)
        log_rs = ar_intermediate_log_density(d)
        gap = _shock_gap(d, log_rs)
        ratio = math.exp(math.log(rl) - log_rs)
        rows.append(ArConvergenceRow(
            gamma=g,
            rho_star=_exp_or_inf(log_rs),
            log_rho_star=log_rs,
            sigma1=d.right.u - gap,
            sigma2=d.right.u,
            mass_integral=rl * du / (1.0 - ratio),
        ))
    return rows
