"""Exact Riemann solver for the perturbed Aw-Rascle (PAR) system, 1 < gamma < 3.

    rho_t + (rho u)_x = 0
    (rho u + rho**gamma / gamma)_t + (rho u**2 + u rho**gamma)_x = 0

Both families are genuinely nonlinear for gamma close to one.  The
intermediate state is the crossing of the forward 1-wave curve through the
left state (T1, decreasing in rho) with the backward 2-wave curve through
the right state (T2, increasing in rho).  Shock branches are located by
bracketed root finding on the implicit Hugoniot relation; the quadratic
closed form is kept only as a cross-check (:func:`par_shock_u_closed_form`).

For u_r < u_l and gamma -> 1 the two shocks merge into the delta shock of
zero-pressure gas dynamics.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from typing import Iterable

from scipy.optimize import brentq

from .core import (DeltaShockProfile, Model, PrimState, RiemannData, Wave,
                   WaveFan, WaveKind, bisect, jump)
from .errors import (BranchError, DomainError, NegativeRadicand, NegativeRoot,
                     NegativeVelocity, NoConvergence, NotDeltaRegime,
                     RegionMismatch, RiemannError)
from .pgd import pgd_delta_profile

__all__ = [
    "ParRegion",
    "ParLimitQuantities",
    "ParConvergenceRow",
    "ParValidityWarning",
    "DEFAULT_PAR_GAMMAS",
    "par_eigenvalues",
    "par_rarefaction_u",
    "par_shock_locus_residual",
    "par_shock_u",
    "par_shock_u_closed_form",
    "par_forward_curve",
    "par_backward_curve",
    "solve_par_riemann",
    "par_rarefaction_state",
    "par_rh_residual",
    "par_lax_holds",
    "par_in_region_IV",
    "par_limit_quantities",
    "par_limit_profile",
    "par_convergence_table",
]

DEFAULT_PAR_GAMMAS = (1.4, 1.1, 1.04, 1.01, 1.001)

_RTOL = 1e-14
_MAXITER = 200
_EXPAND_CAP = 2.0 ** 60


class ParRegion(str, enum.Enum):
    R1R2 = "R1R2"
    S1R2 = "S1R2"
    R1S2 = "R1S2"
    S1S2 = "S1S2"
    R1VacR2 = "R1VacR2"


class ParValidityWarning(UserWarning):
    """Raised when gamma is too far from one for the wave curves to behave."""


@dataclass(frozen=True)
class ParLimitQuantities:
    a: float
    sigma: float
    w1_rate: float
    w2_rate: float


@dataclass(frozen=True)
class ParConvergenceRow:
    gamma: float
    rho_star: float
    u_star: float
    sigma1_bar: float
    sigma2_bar: float
    mass_integral: float
    scaled_pressure: float


# --------------------------------------------------------------------- helpers

def _pow_diff(a: float, b: float, p: float) -> float:
    """a**p - b**p without cancellation for small p (a, b > 0)."""
    if a == b:
        return 0.0
    return b ** p * math.expm1(p * (math.log(a) - math.log(b)))


def _q(rho: float, g: float) -> float:
    # sqrt(rho**(g-1) / (g-1)); the R1/R2 Riemann invariants are sqrt(u) -/+ q
    if rho <= 0.0:
        return 0.0
    return math.sqrt(rho ** (g - 1.0) / (g - 1.0))


def _sound(rho: float, u: float, g: float) -> float:
    return math.sqrt((g - 1.0) * rho ** (g - 1.0) * u)


def _radicand(base: PrimState, rho: float, u: float, g: float) -> float:
    """Radicand of the Hugoniot locus through ``base`` evaluated at (rho, u)."""
    rb, ub = base.rho, base.u
    t1 = (g - 1.0) * (1.0 / rb - 1.0 / rho) * (rho ** g * u - rb ** g * ub)
    t2 = (ub - u) * _pow_diff(rho, rb, g - 1.0)
    return (t1 + t2) / g


def _expand_root(f, x0: float, step: float, direction: float) -> float:
    """Walk from x0 in ``direction`` with doubling steps until f changes sign; brentq."""
    f0 = f(x0)
    if f0 == 0.0:
        return x0
    x_prev, step_ = x0, step
    for _ in range(_MAXITER):
        x = x0 + direction * step_
        fx = f(x)
        if (fx > 0) != (f0 > 0) or fx == 0.0:
            a, b = sorted((x_prev, x))
            return brentq(f, a, b, xtol=1e-300, rtol=_RTOL, maxiter=_MAXITER)
        x_prev = x
        step_ *= 2.0
    raise NoConvergence("could not bracket the Hugoniot root")


# ----------------------------------------------------------------- public ops

def par_eigenvalues(s: PrimState, gamma: float) -> tuple[float, float]:
    if not s.rho > 0:
        raise DomainError(f"eigenvalues need rho > 0, got {s.rho!r}")
    if s.u < 0:
        raise DomainError(f"eigenvalues are complex for u < 0, got {s.u!r}")
    c = _sound(s.rho, s.u, gamma)
    return s.u - c, s.u + c


def par_rarefaction_u(rho: float, left: PrimState, gamma: float, family: int) -> float:
    """u on the rarefaction curve of ``family`` issued from ``left`` (left state of the fan)."""
    if family == 1:
        if rho > left.rho:
            raise BranchError("1-rarefaction needs rho <= rho_left")
        s = math.sqrt(left.u) + _q(left.rho, gamma) - _q(rho, gamma)
    elif family == 2:
        if rho < left.rho:
            raise BranchError("2-rarefaction needs rho >= rho_left")
        s = math.sqrt(left.u) + _q(rho, gamma) - _q(left.rho, gamma)
    else:
        raise BranchError(f"family must be 1 or 2, got {family!r}")
    if s < 0:
        raise NegativeRoot("rarefaction curve requires sqrt(u) < 0")
    return s * s


def par_shock_locus_residual(left: PrimState, cand: PrimState, gamma: float) -> float:
    """(u - u_l) + sqrt(radicand): zero iff ``cand`` is on the Hugoniot locus through ``left``."""
    if cand == left:
        return 0.0
    if cand.u > left.u:
        raise BranchError("shock locus is defined for u < u_left")
    r = _radicand(left, cand.rho, cand.u, gamma)
    if r < 0:
        raise NegativeRadicand(f"radicand {r!r} < 0 at {cand}")
    return (cand.u - left.u) + math.sqrt(r)


def par_shock_u(rho: float, left: PrimState, gamma: float) -> float:
    """u with u < u_left on the Hugoniot locus through ``left`` (S1 if rho > rho_l, S2 if rho < rho_l)."""
    if rho == left.rho:
        return left.u

    def h(u):
        return (u - left.u) ** 2 - _radicand(left, rho, u, gamma)

    scale = max(abs(left.u), 1.0)
    return _expand_root(h, left.u, scale, -1.0)


def par_shock_u_closed_form(rho: float, left: PrimState, gamma: float) -> float:
    """Quadratic-root form of the Hugoniot locus (cross-check only)."""
    rl, ul, g = left.rho, left.u, gamma
    d = rho ** g - rl ** g
    b = (rho ** g * (rho - rl) - rho / g * d) / (2.0 * rho * rl)
    c = (1.0 - 1.0 / g) * ul / (rho * rl) * d * (rho - rl)
    return ul + b - math.sqrt(b * b + c)


def _back_s2_u(rho: float, right: PrimState, g: float) -> float:
    # states (rho, u), rho > rho_r, u > u_r, joined to ``right`` by a 2-shock
    if rho == right.rho:
        return right.u

    def h(u):
        return (right.u - u) ** 2 - _radicand(PrimState(rho, u), right.rho, right.u, g)

    scale = max(abs(right.u), 1.0)
    return _expand_root(h, right.u, scale, 1.0)


def par_forward_curve(rho: float, left: PrimState, gamma: float) -> float:
    """T1: u reachable from ``left`` by a 1-wave (R1 for rho <= rho_l, S1 above)."""
    if rho <= left.rho:
        s = math.sqrt(left.u) + _q(left.rho, gamma) - _q(rho, gamma)
        return s * s
    return par_shock_u(rho, left, gamma)


def par_backward_curve(rho: float, right: PrimState, gamma: float) -> float:
    """T2: u of states joined to ``right`` by a 2-wave (R2 for rho <= rho_r, S2 above).

    Where the rarefaction branch would need sqrt(u) < 0 the signed value
    -s**2 is returned, keeping T2 continuous and increasing for bracketing.
    """
    if rho <= right.rho:
        s = math.sqrt(right.u) - _q(right.rho, gamma) + _q(rho, gamma)
        return math.copysign(s * s, s)
    return _back_s2_u(rho, right, gamma)


def par_rarefaction_state(wave: Wave, gamma: float, xi: float) -> PrimState:
    """Invert xi = lambda_k(rho, u) along a rarefaction wave by bisection on rho."""
    g = gamma
    if wave.family == 1:
        base = wave.left_state
        lo, hi = wave.right_state.rho, base.rho

        def curve(r):
            return par_rarefaction_u(r, base, g, 1)

        def lam(r):
            u = curve(r)
            return u - _sound(r, u, g)
    else:
        base = wave.right_state
        lo, hi = wave.left_state.rho, base.rho
        sb = math.sqrt(base.u) - _q(base.rho, g)

        def curve(r):
            s = sb + _q(r, g)
            return s * s

        def lam(r):
            u = curve(r)
            return u + _sound(r, u, g)

    rho = bisect(lambda r: lam(r) - xi, lo, hi, rtol=1e-12, maxiter=200)
    return PrimState(rho, curve(rho))


def _conserved(s: PrimState, g: float) -> tuple[float, float]:
    return s.rho, s.rho * s.u + s.rho ** g / g


def _flux(s: PrimState, g: float) -> tuple[float, float]:
    return s.rho * s.u, s.rho * s.u * s.u + s.u * s.rho ** g


def par_rh_residual(left: PrimState, right: PrimState, sigma: float, gamma: float) -> tuple[float, float]:
    """Rankine-Hugoniot residuals scaled by the largest term entering each equation."""
    ul, ur = _conserved(left, gamma), _conserved(right, gamma)
    fl, fr = _flux(left, gamma), _flux(right, gamma)
    out = []
    for k in range(2):
        terms = (sigma * ur[k], sigma * ul[k], fr[k], fl[k])
        scale = max(max(abs(t) for t in terms), 1e-300)
        out.append(abs(-sigma * (ur[k] - ul[k]) + (fr[k] - fl[k])) / scale)
    return out[0], out[1]


def par_lax_holds(left: PrimState, right: PrimState, sigma: float, gamma: float, family: int) -> bool:
    k = family - 1
    return par_eigenvalues(right, gamma)[k] < sigma < par_eigenvalues(left, gamma)[k]


def _genuinely_nonlinear(s: PrimState, g: float) -> bool:
    return (g + 1.0) * math.sqrt(s.u) > (g - 1.0) * _q(s.rho, g)


def _monotone_on(f, a: float, b: float, increasing: bool, n: int = 12) -> bool:
    xs = [a + (b - a) * i / n for i in range(n + 1)]
    ys = [f(x) for x in xs]
    if increasing:
        return all(y1 > y0 for y0, y1 in zip(ys, ys[1:]))
    return all(y1 < y0 for y0, y1 in zip(ys, ys[1:]))


def _shock_speed(a: PrimState, b: PrimState) -> float:
    return (b.rho * b.u - a.rho * a.u) / (b.rho - a.rho)


def solve_par_riemann(data: RiemannData, *, check: bool = True) -> tuple[ParRegion, WaveFan]:
    """Solve the PAR Riemann problem; returns the region label and the wave fan.

    With ``check`` the curve monotonicity, genuine nonlinearity and the Lax
    chains are tested and a :class:`ParValidityWarning` is emitted on failure.
    """
    if data.model is not Model.PAR:
        raise RiemannError(f"expected PAR data, got {data.model.value}")
    g = data.gamma
    left, right = data.left, data.right
    if left.u <= 0 or right.u <= 0:
        raise NegativeVelocity("PAR solver needs u_left > 0 and u_right > 0")
    if left == right:
        return ParRegion.R1R2, WaveFan([], [left], data)

    def phi(r):
        return par_forward_curve(r, left, g) - par_backward_curve(r, right, g)

    ra, rb = sorted((left.rho, right.rho))
    notes = []
    vacuum = False
    if phi(rb) > 0:
        hi = 2.0 * rb
        while phi(hi) > 0:
            hi *= 2.0
            if hi > _EXPAND_CAP * rb:
                raise NoConvergence("intermediate density bracket exceeded 2**60 * max density")
        lo = rb
    elif phi(ra) < 0:
        if phi(0.0) <= 0:
            vacuum = True
        lo, hi = 0.0, ra
    else:
        lo, hi = ra, rb

    if vacuum:
        u0l = (math.sqrt(left.u) + _q(left.rho, g)) ** 2
        u0r = (math.sqrt(right.u) - _q(right.rho, g)) ** 2
        v0, v1 = PrimState(0.0, u0l), PrimState(0.0, u0r)
        waves = [
            Wave(WaveKind.RAREFACTION, par_eigenvalues(left, g)[0], u0l, left, v0, family=1),
            Wave(WaveKind.VACUUM, u0l, u0r, v0, v1),
            Wave(WaveKind.RAREFACTION, u0r, par_eigenvalues(right, g)[1], v1, right, family=2),
        ]
        fan = WaveFan(waves, [left, v0, v1, right], data)
        if check:
            _check_fan(fan, g, notes)
        return ParRegion.R1VacR2, fan

    try:
        rho_star = brentq(phi, lo, hi, xtol=1e-300, rtol=_RTOL, maxiter=_MAXITER)
    except (RuntimeError, ValueError) as exc:
        raise NoConvergence(f"intermediate state solve failed: {exc}") from exc
    u_star = par_forward_curve(rho_star, left, g)
    if u_star <= 0 or par_backward_curve(rho_star, right, g) <= 0:
        raise NegativeVelocity(f"intermediate velocity {u_star!r} is not positive")
    mid = PrimState(rho_star, u_star)

    one_shock = rho_star > left.rho
    two_shock = rho_star > right.rho
    if one_shock:
        w1 = Wave.discontinuity(WaveKind.SHOCK, _shock_speed(left, mid), left, mid, family=1)
    else:
        w1 = Wave(WaveKind.RAREFACTION, par_eigenvalues(left, g)[0],
                  par_eigenvalues(mid, g)[0], left, mid, family=1)
    if two_shock:
        w2 = Wave.discontinuity(WaveKind.SHOCK, _shock_speed(mid, right), mid, right, family=2)
    else:
        w2 = Wave(WaveKind.RAREFACTION, par_eigenvalues(mid, g)[1],
                  par_eigenvalues(right, g)[1], mid, right, family=2)
    region = {
        (False, False): ParRegion.R1R2,
        (True, False): ParRegion.S1R2,
        (False, True): ParRegion.R1S2,
        (True, True): ParRegion.S1S2,
    }[(one_shock, two_shock)]
    fan = WaveFan([w1, w2], [left, mid, right], data)
    if check:
        if not _monotone_on(lambda r: par_forward_curve(r, left, g), 0.5 * ra, 2.0 * max(rb, rho_star), False):
            notes.append("forward 1-curve not monotone")
        if not _monotone_on(lambda r: par_backward_curve(r, right, g), 0.5 * ra, 2.0 * max(rb, rho_star), True):
            notes.append("backward 2-curve not monotone")
        _check_fan(fan, g, notes)
    return region, fan


def _check_fan(fan: WaveFan, g: float, notes: list):
    for w in fan.waves:
        for s in (w.left_state, w.right_state):
            if s.rho > 0 and not _genuinely_nonlinear(s, g):
                notes.append(f"family not genuinely nonlinear at {s}")
        if w.kind is WaveKind.SHOCK and not par_lax_holds(w.left_state, w.right_state, w.speed, g, w.family):
            notes.append(f"Lax condition fails for {w.family}-shock")
    if notes:
        warnings.warn(f"PAR solution at gamma={g} outside validity range: " + "; ".join(notes),
                      ParValidityWarning, stacklevel=3)


def par_in_region_IV(data: RiemannData) -> bool:
    """Strict two-shock test on the right state, written in the closed Hugoniot form."""
    rl, ul = data.left.rho, data.left.u
    rr, ur = data.right.rho, data.right.u
    g = data.gamma
    if not ur < ul:
        return False
    if rr == rl:
        return True
    dr = rr - rl
    dq = (rr ** g - rl ** g) / dr
    core = rr ** g - rr / g * dq
    rad = core ** 2 / (4.0 * rr ** 2 * rl ** 2) + (1.0 - 1.0 / g) * ul / (rr * rl) * dq
    lhs = math.sqrt(rad) - 0.5 * abs(1.0 / rl - 1.0 / rr) * (rr ** g / dr - rr * (rr ** g - rl ** g) / (g * dr ** 2))
    return lhs < (ul - ur) / abs(dr)


def _require_delta(data: RiemannData):
    if not data.right.u < data.left.u:
        raise NotDeltaRegime(
            f"delta limit needs u_right < u_left, got {data.right.u} >= {data.left.u}")


def par_limit_quantities(data: RiemannData) -> ParLimitQuantities:
    _require_delta(data)
    rl, rr = data.left.rho, data.right.rho
    sl, sr = math.sqrt(rl), math.sqrt(rr)
    du = data.left.u - data.right.u
    a = (math.sqrt(rl * rr) / (sl + sr) * du) ** 2
    prof = pgd_delta_profile(data.left, data.right)
    return ParLimitQuantities(a=a, sigma=prof.sigma, w1_rate=prof.w1_rate, w2_rate=prof.w2_rate)


def par_limit_profile(data: RiemannData) -> DeltaShockProfile:
    q = par_limit_quantities(data)
    return DeltaShockProfile(sigma=q.sigma, w1_rate=q.w1_rate, w2_rate=q.w2_rate, u_delta=q.sigma)


def par_convergence_table(data: RiemannData, gammas: Iterable[float] = DEFAULT_PAR_GAMMAS
                          ) -> list[ParConvergenceRow]:
    _require_delta(data)
    rows = []
    for g in gammas:
        d = data.with_gamma(float(g))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ParValidityWarning)
            region, fan = solve_par_riemann(d)
        if region is not ParRegion.S1S2:
            raise RegionMismatch(f"gamma={g}: solution is {region.value}, not two shocks")
        s1, s2 = fan.waves
        mid = fan.states[1]
        rows.append(ParConvergenceRow(
            gamma=d.gamma,
            rho_star=mid.rho,
            u_star=mid.u,
            sigma1_bar=s1.speed,
            sigma2_bar=s2.speed,
            mass_integral=mid.rho * (s2.speed - s1.speed),
            scaled_pressure=(d.gamma - 1.0) * mid.rho ** d.gamma * mid.u,
        ))
    return rows
