"""Finite-difference WENO5 + SSP-RK3 evolution of the AR and PAR Riemann problems.

Fluxes are split with a global Lax-Friedrichs speed recomputed at every
Runge-Kutta stage, reconstructed component-wise with WENO5-JS, and the
boundaries use three ghost cells of zeroth-order extrapolation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from ..core import Model, OnDeltaShock, PrimState, RiemannData, WaveFan, WaveKind, eval_self_similar
from ..errors import GridError, NonMonotone, RiemannError, UnstableBlowup
from . import kernels

NGHOST = 3
DENSITY_FLOOR = 1e-12
# SSP-RK3 stage weights of the flux integral over one step
_RK3_FLUX_WEIGHTS = (1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0)


@dataclass(frozen=True)
class Grid:
    x_min: float
    x_max: float
    n_cells: int

    def __post_init__(self):
        if int(self.n_cells) != self.n_cells or self.n_cells < 11:
            raise GridError(f"need at least 11 cells, got {self.n_cells!r}")
        if not (math.isfinite(self.x_min) and math.isfinite(self.x_max)) or not self.x_max > self.x_min:
            raise GridError(f"invalid domain [{self.x_min}, {self.x_max}]")
        object.__setattr__(self, "n_cells", int(self.n_cells))

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.n_cells

    @property
    def centers(self) -> np.ndarray:
        return self.x_min + (np.arange(self.n_cells) + 0.5) * self.dx


class ARSystem:
    """Aw-Rascle in conservative form: U = (rho, rho u + rho**(g+1)), F = u U."""

    ncomp = 2
    model = Model.AR

    def __init__(self, gamma: float):
        self.gamma = float(gamma)

    def pressure_term(self, rho):
        return rho ** (self.gamma + 1.0)

    def conserved(self, rho, u):
        return np.array([rho, rho * u + self.pressure_term(rho)], dtype=float)

    def primitive(self, U):
        rho = np.maximum(U[0], DENSITY_FLOOR)
        return rho, (U[1] - self.pressure_term(rho)) / rho

    def flux(self, U):
        rho, u = self.primitive(U)
        return np.array([rho * u, u * U[1]])

    def max_speed(self, U):
        rho, u = self.primitive(U)
        return float(max(np.max(np.abs(u - self.gamma * rho ** self.gamma)), np.max(np.abs(u))))


class PARSystem:
    """Perturbed Aw-Rascle: U = (rho, rho u + rho**g / g), F = (rho u, rho u**2 + u rho**g)."""

    ncomp = 2
    model = Model.PAR

    def __init__(self, gamma: float):
        self.gamma = float(gamma)

    def pressure_term(self, rho):
        return rho ** self.gamma / self.gamma

    def conserved(self, rho, u):
        return np.array([rho, rho * u + self.pressure_term(rho)], dtype=float)

    def primitive(self, U):
        rho = np.maximum(U[0], DENSITY_FLOOR)
        return rho, (U[1] - self.pressure_term(rho)) / rho

    def flux(self, U):
        rho, u = self.primitive(U)
        return np.array([rho * u, rho * u * u + u * rho ** self.gamma])

    def max_speed(self, U):
        rho, u = self.primitive(U)
        c = np.sqrt((self.gamma - 1.0) * rho ** (self.gamma - 1.0) * np.maximum(u, 0.0))
        return float(np.max(np.abs(u) + c))


class LinearAdvection:
    """Scalar u_t + c u_x = 0, used to verify the space-time order."""

    ncomp = 1
    model = None

    def __init__(self, speed: float = 1.0):
        self.speed = float(speed)

    def flux(self, U):
        return self.speed * U

    def max_speed(self, U):
        return abs(self.speed)


def system_for(model, gamma):
    model = Model(model)
    if model is Model.AR:
        return ARSystem(gamma)
    if model is Model.PAR:
        return PARSystem(gamma)
    raise RiemannError(f"no conservative scheme for model {model.value}")


def conserved_from_primitive(s: PrimState, model, gamma: float) -> tuple[float, float]:
    rho = max(s.rho, DENSITY_FLOOR)
    U = system_for(model, gamma).conserved(rho, s.u)
    return float(U[0]), float(U[1])


def primitive_from_conserved(U1: float, U2: float, model, gamma: float) -> PrimState:
    rho, u = system_for(model, gamma).primitive(np.array([U1, U2], dtype=float))
    return PrimState(float(rho), float(u))


@dataclass
class Field:
    grid: Grid
    U: np.ndarray
    t: float
    model: Optional[Model] = None
    gamma: Optional[float] = None

    @property
    def U1(self) -> np.ndarray:
        return self.U[0]

    @property
    def U2(self) -> np.ndarray:
        return self.U[1]

    def primitives(self):
        return system_for(self.model, self.gamma).primitive(self.U)

    @property
    def rho(self) -> np.ndarray:
        return self.primitives()[0]

    @property
    def u(self) -> np.ndarray:
        return self.primitives()[1]

    def mass(self) -> float:
        return float(self.grid.dx * np.sum(self.U[0]))


@dataclass
class EvolveResult:
    U: np.ndarray
    t: float
    steps: int
    boundary_flux: np.ndarray
    floor_hits: int
    snapshots: list = field(default_factory=list)


def _pad(U, bc):
    if bc == "periodic":
        return np.concatenate([U[:, -NGHOST:], U, U[:, :NGHOST]], axis=1)
    left = np.repeat(U[:, :1], NGHOST, axis=1)
    right = np.repeat(U[:, -1:], NGHOST, axis=1)
    return np.concatenate([left, U, right], axis=1)


def _rhs(law, U, dx, bc, kernel):
    P = _pad(U, bc)
    alpha = law.max_speed(P)
    fhat = kernel(P, law.flux(P), alpha)
    return -(fhat[:, 1:] - fhat[:, :-1]) / dx, fhat[:, 0] - fhat[:, -1]


def evolve(law, U0, grid: Grid, t_end: float, cfl: float = 0.4, *, bc: str = "outflow",
           output_times: Sequence[float] = (), kernel=None, floor: Optional[float] = DENSITY_FLOOR,
           max_steps: int = 10_000_000) -> EvolveResult:
    """Advance ``U0`` (shape (ncomp, n_cells)) to ``t_end`` with SSP-RK3.

    ``boundary_flux`` in the result is the time integral of the numerical
    flux entering through the left face minus that leaving through the right.
    """
    if not t_end > 0:
        raise ValueError(f"t_end must be positive, got {t_end!r}")
    if not 0 < cfl < 1:
        raise ValueError(f"cfl must lie in (0, 1), got {cfl!r}")
    kernel = kernel or kernels.weno5_split_flux
    dx = grid.dx
    U = np.array(U0, dtype=float, copy=True)
    t = 0.0
    steps = 0
    hits = 0
    inflow = np.zeros(U.shape[0])
    stops = sorted({float(s) for s in output_times if 0 < s < t_end} | {float(t_end)})
    snaps = []

    def clamp(V):
        nonlocal hits
        if floor is None:
            return V
        low = V[0] < floor
        if low.any():
            hits += int(low.sum())
            V[0, low] = floor
        return V

    for stop in stops:
        while t < stop:
            if steps >= max_steps:
                raise UnstableBlowup(f"step limit reached at t={t}", time=t)
            alpha = law.max_speed(_pad(U, bc))
            if not (alpha > 0 and math.isfinite(alpha)):
                alpha = 1.0 if alpha == 0 else alpha
            dt = cfl * dx / alpha
            if not math.isfinite(dt):
                raise UnstableBlowup(f"non-finite wave speed at t={t}", time=t)
            if t + dt >= stop:
                dt = stop - t
            L0, b0 = _rhs(law, U, dx, bc, kernel)
            U1 = clamp(U + dt * L0)
            L1, b1 = _rhs(law, U1, dx, bc, kernel)
            U2 = clamp(0.75 * U + 0.25 * (U1 + dt * L1))
            L2, b2 = _rhs(law, U2, dx, bc, kernel)
            U = clamp(U / 3.0 + 2.0 / 3.0 * (U2 + dt * L2))
            w0, w1, w2 = _RK3_FLUX_WEIGHTS
            inflow += dt * (w0 * b0 + w1 * b1 + w2 * b2)
            t = stop if t + dt >= stop else t + dt
            steps += 1
            if not np.all(np.isfinite(U)):
                raise UnstableBlowup(f"non-finite state at t={t}", time=t)
        snaps.append((t, U.copy()))
    return EvolveResult(U=U, t=t, steps=steps, boundary_flux=inflow, floor_hits=hits, snapshots=snaps)


def find_discontinuities(x, rho, count: int = 2) -> list[float]:
    """Positions of the ``count`` steepest density jumps, refined to sub-cell accuracy.

    Candidates are local maxima of |rho[i+1] - rho[i]|; each is refined by
    a parabola through its neighbours.  Sorted left to right.
    """
    x = np.asarray(x, dtype=float)
    g = np.abs(np.diff(np.asarray(rho, dtype=float)))
    dx = x[1] - x[0]
    faces = 0.5 * (x[1:] + x[:-1])
    n = len(g)
    peaks = [i for i in range(n)
             if (i == 0 or g[i] >= g[i - 1]) and (i == n - 1 or g[i] > g[i + 1]) and g[i] > 0]
    peaks.sort(key=lambda i: g[i], reverse=True)
    out = []
    for i in peaks[:count]:
        pos = faces[i]
        if 0 < i < n - 1:
            den = g[i - 1] - 2.0 * g[i] + g[i + 1]
            if den < 0:
                pos += 0.5 * (g[i - 1] - g[i + 1]) / den * dx
        out.append(float(pos))
    return sorted(out)


def exact_profile(fan: WaveFan, x, t: float):
    """Exact (rho, u) at positions ``x`` and time ``t``; delta-shock points get NaN density."""
    x = np.asarray(x, dtype=float)
    rho = np.empty_like(x)
    u = np.empty_like(x)
    for k, xk in enumerate(x):
        s = eval_self_similar(fan, xk / t)
        if isinstance(s, OnDeltaShock):
            rho[k], u[k] = math.nan, s.profile.u_delta
        else:
            rho[k], u[k] = s.rho, s.u
    return rho, u


@dataclass
class ExactComparison:
    exact_positions: list
    detected_positions: list
    max_position_error: float
    exact_plateau: Optional[float]
    numerical_plateau: Optional[float]
    plateau_rel_error: Optional[float]
    max_rel_error_away: float

    def as_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class SimReport:
    final_field: Field
    peak_density: float
    peak_location: float
    mass_in_window: float
    total_mass_drift: float
    discontinuities: list
    floor_hits: int
    steps: int
    window: Optional[tuple]
    predicted_delta_location: Optional[float]
    target_mass: float = math.nan
    snapshots: list = field(default_factory=list)
    comparison: Optional[ExactComparison] = None

    @property
    def gamma(self):
        return self.final_field.gamma

    @property
    def discontinuity_distance(self) -> float:
        d = self.discontinuities
        return d[-1] - d[0] if len(d) >= 2 else 0.0

    def summary(self) -> dict:
        out = {
            "model": self.final_field.model.value,
            "gamma": self.gamma,
            "t": self.final_field.t,
            "n_cells": self.final_field.grid.n_cells,
            "peak_density": self.peak_density,
            "peak_location": self.peak_location,
            "mass_in_window": self.mass_in_window,
            "window": list(self.window) if self.window else None,
            "predicted_delta_location": self.predicted_delta_location,
            "target_mass": self.target_mass,
            "total_mass_drift": self.total_mass_drift,
            "discontinuities": list(self.discontinuities),
            "floor_hits": self.floor_hits,
            "steps": self.steps,
        }
        if self.comparison is not None:
            out["comparison"] = self.comparison.as_dict()
        return out


def _exact_fan(data: RiemannData):
    from ..ar import solve_ar_riemann
    from ..par import solve_par_riemann
    import warnings
    if data.model is Model.AR:
        return solve_ar_riemann(data)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return solve_par_riemann(data, check=False)[1]


def _limit_profile(data: RiemannData):
    from ..ar import ar_limit_profile
    from ..par import par_limit_profile
    if not data.right.u < data.left.u:
        return None
    return ar_limit_profile(data) if data.model is Model.AR else par_limit_profile(data)


def compare_with_exact(fld: Field, fan: WaveFan) -> ExactComparison:
    x = fld.grid.centers
    dx = fld.grid.dx
    t = fld.t
    rho, u = fld.primitives()
    jumps = [w.speed * t for w in fan.waves if w.is_discontinuity]
    detected = find_discontinuities(x, rho, count=len(jumps)) if jumps else []
    if len(detected) == len(jumps) and jumps:
        pos_err = max(abs(a - b) for a, b in zip(sorted(jumps), detected))
    else:
        pos_err = math.inf if jumps else 0.0
    ex_rho, ex_u = exact_profile(fan, x, t)
    edges = []
    for w in fan.waves:
        edges.extend({w.xi_left * t, w.xi_right * t})
    away = np.ones_like(x, dtype=bool)
    for e in edges:
        away &= np.abs(x - e) > 5.0 * dx
    away &= np.isfinite(ex_rho)
    if away.any():
        rel = np.maximum(np.abs(rho - ex_rho) / np.maximum(np.abs(ex_rho), 1e-300),
                         np.abs(u - ex_u) / np.maximum(np.abs(ex_u), 1e-300))
        max_rel = float(np.max(rel[away]))
    else:
        max_rel = 0.0

    exact_plateau = num_plateau = plateau_err = None
    if len(fan.waves) == 2 and all(w.is_discontinuity for w in fan.waves):
        a, b = fan.waves[0].speed * t, fan.waves[1].speed * t
        exact_plateau = fan.states[1].rho
        inner = (x > a + 3.0 * dx) & (x < b - 3.0 * dx)
        if inner.any() and math.isfinite(exact_plateau):
            num_plateau = float(np.median(rho[inner]))
            plateau_err = abs(num_plateau - exact_plateau) / exact_plateau
    return ExactComparison(sorted(jumps), detected, pos_err, exact_plateau, num_plateau,
                           plateau_err, max_rel)


def run_simulation(data: RiemannData, grid: Grid, t_end: float, cfl: float = 0.4, *,
                   output_times: Sequence[float] = (), window_half_width: Optional[float] = None,
                   kernel=None, compare: bool = True) -> SimReport:
    """Evolve the Riemann data on ``grid`` and summarise the result.

    ``mass_in_window`` is the integral of rho minus the limiting background
    (rho_l left of the predicted delta location, rho_r right of it) over a
    window of half-width ``window_half_width`` (default 10 cells) centred on
    that location, to be compared with the delta weight w1_rate * t.
    """
    law = system_for(data.model, data.gamma)
    x = grid.centers
    left = x < 0.0
    rho0 = np.where(left, data.left.rho, data.right.rho)
    u0 = np.where(left, data.left.u, data.right.u)
    U0 = law.conserved(rho0, u0)
    res = evolve(law, U0, grid, t_end, cfl, output_times=output_times, kernel=kernel)

    fld = Field(grid, res.U, res.t, data.model, data.gamma)
    rho, _ = fld.primitives()
    mass0 = float(grid.dx * np.sum(U0[0]))
    drift = abs(fld.mass() - mass0 - res.boundary_flux[0]) / mass0
    k = int(np.argmax(rho))

    profile = _limit_profile(data)
    window = predicted = None
    mass_win = target = math.nan
    if profile is not None:
        predicted = profile.sigma * res.t
        target = profile.w1_rate * res.t
        h = 10.0 * grid.dx if window_half_width is None else float(window_half_width)
        window = (predicted - h, predicted + h)
        background = np.where(x < predicted, data.left.rho, data.right.rho)
        inside = (x >= window[0]) & (x <= window[1])
        mass_win = float(grid.dx * np.sum((rho - background)[inside]))

    comparison = None
    fan = None
    if compare:
        try:
            fan = _exact_fan(data)
        except RiemannError:
            fan = None
    if fan is not None:
        comparison = compare_with_exact(fld, fan)
    ndisc = len(comparison.exact_positions) if comparison and comparison.exact_positions else 2
    snaps = [Field(grid, U, t, data.model, data.gamma) for t, U in res.snapshots]
    return SimReport(
        final_field=fld,
        peak_density=float(rho[k]),
        peak_location=float(x[k]),
        mass_in_window=mass_win,
        total_mass_drift=float(drift),
        discontinuities=find_discontinuities(x, rho, count=ndisc),
        floor_hits=res.floor_hits,
        steps=res.steps,
        window=window,
        predicted_delta_location=predicted,
        target_mass=target,
        snapshots=snaps,
        comparison=comparison,
    )


@dataclass(frozen=True)
class ConcentrationSummary:
    gammas: tuple
    peak_densities: tuple
    distances: tuple
    masses_in_window: tuple
    target_mass: float
    monotone: bool


def detect_delta_concentration(reports: Sequence[SimReport], *, strict: bool = True) -> ConcentrationSummary:
    """Check that peaks grow and the two discontinuities approach as gamma moves to its limit.

    Reports must come from the same data, ordered from the farthest gamma to
    the closest to the limit (decreasing for both models).
    """
    reports = list(reports)
    if len(reports) < 2:
        raise ValueError("need at least two reports to judge a trend")
    gammas = tuple(r.gamma for r in reports)
    if any(g1 >= g0 for g0, g1 in zip(gammas, gammas[1:])):
        raise ValueError(f"reports must be ordered by decreasing gamma, got {gammas}")
    peaks = tuple(r.peak_density for r in reports)
    dists = tuple(r.discontinuity_distance for r in reports)
    masses = tuple(r.mass_in_window for r in reports)
    ok = (all(b > a for a, b in zip(peaks, peaks[1:]))
          and all(b < a for a, b in zip(dists, dists[1:])))
    summary = ConcentrationSummary(gammas, peaks, dists, masses, reports[-1].target_mass, ok)
    if strict and not ok:
        raise NonMonotone(f"concentration trend fails: peaks={peaks}, distances={dists}")
    return summary
