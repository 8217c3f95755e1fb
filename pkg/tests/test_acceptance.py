"""Acceptance suite: one PASS/FAIL line per criterion.

Run under pytest (lines are printed to the terminal) or directly with
``python3 tests/test_acceptance.py``.  Parts that fail for documented
reasons are marked as strict expected failures so that the printed line
still says FAIL and a future fix is noticed.
"""

import functools
import math
import time
import warnings

import numpy as np
import pytest

from arlimit.ar import (ar_convergence_table, ar_lax_holds, ar_limit_quantities, ar_rh_residual,
                        solve_ar_riemann)
from arlimit.core import RiemannData, WaveKind
from arlimit.par import (ParValidityWarning, par_convergence_table, par_in_region_IV,
                         par_lax_holds, par_limit_quantities, par_rh_residual, solve_par_riemann)
from arlimit.pgd import grh_residual, pgd_delta_profile, solve_pgd_riemann
from arlimit.scheme import Grid, detect_delta_concentration, run_simulation
from arlimit.scheme import _weno_py

D71 = ((3.5, 6.0), (2.0, 4.0))
D72 = ((3.0, 4.0), (2.5, 2.0))
GRID = Grid(-4.0, 4.0, 400)
T_END = 0.4
CFL = 0.4


def report(tag, ok, detail, seconds=None):
    line = f"[{'PASS' if ok else 'FAIL'}] {tag}: {detail}"
    if seconds is not None:
        line += f" ({seconds:.2f} s)"
    return ok, line


@functools.lru_cache(maxsize=None)
def simulate(model, gamma):
    data = RiemannData.make(model, *(D71 if model == "ar" else D72), gamma)
    t0 = time.perf_counter()
    rep = run_simulation(data, GRID, T_END, CFL)
    return rep, time.perf_counter() - t0


# ------------------------------------------------------------------ criteria

def c1():
    t0 = time.perf_counter()
    data = RiemannData.make("ar", *D71, 0.6)
    rows = ar_convergence_table(data, [0.6, 0.3, 0.1, 0.01, 0.001])
    dt = time.perf_counter() - t0
    gaps = [abs(r.sigma1 - 4) for r in rows]
    r01 = rows[2]
    ok = (all(r.sigma2 == 4.0 for r in rows)
          and all(b < a or b == a == 0 for a, b in zip(gaps, gaps[1:]))
          and gaps[2] < 1e-3 and abs(r01.mass_integral - 7) < 5e-4 and dt < 1.0)
    return report("C1 AR limit table", ok,
                  f"|sigma1-4| at 0.1 = {gaps[2]:.3e}, |mass-7| at 0.1 = {abs(r01.mass_integral - 7):.3e}", dt)


def c2():
    q = ar_limit_quantities(RiemannData.make("ar", *D71, 0.5))
    err = max(abs(q.sigma - 4), abs(q.w1_rate - 7), abs(q.w2_rate - 42))
    return report("C2 AR limit weights", err <= 1e-12,
                  f"(sigma, w1, w2) = ({q.sigma!r}, {q.w1_rate!r}, {q.w2_rate!r})")


def c3():
    t0 = time.perf_counter()
    data = RiemannData.make("par", *D72, 1.4)
    rows = par_convergence_table(data, [1.4, 1.1, 1.04, 1.01, 1.001])
    dt = time.perf_counter() - t0
    q = par_limit_quantities(data)
    e1 = [abs(r.sigma1_bar - q.sigma) for r in rows]
    e2 = [abs(r.sigma2_bar - q.sigma) for r in rows]
    last = rows[-1]
    ok = (all(b < a for a, b in zip(e1, e1[1:])) and all(b < a for a, b in zip(e2, e2[1:]))
          and e1[-1] < 0.05 and e2[-1] < 0.05
          and abs(q.sigma - 3.0456) < 1e-4
          and abs(last.mass_integral - q.w1_rate) < 0.1
          and abs(last.scaled_pressure - q.a) < 0.1 * q.a and dt < 5.0)
    return report("C3 PAR limit table", ok,
                  f"at 1.001: |s1-s|={e1[-1]:.4f}, |s2-s|={e2[-1]:.4f}, mass={last.mass_integral:.4f}, "
                  f"(g-1)rho^g u={last.scaled_pressure:.4f} vs a={q.a:.4f}", dt)


def c4():
    rng = np.random.default_rng(20240401)
    worst_sigma = worst_grh = 0.0
    for _ in range(1000):
        rl, rr = rng.uniform(0.1, 10, 2)
        ul = rng.uniform(-5, 5)
        ur = ul - rng.uniform(1e-3, 10)
        par = RiemannData.make("par", (rl, ul), (rr, ur), 1.5)
        pgd = RiemannData.make("pgd", (rl, ul), (rr, ur))
        (w,) = solve_pgd_riemann(pgd).waves
        assert w.kind is WaveKind.DELTA
        worst_sigma = max(worst_sigma, abs(par_limit_quantities(par).sigma - w.profile.sigma))
        worst_grh = max(worst_grh, grh_residual(w.profile, pgd).max())
    ok = worst_sigma == 0.0 and worst_grh <= 1e-12
    return report("C4 PGD consistency", ok,
                  f"max |sigma_par - sigma_pgd| = {worst_sigma:.1e}, max GRH residual = {worst_grh:.1e}")


def c5():
    rng = np.random.default_rng(7)
    worst_ar = worst_par = 0.0
    lax_ar = lax_par = True
    for _ in range(1000):
        rl, rr = rng.uniform(0.05, 20, 2)
        ul = rng.uniform(-10, 10)
        g = rng.uniform(0.1, 0.95)
        d = RiemannData.make("ar", (rl, ul), (rr, ul - rng.uniform(1e-3, 5)), g)
        fan = solve_ar_riemann(d)
        for w in fan.waves:
            worst_ar = max(worst_ar, *ar_rh_residual(w.left_state, w.right_state, w.speed, g))
        s = fan.waves[0]
        lax_ar &= ar_lax_holds(s.left_state, s.right_state, s.speed, g)
    n = 0
    while n < 1000:
        rl, rr = rng.uniform(0.1, 10, 2)
        ul = rng.uniform(0.5, 10)
        g = rng.uniform(1.001, 1.3)
        d = RiemannData.make("par", (rl, ul), (rr, ul * (1 - rng.uniform(0.05, 0.9))), g)
        if not par_in_region_IV(d):
            continue
        n += 1
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ParValidityWarning)
            _, fan = solve_par_riemann(d)
        for k, w in enumerate(fan.waves, 1):
            worst_par = max(worst_par, *par_rh_residual(w.left_state, w.right_state, w.speed, g))
            lax_par &= par_lax_holds(w.left_state, w.right_state, w.speed, g, k)
    ok = worst_ar <= 1e-10 and worst_par <= 1e-10 and lax_ar and lax_par
    return report("C5 exact-solver invariants", ok,
                  f"AR RH {worst_ar:.1e} Lax {lax_ar}; PAR RH {worst_par:.1e} Lax {lax_par}")


def _c6(model, gamma, tag):
    rep, dt = simulate(model, gamma)
    c = rep.comparison
    tol = 3 * GRID.dx
    ok = c.max_position_error <= tol and c.plateau_rel_error <= 0.05 and dt < 30
    return report(tag, ok,
                  f"exact {[round(v, 4) for v in c.exact_positions]}, detected "
                  f"{[round(v, 4) for v in c.detected_positions]}, max err {c.max_position_error:.4f} "
                  f"(tol {tol:.2f}), plateau err {100 * c.plateau_rel_error:.2f}%", dt)


def c6_ar():
    return _c6("ar", 0.6, "C6a simulation vs exact, AR gamma=0.6")


def c6_par():
    return _c6("par", 1.4, "C6b simulation vs exact, PAR gamma=1.4")


def _trend(model, gammas):
    reps = [simulate(model, g)[0] for g in gammas]
    return detect_delta_concentration(reps, strict=False)


def c7_trend():
    a = _trend("ar", (0.6, 0.3, 0.1))
    p = _trend("par", (1.4, 1.04))
    return report("C7a concentration trend", a.monotone and p.monotone,
                  f"AR peaks {[round(v, 2) for v in a.peak_densities]} dist "
                  f"{[round(v, 4) for v in a.distances]}; PAR peaks "
                  f"{[round(v, 2) for v in p.peak_densities]} dist {[round(v, 4) for v in p.distances]}")


def _c7_mass(model, gammas, tag):
    s = _trend(model, gammas)
    m = s.masses_in_window[-1]
    rel = abs(m - s.target_mass) / s.target_mass
    return report(tag, rel <= 0.25,
                  f"mass_in_window {m:.4f} vs w1_rate*t {s.target_mass:.4f} ({100 * rel:.1f}%)")


def c7_mass_ar():
    return _c7_mass("ar", (0.6, 0.3, 0.1), "C7b window mass, AR gamma=0.1")


def c7_mass_par():
    return _c7_mass("par", (1.4, 1.04), "C7c window mass, PAR gamma=1.04")


def c8():
    ns = np.array([40, 80, 160])
    errs = []
    for n in ns:
        dx = 2 * np.pi / n
        x = np.arange(n) * dx
        avg = (np.cos(x - dx / 2) - np.cos(x + dx / 2)) / dx
        idx = np.arange(n)
        st = [avg[(idx + k) % n] for k in (-2, -1, 0, 1, 2)]
        errs.append(np.max(np.abs(_weno_py.weno5_left(*st) - np.sin(x + dx / 2))))
    slope = np.polyfit(np.log(2 * np.pi / ns), np.log(errs), 1)[0]
    const = []
    for model, g in (("ar", 0.6), ("par", 1.4)):
        d = RiemannData.make(model, (2, 3), (2, 3), g)
        rep = run_simulation(d, Grid(-1, 1, 50), 0.2, compare=False)
        const.append(float(np.max(np.abs(rep.final_field.U - rep.final_field.U[:, :1]))))
    drifts = [simulate(m, g)[0].total_mass_drift
              for m, g in (("ar", 0.6), ("ar", 0.3), ("ar", 0.1), ("par", 1.4), ("par", 1.04))]
    ok = slope >= 4.5 and max(const) <= 1e-12 and max(drifts) <= 1e-8
    return report("C8 scheme verification", ok,
                  f"WENO slope {slope:.3f}, constant-state dev {max(const):.1e}, "
                  f"max mass drift {max(drifts):.1e}")


CRITERIA = [c1, c2, c3, c4, c5, c6_ar, c6_par, c7_trend, c7_mass_ar, c7_mass_par, c8]

KNOWN_GAPS = {
    c6_ar: "AR contact smears and drifts ~3.9 dx at 400 cells (see decisions ledger)",
    c7_mass_ar: "at gamma=0.1 the unresolved delta travels near the PGD speed, outside the window",
}


def _params():
    out = []
    for fn in CRITERIA:
        marks = [pytest.mark.xfail(strict=True, reason=KNOWN_GAPS[fn])] if fn in KNOWN_GAPS else []
        out.append(pytest.param(fn, id=fn.__name__, marks=marks))
    return out


@pytest.mark.parametrize("criterion", _params())
def test_criterion(criterion, capsys):
    ok, line = criterion()
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [fn() for fn in CRITERIA]
    for _, line in results:
        print(line)
    print(f"{sum(ok for ok, _ in results)}/{len(results)} passed")
