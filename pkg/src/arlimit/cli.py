"""Command-line driver: ``arlimit {solve,limit,simulate,reproduce}``.

Exit codes: 0 success, 2 configuration error, 3 solver error, 4 numerical
blowup.  Errors are written to stderr as a one-line JSON object.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import warnings
from pathlib import Path

import numpy as np

from .ar import ar_convergence_table, ar_limit_quantities, solve_ar_riemann
from .core import Model, OnDeltaShock, RiemannData, WaveFan, eval_self_similar
from .errors import GridError, RiemannError, UnstableBlowup
from .par import (ParValidityWarning, par_convergence_table, par_limit_quantities,
                  solve_par_riemann)
from .pgd import solve_pgd_riemann
from .scheme.solver import Grid, detect_delta_concentration, exact_profile, run_simulation

EXIT_CONFIG, EXIT_SOLVER, EXIT_BLOWUP = 2, 3, 4

DATA_71 = ((3.5, 6.0), (2.0, 4.0))
DATA_72 = ((3.0, 4.0), (2.5, 2.0))

# gamma values follow the figure captions; fig5-alt is the value quoted in the text
EXPERIMENTS = {
    "fig3": ("ar", 0.6, DATA_71),
    "fig4": ("ar", 0.3, DATA_71),
    "fig5": ("ar", 0.001, DATA_71),
    "fig5-alt": ("ar", 0.01, DATA_71),
    "fig6": ("par", 1.4, DATA_72),
    "fig7": ("par", 1.04, DATA_72),
    "fig8": ("par", 1.001, DATA_72),
}

DEFAULTS = {
    "model": None,
    "gamma": None,
    "gammas": None,
    "left": None,
    "right": None,
    "t_end": 0.4,
    "cells": 400,
    "cfl": 0.4,
    "domain": (-4.0, 4.0),
    "out": ".",
    "format": "csv",
    "samples": 401,
    "output_times": None,
}


class ConfigError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


# ------------------------------------------------------------------ config

def _floats(value, n=None, name="value"):
    if isinstance(value, str):
        value = value.replace(",", " ").split()
    try:
        out = tuple(float(v) for v in value)
    except (TypeError, ValueError):
        raise ConfigError(f"{name}: expected numbers, got {value!r}") from None
    if n is not None and len(out) != n:
        raise ConfigError(f"{name}: expected {n} numbers, got {len(out)}")
    if not all(math.isfinite(v) for v in out):
        raise ConfigError(f"{name}: values must be finite")
    return out


def read_config_file(path) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment, keys may use dashes."""
    out = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in DEFAULTS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = value
    return out


def _normalize(cfg: dict) -> dict:
    c = dict(cfg)
    try:
        if c["gamma"] is not None:
            c["gamma"] = float(c["gamma"])
        if c["gammas"] is not None:
            c["gammas"] = _floats(c["gammas"], name="gammas")
        for side in ("left", "right"):
            if c[side] is not None:
                c[side] = _floats(c[side], 2, side)
        c["domain"] = _floats(c["domain"], 2, "domain")
        c["t_end"] = float(c["t_end"])
        c["cfl"] = float(c["cfl"])
        cells = float(c["cells"])
        samples = float(c["samples"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    if cells != int(cells) or samples != int(samples):
        raise ConfigError("cells and samples must be integers")
    c["cells"], c["samples"] = int(cells), int(samples)
    if c["output_times"] is not None:
        c["output_times"] = _floats(c["output_times"], name="output_times")
    if c["model"] is not None:
        try:
            c["model"] = Model(c["model"])
        except ValueError:
            raise ConfigError(f"unknown model {c['model']!r}") from None
    if c["format"] not in ("csv", "json"):
        raise ConfigError(f"format must be csv or json, got {c['format']!r}")
    if not c["t_end"] > 0:
        raise ConfigError("t_end must be positive")
    if not 0 < c["cfl"] < 1:
        raise ConfigError("cfl must lie in (0, 1)")
    if c["samples"] < 2:
        raise ConfigError("samples must be at least 2")
    return c


def resolve_config(args: argparse.Namespace) -> dict:
    cfg = dict(DEFAULTS)
    if getattr(args, "config", None):
        cfg.update(read_config_file(args.config))
    for key in DEFAULTS:
        value = getattr(args, key, None)
        if value is not None:
            cfg[key] = value
    return _normalize(cfg)


def _data(cfg: dict, gamma=None) -> RiemannData:
    for key in ("model", "left", "right"):
        if cfg[key] is None:
            raise ConfigError(f"missing required setting: {key}")
    g = cfg["gamma"] if gamma is None else gamma
    if g is None and cfg["model"] is not Model.PGD:
        if cfg["gammas"]:
            g = cfg["gammas"][0]
        else:
            raise ConfigError("missing required setting: gamma")
    try:
        return RiemannData.make(cfg["model"], cfg["left"], cfg["right"], g)
    except RiemannError as exc:
        raise ConfigError(str(exc)) from None


def _grid(cfg: dict) -> Grid:
    try:
        return Grid(cfg["domain"][0], cfg["domain"][1], cfg["cells"])
    except GridError as exc:
        raise ConfigError(str(exc)) from None


# ------------------------------------------------------------------ output

def _num(x):
    """JSON-safe float: non-finite values become null."""
    x = float(x)
    return x if math.isfinite(x) else None


def _state(s):
    return {"rho": _num(s.rho), "u": _num(s.u)}


def _clean(obj):
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, float):
        return _num(obj)
    return obj


def _write_json(path: Path, obj):
    text = json.dumps(_clean(obj), indent=2, sort_keys=True, allow_nan=False)
    path.write_text(text + "\n")


def write_table(path: Path, columns: dict, fmt: str, comment: str = ""):
    """Write equal-length columns as CSV (repr floats) or as a JSON object of lists."""
    names = list(columns)
    if fmt == "json":
        obj = {k: [_num(v) for v in columns[k]] for k in names}
        if comment:
            obj["_comment"] = comment
        _write_json(path.with_suffix(".json"), obj)
        return path.with_suffix(".json")
    rows = zip(*(columns[k] for k in names))
    lines = [f"# {comment}"] if comment else []
    lines.append(",".join(names))
    lines.extend(",".join(repr(float(v)) for v in row) for row in rows)
    path.write_text("\n".join(lines) + "\n")
    return path


def read_table(path) -> dict:
    """Inverse of :func:`write_table` for CSV files."""
    lines = [ln for ln in Path(path).read_text().splitlines() if ln and not ln.startswith("#")]
    names = lines[0].split(",")
    cols = {k: [] for k in names}
    for ln in lines[1:]:
        for k, v in zip(names, ln.split(",")):
            cols[k].append(float(v))
    return {k: np.array(v) for k, v in cols.items()}


def _outdir(cfg) -> Path:
    out = Path(cfg["out"])
    out.mkdir(parents=True, exist_ok=True)
    return out


def fan_to_dict(fan: WaveFan, region=None) -> dict:
    d = fan.data
    waves = []
    for w in fan.waves:
        item = {
            "kind": w.kind.value,
            "xi_left": _num(w.xi_left),
            "xi_right": _num(w.xi_right),
            "family": w.family,
            "left_state": _state(w.left_state),
            "right_state": _state(w.right_state),
        }
        if w.profile is not None:
            p = w.profile
            item["delta_profile"] = {"sigma": _num(p.sigma), "w1_rate": _num(p.w1_rate),
                                     "w2_rate": _num(p.w2_rate), "u_delta": _num(p.u_delta)}
        waves.append(item)
    return {
        "model": d.model.value,
        "gamma": d.gamma,
        "left": _state(d.left),
        "right": _state(d.right),
        "region": region,
        "waves": waves,
        "states": [_state(s) for s in fan.states],
        "notes": list(fan.notes),
    }


def _solve_exact(data: RiemannData):
    if data.model is Model.AR:
        from .ar import ar_classify
        return ar_classify(data).label.value, solve_ar_riemann(data)
    if data.model is Model.PAR:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", ParValidityWarning)
            region, fan = solve_par_riemann(data)
        if caught:
            fan = WaveFan(fan.waves, fan.states, fan.data,
                          tuple(fan.notes) + tuple(str(w.message) for w in caught))
        return region.value, fan
    return None, solve_pgd_riemann(data)


def _sample_fan(fan: WaveFan, n: int):
    edges = [e for e in fan.edges if math.isfinite(e)]
    lo, hi = (min(edges), max(edges)) if edges else (-1.0, 1.0)
    pad = max(1.0, 0.25 * (hi - lo))
    xi = list(np.linspace(lo - pad, hi + pad, n))
    delta = fan.delta()
    if delta is not None and delta.sigma not in xi:
        xi = sorted(xi + [delta.sigma])
    rho, u, mark = [], [], []
    for x in xi:
        s = eval_self_similar(fan, x)
        if isinstance(s, OnDeltaShock):
            rho.append(math.nan)
            u.append(s.profile.u_delta)
            mark.append(s.profile.w1_rate)
        else:
            rho.append(s.rho)
            u.append(s.u)
            mark.append(0.0)
    return {"xi": xi, "rho": rho, "u": u, "delta_w1_rate": mark}


# ------------------------------------------------------------------ commands

def cmd_solve(cfg: dict) -> int:
    data = _data(cfg)
    region, fan = _solve_exact(data)
    out = _outdir(cfg)
    _write_json(out / "waves.json", fan_to_dict(fan, region))
    write_table(out / "profile.csv", _sample_fan(fan, cfg["samples"]), cfg["format"])
    return 0


def cmd_limit(cfg: dict) -> int:
    data = _data(cfg)
    gammas = cfg["gammas"] or ((cfg["gamma"],) if cfg["gamma"] is not None else None)
    if data.model is Model.AR:
        q = ar_limit_quantities(data)
        rows = ar_convergence_table(data, gammas) if gammas else ar_convergence_table(data)
        cols = {
            "gamma": [r.gamma for r in rows],
            "rho_star": [r.rho_star for r in rows],
            "log_rho_star": [r.log_rho_star for r in rows],
            "sigma1": [r.sigma1 for r in rows],
            "sigma2": [r.sigma2 for r in rows],
            "mass_integral": [r.mass_integral for r in rows],
            "sigma1_minus_limit": [r.sigma1 - q.sigma for r in rows],
            "sigma2_minus_limit": [r.sigma2 - q.sigma for r in rows],
            "mass_minus_limit": [r.mass_integral - q.w1_rate for r in rows],
        }
    elif data.model is Model.PAR:
        q = par_limit_quantities(data)
        rows = par_convergence_table(data, gammas) if gammas else par_convergence_table(data)
        cols = {
            "gamma": [r.gamma for r in rows],
            "rho_star": [r.rho_star for r in rows],
            "u_star": [r.u_star for r in rows],
            "sigma1_bar": [r.sigma1_bar for r in rows],
            "sigma2_bar": [r.sigma2_bar for r in rows],
            "mass_integral": [r.mass_integral for r in rows],
            "scaled_pressure": [r.scaled_pressure for r in rows],
            "sigma1_minus_limit": [r.sigma1_bar - q.sigma for r in rows],
            "sigma2_minus_limit": [r.sigma2_bar - q.sigma for r in rows],
            "mass_minus_limit": [r.mass_integral - q.w1_rate for r in rows],
            "scaled_pressure_minus_a": [r.scaled_pressure - q.a for r in rows],
        }
    else:
        raise ConfigError("limit needs model ar or par")
    comment = f"a={q.a!r},sigma={q.sigma!r},w1_rate={q.w1_rate!r},w2_rate={q.w2_rate!r}"
    write_table(_outdir(cfg) / "limit.csv", cols, cfg["format"], comment)
    return 0


def _snapshot_name(t: float) -> str:
    return f"snapshot_t{t!r}.csv"


def _run_one(data: RiemannData, cfg: dict, out: Path, overlay: bool):
    grid = _grid(cfg)
    times = cfg["output_times"] or (cfg["t_end"],)
    if any(not 0 < t <= cfg["t_end"] for t in times):
        raise ConfigError("output times must lie in (0, t_end]")
    out.mkdir(parents=True, exist_ok=True)
    try:
        rep = run_simulation(data, grid, cfg["t_end"], cfg["cfl"], output_times=times)
    except UnstableBlowup as exc:
        _write_json(out / "report.json", {"status": "blowup", "time": exc.time, "message": str(exc)})
        raise
    fan = None
    if overlay:
        try:
            fan = _solve_exact(data)[1]
        except RiemannError:
            fan = None
    wanted = set(times)
    for f in rep.snapshots:
        if f.t not in wanted:
            continue
        rho, u = f.primitives()
        cols = {"x": grid.centers, "rho": rho, "u": u}
        if fan is not None:
            er, eu = exact_profile(fan, grid.centers, f.t)
            cols["exact_rho"], cols["exact_u"] = er, eu
        write_table(out / _snapshot_name(f.t), cols, cfg["format"])
    summary = rep.summary()
    summary["status"] = "ok"
    summary["cfl"] = cfg["cfl"]
    summary["domain"] = list(cfg["domain"])
    return rep, summary


def cmd_simulate(cfg: dict, overlay: bool = False) -> int:
    if cfg["model"] is Model.PGD:
        raise ConfigError("simulate supports models ar and par only")
    _grid(cfg)
    out = _outdir(cfg)
    if cfg["gammas"] and len(cfg["gammas"]) > 1:
        reports, summaries = [], []
        for g in cfg["gammas"]:
            data = _data(cfg, g)
            rep, summary = _run_one(data, cfg, out / f"gamma_{g!r}", overlay)
            _write_json(out / f"gamma_{g!r}" / "report.json", summary)
            reports.append(rep)
            summaries.append(summary)
        order = sorted(range(len(reports)), key=lambda i: -reports[i].gamma)
        conc = detect_delta_concentration([reports[i] for i in order], strict=False)
        _write_json(out / "concentration.json", {
            "gammas": list(conc.gammas),
            "peak_densities": [_num(v) for v in conc.peak_densities],
            "distances": [_num(v) for v in conc.distances],
            "masses_in_window": [_num(v) for v in conc.masses_in_window],
            "target_mass": _num(conc.target_mass),
            "monotone": conc.monotone,
        })
        return 0
    data = _data(cfg)
    _, summary = _run_one(data, cfg, out, overlay)
    _write_json(out / "report.json", summary)
    return 0


def cmd_reproduce(name: str, cfg: dict) -> int:
    if name not in EXPERIMENTS:
        raise ConfigError(f"unknown experiment {name!r}; choose from {sorted(EXPERIMENTS)}")
    model, gamma, (left, right) = EXPERIMENTS[name]
    cfg = dict(cfg, model=Model(model), gamma=gamma, gammas=None, left=left, right=right)
    data = _data(cfg)
    out = _outdir(cfg)
    rep, summary = _run_one(data, cfg, out, overlay=True)
    dx = rep.final_field.grid.dx
    c = rep.comparison
    checks = {"experiment": name}
    if c is not None:
        checks["position_error"] = _num(c.max_position_error)
        checks["position_within_3dx"] = bool(c.max_position_error <= 3.0 * dx)
        checks["plateau_rel_error"] = None if c.plateau_rel_error is None else _num(c.plateau_rel_error)
        checks["plateau_within_5pct"] = None if c.plateau_rel_error is None else bool(c.plateau_rel_error <= 0.05)
    checks["mass_drift_ok"] = bool(rep.total_mass_drift <= 1e-8)
    summary["checks"] = checks
    _write_json(out / "report.json", summary)
    return 0


# ------------------------------------------------------------------ parser

def _add_common(p: argparse.ArgumentParser, data_flags: bool = True):
    p.add_argument("--config", help="key = value file; flags override it")
    p.add_argument("--out", help="output directory (default: current)")
    p.add_argument("--format", choices=("csv", "json"))
    if data_flags:
        p.add_argument("--model", choices=[m.value for m in Model])
        p.add_argument("--gamma", type=float)
        p.add_argument("--gammas", help="comma-separated gamma list")
        p.add_argument("--left", nargs=2, type=float, metavar=("RHO", "U"))
        p.add_argument("--right", nargs=2, type=float, metavar=("RHO", "U"))


def _add_sim(p: argparse.ArgumentParser):
    p.add_argument("--t-end", dest="t_end", type=float)
    p.add_argument("--cells", type=int)
    p.add_argument("--cfl", type=float)
    p.add_argument("--domain", nargs=2, type=float, metavar=("XMIN", "XMAX"))
    p.add_argument("--output-times", dest="output_times", help="comma-separated snapshot times")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="arlimit", description="Delta-shock limits of Aw-Rascle type models.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="exact Riemann solution (waves.json, profile.csv)")
    _add_common(p)
    p.add_argument("--samples", type=int, help="number of xi samples in profile.csv")

    p = sub.add_parser("limit", help="convergence table toward the delta shock (limit.csv)")
    _add_common(p)

    p = sub.add_parser("simulate", help="WENO5/RK3 run (snapshots, report.json)")
    _add_common(p)
    _add_sim(p)

    p = sub.add_parser("reproduce", help="run one of the registered reference experiments")
    p.add_argument("experiment", choices=sorted(EXPERIMENTS))
    _add_common(p, data_flags=False)
    _add_sim(p)
    return parser


def _fail(code: int, kind: str, message: str, **extra) -> int:
    payload = {"error": kind, "message": message, "exit_code": code}
    payload.update(extra)
    sys.stderr.write(json.dumps(payload) + "\n")
    return code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = resolve_config(args)
        if args.command == "solve":
            return cmd_solve(cfg)
        if args.command == "limit":
            return cmd_limit(cfg)
        if args.command == "simulate":
            return cmd_simulate(cfg)
        return cmd_reproduce(args.experiment, cfg)
    except ConfigError as exc:
        return _fail(EXIT_CONFIG, "config", str(exc))
    except UnstableBlowup as exc:
        return _fail(EXIT_BLOWUP, "blowup", str(exc), time=exc.time)
    except RiemannError as exc:
        return _fail(EXIT_SOLVER, type(exc).__name__, str(exc))


def _entry():
    sys.exit(main())


if __name__ == "__main__":
    _entry()
