"""Compare the compiled and numpy WENO5 split-flux kernels.

    python3 benchmarks/bench_kernels.py [--cells 400 1600 6400] [--repeat 50]

Reports the time per kernel call and the time of one full run of the
(3.5, 6)/(2, 4) AR problem at gamma = 0.6 for each available backend, and
the largest difference between the backends' outputs.
"""

import argparse
import time

import numpy as np

from arlimit.core import RiemannData
from arlimit.scheme import Grid, available_backends, run_simulation
from arlimit.scheme.solver import ARSystem, _pad


def time_kernel(kernel, U, F, alpha, repeat):
    kernel(U, F, alpha)
    t0 = time.perf_counter()
    for _ in range(repeat):
        kernel(U, F, alpha)
    return (time.perf_counter() - t0) / repeat


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cells", type=int, nargs="+", default=[400, 1600, 6400])
    ap.add_argument("--repeat", type=int, default=50)
    args = ap.parse_args()

    backends = available_backends()
    rng = np.random.default_rng(0)
    law = ARSystem(0.6)
    print(f"backends: {', '.join(backends)}")
    print(f"{'cells':>7} " + " ".join(f"{name + ' [us]':>14}" for name in backends) + f" {'speedup':>8} {'max diff':>10}")
    for n in args.cells:
        rho = 2.0 + rng.random(n)
        u = 4.0 + rng.random(n)
        P = _pad(law.conserved(rho, u), "outflow")
        F = law.flux(P)
        alpha = law.max_speed(P)
        times = {k: time_kernel(f, P, F, alpha, args.repeat) for k, f in backends.items()}
        outs = [f(P, F, alpha) for f in backends.values()]
        diff = max(float(np.max(np.abs(o - outs[0]))) for o in outs)
        speed = times["python"] / times["cython"] if "cython" in times else float("nan")
        print(f"{n:>7} " + " ".join(f"{1e6 * t:>14.1f}" for t in times.values()) + f" {speed:>8.2f} {diff:>10.2e}")

    data = RiemannData.make("ar", (3.5, 6.0), (2.0, 4.0), 0.6)
    grid = Grid(-4.0, 4.0, 400)
    print("\nfull run, AR gamma=0.6, 400 cells, t=0.4:")
    for name, f in backends.items():
        t0 = time.perf_counter()
        rep = run_simulation(data, grid, 0.4, kernel=f, compare=False)
        print(f"  {name:>7}: {time.perf_counter() - t0:.3f} s, {rep.steps} steps")


if __name__ == "__main__":
    main()
