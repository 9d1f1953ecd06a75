#!/usr/bin/env python3
"""Benchmark the compiled ladder kernels against the pure-python twin.

Two views:
* kernel micro-benchmarks (both modules imported side by side);
* end-to-end curve evaluation per backend (subprocess with EMRATE_BACKEND,
  since the backend is fixed at import time).

Usage: python benchmarks/bench_backends.py [--points 60] [--reps 200]
"""

import argparse
import subprocess
import sys
import time

_CURVE_SNIPPET = """
import time
import numpy as np
from emrate import _backend
from emrate.mie import SphereMedium
from emrate.rates import decay_correction_series
medium = SphereMedium(q=0.5, epsilon=1.5 + 0.5j)
grid = np.linspace(0.55, 12.0, {points})
t0 = time.perf_counter()
for z in grid:
    decay_correction_series(float(z), medium, "perp", tol=1e-10)
print(_backend.BACKEND, time.perf_counter() - t0)
"""


def bench_kernels(reps: int) -> None:
    from emrate import _kernels_py

    try:
        from emrate import _kernels
    except ImportError:
        print("compiled kernel not built; only the pure-python timing is shown")
        _kernels = None

    args = [2.0, 30.0, 1 + 0.5j, 0.6, 5 + 2j, 0.51]
    rows = []
    for label, fn_name, lmax in (
        ("jn_ladder  (lmax=100)", "jn_ladder", 100),
        ("h1n_ladder (lmax=100)", "h1n_ladder", 100),
        ("h1n_ladder (lmax=400)", "h1n_ladder", 400),
    ):
        times = {}
        for mod_label, mod in (("python", _kernels_py), ("compiled", _kernels)):
            if mod is None:
                continue
            fn = getattr(mod, fn_name)
            t0 = time.perf_counter()
            for _ in range(reps):
                for z in args:
                    fn(lmax, z)
            times[mod_label] = (time.perf_counter() - t0) / (reps * len(args))
        rows.append((label, times))

    print(f"{'kernel':<24}{'python':>12}{'compiled':>12}{'speedup':>10}")
    for label, times in rows:
        py = times.get("python")
        cy = times.get("compiled")
        speed = f"{py / cy:8.1f}x" if py and cy else "       -"
        cy_s = f"{cy * 1e6:10.1f}us" if cy else "         -"
        print(f"{label:<24}{py * 1e6:10.1f}us{cy_s}{speed}")


def bench_curve(points: int) -> None:
    print(f"\nend-to-end: {points}-point correction curve per backend")
    for backend in ("python", "compiled"):
        proc = subprocess.run(
            [sys.executable, "-c", _CURVE_SNIPPET.format(points=points)],
            env={"EMRATE_BACKEND": backend, "PATH": "/usr/bin:/bin:/usr/local/bin"},
            capture_output=True,
            text=True,
        )
        if proc.returncode != 0:
            print(f"  {backend:<9} unavailable ({proc.stderr.strip().splitlines()[-1]})")
            continue
        name, seconds = proc.stdout.split()
        print(f"  {name:<9} {float(seconds):8.3f}s")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--reps", type=int, default=200)
    parser.add_argument("--points", type=int, default=60)
    args = parser.parse_args()
    bench_kernels(args.reps)
    bench_curve(args.points)


if __name__ == "__main__":
    main()
