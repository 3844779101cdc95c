"""Compare the numba and numpy finite-difference kernels.

Usage::

    python3 benchmarks/bench_kernels.py [--sizes 16 32 64] [--repeat 5] [--json]

Each kernel is warmed up once (numba compiles on the first call), then
timed ``--repeat`` times; the best time is reported together with the
max difference between the two backends' outputs.
"""

from __future__ import annotations

import argparse
import json
import time

import numpy as np

from photon_spinor import build_matrices
from photon_spinor.kernels import backends, dirac_residual_field, gradient


def best_time(fn, repeat: int) -> float:
    fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def run(sizes, repeat: int, boundary: str = "periodic") -> list[dict]:
    rng = np.random.default_rng(0)
    alpha = build_matrices("standard").alpha
    rows = []
    for n in sizes:
        shape = (n, n, n, 6)
        values = rng.normal(size=shape) + 1j * rng.normal(size=shape)
        dt = rng.normal(size=shape) + 1j * rng.normal(size=shape)
        spacing = (2 * np.pi / n,) * 3
        cases = {
            "gradient": lambda b: gradient(values, spacing, boundary, backend=b),
            "dirac_residual": lambda b: dirac_residual_field(values, dt, alpha, spacing, boundary, backend=b),
        }
        for kernel, call in cases.items():
            outputs, timings = {}, {}
            for b in backends():
                outputs[b] = call(b)
                timings[b] = best_time(lambda: call(b), repeat)
            row = {"kernel": kernel, "n": n, **{f"{b}_s": t for b, t in timings.items()}}
            if len(outputs) == 2:
                row["max_abs_diff"] = float(np.max(np.abs(outputs["numba"] - outputs["numpy"])))
                row["speedup"] = timings["numpy"] / timings["numba"]
            rows.append(row)
    return rows


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[16, 32, 64])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--boundary", default="periodic", choices=["periodic", "open", "zero"])
    parser.add_argument("--json", action="store_true")
    args = parser.parse_args()
    rows = run(args.sizes, args.repeat, args.boundary)
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'kernel':<16}{'n':>5}{'numba [ms]':>13}{'numpy [ms]':>13}{'speedup':>9}{'max diff':>12}")
    for r in rows:
        print(
            f"{r['kernel']:<16}{r['n']:>5}{1e3 * r.get('numba_s', float('nan')):>13.3f}"
            f"{1e3 * r['numpy_s']:>13.3f}{r.get('speedup', float('nan')):>9.2f}{r.get('max_abs_diff', float('nan')):>12.2e}"
        )


if __name__ == "__main__":
    main()
