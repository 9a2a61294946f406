"""Time the numba and numpy squeezer kernels.

Usage::

    python3 benchmarks/bench_kernels.py [--cutoffs 16 32 48] [--repeat 5]

Reports the median time of one generator product ``K @ psi`` for each
backend, and the median time of a full ``apply_s3_numeric`` on the vacuum,
measured in a fresh interpreter per backend so the module-level backend
switch takes effect.
"""

import argparse
import json
import os
import statistics
import subprocess
import sys
import time

import numpy as np

from trisqueeze import _kernels


def _median_time(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def bench_matvec(n_max, repeat):
    d = n_max + 1
    rng = np.random.default_rng(0)
    psi = rng.normal(size=(d, d, d)) + 1j * rng.normal(size=(d, d, d))
    out = np.empty_like(psi)
    row = {"n_max": n_max}
    impls = {"numpy": _kernels.squeeze_matvec_numpy}
    if _kernels.HAVE_NUMBA:
        impls["numba"] = _kernels.squeeze_matvec_numba
        _kernels.squeeze_matvec_numba(psi, 0.6, 0.45, out)  # compile outside the timing
    for name, fn in impls.items():
        row[name] = _median_time(lambda: fn(psi, 0.6, 0.45, out), repeat)
    return row


_APPLY_SNIPPET = """
import json, statistics, sys, time
from trisqueeze import _kernels
from trisqueeze.fockspace import FockCutoff, apply_s3_numeric, vacuum
n_max, repeat = int(sys.argv[1]), int(sys.argv[2])
v = vacuum(FockCutoff(n_max))
apply_s3_numeric(vacuum(FockCutoff(2)), 0.6, 0.45)
ts = []
for _ in range(repeat):
    t0 = time.perf_counter()
    apply_s3_numeric(v, 0.6, 0.45)
    ts.append(time.perf_counter() - t0)
print(json.dumps({"backend": _kernels.BACKEND, "seconds": statistics.median(ts)}))
"""


def bench_apply(n_max, repeat, disable_numba):
    env = dict(os.environ)
    if disable_numba:
        env["TRISQUEEZE_DISABLE_NUMBA"] = "1"
    else:
        env.pop("TRISQUEEZE_DISABLE_NUMBA", None)
    out = subprocess.run(
        [sys.executable, "-c", _APPLY_SNIPPET, str(n_max), str(repeat)],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    return json.loads(out.stdout)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--cutoffs", type=int, nargs="+", default=[16, 32, 48])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)

    print("single product K @ psi (median seconds)")
    print(f"{'n_max':>6} {'numpy':>12} {'numba':>12} {'speedup':>8}")
    for n in args.cutoffs:
        row = bench_matvec(n, args.repeat)
        nb = row.get("numba")
        speed = f"{row['numpy'] / nb:8.1f}" if nb else "     n/a"
        print(f"{n:>6} {row['numpy']:12.3e} {nb if nb else float('nan'):12.3e} {speed}")

    print("\nfull apply_s3_numeric on vacuum, mu=0.6 nu=0.45 (median seconds)")
    print(f"{'n_max':>6} {'numpy':>12} {'numba':>12}")
    for n in args.cutoffs:
        np_t = bench_apply(n, args.repeat, disable_numba=True)["seconds"]
        nb = bench_apply(n, args.repeat, disable_numba=False)
        nb_t = nb["seconds"] if nb["backend"] == "numba" else float("nan")
        print(f"{n:>6} {np_t:12.3e} {nb_t:12.3e}")


if __name__ == "__main__":
    main()
