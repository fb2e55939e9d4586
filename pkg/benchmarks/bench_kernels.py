"""Timing comparison of the compiled kernels against the numpy fallback.

Run as `python3 benchmarks/bench_kernels.py`; it re-executes itself with
FROBCONG_PURE=1 to collect the fallback column, so one invocation prints
both.  Sizes are chosen so each row takes well under a second on one
core.
"""

import json
import os
import subprocess
import sys
import time

import numpy as np


def _time(fn, *args, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def collect():
    from frobcong import kernels

    rng = np.random.default_rng(2)
    rows = {}

    for n in (2_000, 20_000):
        a = rng.integers(0, 13, n).astype(np.int64)
        b = rng.integers(0, 13, n).astype(np.int64)
        rows[f"conv_mod n={n}"] = _time(kernels.conv_mod, a, b, 13)

    for n in (500, 2_000):
        a = rng.integers(-50, 50, n)
        b = rng.integers(-50, 50, n)
        rows[f"conv_exact n={n}"] = _time(
            kernels.conv_exact, [int(v) for v in a], [int(v) for v in b])

    for n in (50_000, 500_000):
        rows[f"partition_mod_table N={n}"] = _time(
            kernels.partition_mod_table, n, 13)

    for m, n in ((5, 2_000), (11, 1_000)):
        rows[f"theta_rm m={m} N={n}"] = _time(kernels.theta_rm, m, n)

    return kernels.COMPILED, rows


def main():
    if os.environ.get("FROBCONG_PURE"):
        compiled, rows = collect()
        assert not compiled
        print(json.dumps(rows))
        return

    compiled, rows = collect()
    if not compiled:
        print("compiled extension unavailable; fallback timings only")
        for k, v in rows.items():
            print(f"  {k:34s} {v * 1e3:9.2f} ms")
        return

    env = dict(os.environ, FROBCONG_PURE="1")
    out = subprocess.run([sys.executable, __file__], env=env,
                         capture_output=True, text=True, check=True)
    pure = json.loads(out.stdout.strip().splitlines()[-1])

    print(f"{'kernel':34s} {'compiled':>10s} {'fallback':>10s} {'ratio':>7s}")
    for k, v in rows.items():
        pv = pure[k]
        print(f"{k:34s} {v * 1e3:8.2f}ms {pv * 1e3:8.2f}ms {pv / v:6.1f}x")


if __name__ == "__main__":
    main()
