#!/usr/bin/env python3
"""Time the hot kernels under the numba backend and the numpy fallback.

Each workload runs once for JIT warmup, then `--repeat` times per backend;
the best wall time is reported. Results are exact-integer identical across
backends, so only speed differs.

    python3 benchmarks/bench_backends.py [--repeat 3]
"""

import argparse
import itertools
import time

import numpy as np

from harmchoice import HAVE_NUMBA, enumerate_census, sample_census, set_backend
from harmchoice import _kernels


def random_choice_picks(rng, n):
    size = 1 << n
    picks = np.empty(size, dtype=np.int16)
    picks[0] = -1
    for m in range(1, size):
        members = [e for e in range(n) if (m >> e) & 1]
        picks[m] = members[rng.integers(0, len(members))]
    return picks


def workloads():
    rng = np.random.default_rng(0)
    picks8 = random_choice_picks(rng, 8)
    orders8 = np.array(list(itertools.permutations(range(8))), dtype=np.int64)
    orders4 = np.array(list(itertools.permutations(range(4))), dtype=np.int64)
    batch4 = np.vstack([random_choice_picks(rng, 4) for _ in range(20736)])
    return [
        ("order scan, n=8, 40320 orders", lambda: _kernels.order_scores(picks8, orders8)),
        ("brute batch, 20736 choices x 24 orders", lambda: _kernels.brute_sp_batch(batch4, orders4)),
        ("exact census, n=4", lambda: enumerate_census(4)),
        ("sampled census, n=5, 1e5 draws", lambda: sample_census(5, 100_000, seed=0)),
    ]


def best_time(fn, repeat):
    fn()  # warmup / JIT
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = ["numpy"] + (["numba"] if HAVE_NUMBA else [])
    rows = []
    for name, fn in workloads():
        timings = {}
        for backend in backends:
            set_backend(backend)
            try:
                timings[backend] = best_time(fn, args.repeat)
            finally:
                set_backend(None)
        rows.append((name, timings))

    width = max(len(name) for name, _ in rows)
    header = f"{'workload':<{width}}  " + "".join(f"{b:>12}" for b in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for name, timings in rows:
        line = f"{name:<{width}}  " + "".join(f"{timings[b] * 1e3:>10.1f}ms" for b in backends)
        if len(backends) == 2:
            line += f"{timings['numpy'] / timings['numba']:>9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
