"""Benchmark the compiled kernels against the pure-Python fallback.

Runs the hot operations of the census pipeline on identical inputs with
both backends and prints a timing table.  The class-scan task is the
one that dominates real censuses: iterate every rotation system on a
fixed dart set, keep the connected ones, and canonicalize.

Usage: python benchmarks/bench_kernels.py [--edges 4] [--maps 20000]
"""

from __future__ import annotations

import argparse
import random
import time

from mapbounds import _pykernels

try:
    from mapbounds import _kernels
except ImportError:
    _kernels = None


def _random_maps(count, n_edges, seed):
    rng = random.Random(seed)
    n = 2 * n_edges
    maps = []
    for _ in range(count):
        sigma = list(range(n))
        rng.shuffle(sigma)
        darts = list(range(n))
        rng.shuffle(darts)
        alpha = [0] * n
        for i in range(0, n, 2):
            a, b = darts[i], darts[i + 1]
            alpha[a], alpha[b] = b, a
        maps.append((tuple(sigma), tuple(alpha)))
    return maps


def _time(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - t0


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--edges", type=int, default=4,
                    help="edge count for the full class scan")
    ap.add_argument("--maps", type=int, default=20000,
                    help="random map count for the per-call benchmarks")
    args = ap.parse_args()

    maps = _random_maps(args.maps, 6, seed=7)
    connected = [(s, a) for s, a in maps if _pykernels.component_count(s, a) == 1]
    rows = []

    def bench(name, pure_fn, comp_fn, data):
        _, t_pure = _time(lambda: [pure_fn(s, a) for s, a in data])
        if comp_fn is not None:
            out_c, t_comp = _time(lambda: [comp_fn(s, a) for s, a in data])
            rows.append((name, t_pure, t_comp))
        else:
            rows.append((name, t_pure, None))

    bench(f"face_count x{len(maps)}",
          _pykernels.face_count,
          _kernels.face_count if _kernels else None, maps)
    bench(f"component_count x{len(maps)}",
          _pykernels.component_count,
          _kernels.component_count if _kernels else None, maps)
    bench(f"canonical_code x{len(connected)}",
          _pykernels.canonical_code,
          _kernels.canonical_code if _kernels else None, connected)

    e = args.edges
    reps_p, t_scan_pure = _time(_pykernels.connected_class_reps, e)
    if _kernels is not None:
        reps_c, t_scan_comp = _time(_kernels.connected_class_reps, e)
        assert len(reps_p[0]) == len(reps_c[0]) and reps_p[1] == reps_c[1], \
            "backend disagreement in the class scan"
        rows.append((f"class scan E={e} ({reps_p[1]} connected)",
                     t_scan_pure, t_scan_comp))
    else:
        rows.append((f"class scan E={e} ({reps_p[1]} connected)",
                     t_scan_pure, None))

    width = max(len(r[0]) for r in rows)
    print(f"{'task':<{width}}  {'pure (s)':>10}  {'compiled (s)':>12}  {'speedup':>8}")
    for name, tp, tc in rows:
        if tc is None:
            print(f"{name:<{width}}  {tp:>10.4f}  {'n/a':>12}  {'n/a':>8}")
        else:
            print(f"{name:<{width}}  {tp:>10.4f}  {tc:>12.4f}  {tp / tc:>7.1f}x")
    if _kernels is None:
        print("compiled extension not available; pure backend only")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
