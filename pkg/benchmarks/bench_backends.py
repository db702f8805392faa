"""Compare the jit and pure-numpy kernel backends on the residual scan.

Times two things per backend: the full phase_b_scan (includes the
per-character Python passes, identical for both backends) and the
kernel-bound resultant scan alone.  The jit backend is warmed before
timing so compilation cost is not billed to it.

    python3 benchmarks/bench_backends.py --lmax 200000 --repeat 3
"""

import argparse
import time

import numpy as np

from frobsieve.backend import get_kernels
from frobsieve.frobdata import scholten_dataset
from frobsieve.primes import primes_up_to
from frobsieve.residual import _record_arrays, phase_b_scan
from frobsieve.sieve import SieveConfig


def best_of(repeat, fn):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--lmax", type=int, default=200_000,
                    help="scan primes up to this bound (default 200000)")
    ap.add_argument("--repeat", type=int, default=3,
                    help="repetitions per measurement, best-of reported")
    args = ap.parse_args()
    if args.lmax < 2 or args.repeat < 1:
        ap.error("--lmax must be >= 2 and --repeat >= 1")

    ds = scholten_dataset()
    cfg = SieveConfig()
    ells = np.array(primes_up_to(args.lmax), np.int64)
    print(f"records: {len(ds.records)}   primes <= {args.lmax}: {len(ells)}"
          f"   best of {args.repeat}")

    results = {}
    for name in ("numba", "numpy"):
        try:
            kernels, resolved = get_kernels(name)
        except ImportError as exc:
            print(f"{name:>6}: unavailable ({exc})")
            continue
        assert resolved == name
        if name == "numba":
            _record_arrays(ds, cfg, ells[:25], kernels)  # trigger jit
        kernel_t = best_of(args.repeat,
                           lambda: _record_arrays(ds, cfg, ells, kernels))
        scan_t = best_of(args.repeat,
                         lambda: phase_b_scan(ds, cfg, args.lmax, backend=name))
        results[name] = (kernel_t, scan_t)
        print(f"{name:>6}: kernels {kernel_t:8.3f}s   full scan {scan_t:8.3f}s")

    if len(results) == 2:
        ratio = results["numpy"][0] / results["numba"][0]
        print(f"kernel speedup numba over numpy: {ratio:.2f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
