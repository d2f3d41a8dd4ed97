"""Compare the numba and numpy residue prefilters on the example curve.

    python3 benchmarks/bench_prefilter.py --bound 2000 --repeat 3

Both backends must return identical candidate lists; the script aborts
otherwise.  The numba timing excludes the first (compiling) call.
"""
import argparse
import time

import numpy as np

from effmordell._accel import HAVE_NUMBA
from effmordell._kernels import SIEVE_MODULI, prefilter_block, residue_tables

EXAMPLE_COEFFS = (1, 0, 1, 0, 1, 0, 1)


def best_of(repeat, fn):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - start)
    return min(times), out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--bound", type=int, default=2000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    tables = residue_tables(EXAMPLE_COEFFS)
    B = args.bound
    run = lambda backend: prefilter_block(1, B, B, tables, SIEVE_MODULI, backend=backend)

    t_np, (p_np, q_np) = best_of(args.repeat, lambda: run("numpy"))
    print(f"bound={B} pairs={(2 * B + 1) * B} survivors={len(p_np)}")
    print(f"numpy  {t_np:8.3f} s")
    if not HAVE_NUMBA:
        print("numba  not installed")
        return
    start = time.perf_counter()
    run("numba")
    print(f"numba  {time.perf_counter() - start:8.3f} s  (first call, includes compile or cache load)")
    t_nb, (p_nb, q_nb) = best_of(args.repeat, lambda: run("numba"))
    order_np = np.lexsort((p_np, q_np))
    order_nb = np.lexsort((p_nb, q_nb))
    if not (np.array_equal(p_np[order_np], p_nb[order_nb]) and np.array_equal(q_np[order_np], q_nb[order_nb])):
        raise SystemExit("backends disagree")
    print(f"numba  {t_nb:8.3f} s")
    print(f"speedup {t_np / t_nb:6.1f}x")


if __name__ == "__main__":
    main()
