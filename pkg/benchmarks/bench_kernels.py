"""Time the numba kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each kernel runs once untimed on both backends (JIT warm-up, and a parity
check), then ``--repeat`` timed runs; the best time is reported.
"""

from __future__ import annotations

import argparse
import itertools
import time

import numpy as np

from hyperell import _kernels
from hyperell.config import roots_of_unity_config
from hyperell.field import GF, prime_with_roots_of_unity
from hyperell.strata import _admissible_perms


def _best(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases():
    g = 20
    p = prime_with_roots_of_unity(2 * g + 1, 2 * g + 2)
    cfg = roots_of_unity_config(GF(p), 2 * g + 2)
    rows = cfg._int_rows()
    yield f"stabilizer search, {len(rows)} points over F_{p}", lambda nb: _kernels.preserving_maps(
        rows[:3], rows, rows, p, use_numba=nb
    )

    perms = _admissible_perms(8)
    subsets = np.array(list(itertools.combinations(range(8), 4)), dtype=np.int64)
    yield f"two-4-subsets lemma, {len(perms)} permutations of 8", lambda nb: _kernels.lemma_success(
        perms, subsets, use_numba=nb
    )

    q = 999_983
    coeffs = [3, 0, 5, 1, 0, 7, 1]
    yield f"affine point count over F_{q}", lambda nb: _kernels.affine_count(coeffs, 2, q, use_numba=nb)


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if not _kernels.HAVE_NUMBA:
        print("numba is not installed; only the numpy backend is available")
    print(f"{'kernel':55s} {'numpy (s)':>10s} {'numba (s)':>10s} {'speedup':>8s}")
    for name, fn in cases():
        ref = fn(False)
        t_np = _best(lambda: fn(False), args.repeat)
        if _kernels.HAVE_NUMBA:
            got = fn(True)
            if not np.array_equal(np.asarray(ref), np.asarray(got)):
                raise SystemExit(f"backends disagree on {name}")
            t_nb = _best(lambda: fn(True), args.repeat)
            print(f"{name:55s} {t_np:10.4f} {t_nb:10.4f} {t_np / t_nb:7.1f}x")
        else:
            print(f"{name:55s} {t_np:10.4f} {'-':>10s} {'-':>8s}")


if __name__ == "__main__":
    main()
