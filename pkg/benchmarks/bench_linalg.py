"""Compare the numba and numpy backends of the F_p linear algebra kernels.

    python benchmarks/bench_linalg.py [--sizes 50 100 200] [--repeat 5]

Both backends must agree on every rank; the script exits non-zero otherwise.
One warm-up call per backend keeps JIT compilation out of the timings.
"""

import argparse
import sys
import time

import numpy as np

from syzlab import _kernels
from syzlab.graded import certify_exactness
from syzlab.modules import QuotientRing
from syzlab.poly import PolyRing
from syzlab.resolution import minimal_resolution

P = 32003


def best_of(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def low_rank(rng, n, r):
    a = rng.integers(0, P, size=(n, r))
    b = rng.integers(0, P, size=(r, n))
    # entries stay below n * p^2, far inside int64 for these sizes
    return (a @ b) % P


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[50, 100, 200])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if not _kernels.USE_NUMBA and _kernels.numba is None:
        print("numba is not importable; only the numpy backend is available")
        return 1
    rng = np.random.default_rng(7)
    warm = rng.integers(0, P, size=(8, 8))
    _kernels.rank_mod_p(warm, P, True)
    _kernels.rank_mod_p(warm, P, False)
    ok = True
    print(f"{'case':<28}{'numpy s':>10}{'numba s':>10}{'speedup':>9}")
    for n in args.sizes:
        a = low_rank(rng, n, n // 2)
        tn, rn = best_of(lambda: _kernels.rank_mod_p(a, P, False), args.repeat)
        tj, rj = best_of(lambda: _kernels.rank_mod_p(a, P, True), args.repeat)
        ok &= rn == rj
        print(f"{f'rank {n}x{n} (rank {rn})':<28}{tn:>10.4f}{tj:>10.4f}{tn / tj:>9.1f}")
    S = PolyRing(["x", "y", "z", "w"], P)
    x, y, z, w = S.gens()
    R = QuotientRing(S, [x * y, z * w])
    res = minimal_resolution(R.residue_field(), 6)
    certify_exactness(res, 4, True)  # warm-up
    tn, cn = best_of(lambda: certify_exactness(res, 8, False), args.repeat)
    tj, cj = best_of(lambda: certify_exactness(res, 8, True), args.repeat)
    ok &= cn.checks == cj.checks and cn.exact
    print(f"{'exactness certificate':<28}{tn:>10.4f}{tj:>10.4f}{tn / tj:>9.1f}")
    print("backends agree" if ok else "BACKENDS DISAGREE")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
