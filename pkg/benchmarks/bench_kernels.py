"""Time the compiled kernels against their pure-Python twins.

    python benchmarks/bench_kernels.py [--repeat 3] [--quick]
"""

from __future__ import annotations

import argparse
import random
import sys
import timeit

from redei8 import kernels


def _workloads(quick: bool):
    rng = random.Random(0)
    rows64 = [[rng.getrandbits(64) for _ in range(48)] for _ in range(200)]
    forms = {n: [[rng.getrandbits(n) >> i << i for i in range(n)] for _ in range(20)] for n in (10, 14)}
    n_bil = 3 if quick else 4
    bil = []
    for _ in range(3):
        upper = [rng.getrandbits(n_bil) >> i << i for i in range(n_bil)]
        diag = sum(((upper[i] >> i) & 1) << i for i in range(n_bil))
        polar = [0] * n_bil
        for i in range(n_bil):
            for j in range(i + 1, n_bil):
                if (upper[i] >> j) & 1:
                    polar[i] |= 1 << j
                    polar[j] |= 1 << i
        bil.append((diag, polar))
    deltas = [-m for m in range(200_003, 200_003 + (400 if quick else 4000), 4)]
    return [
        ("rank_rows 200 x (48 x 64)", lambda k: [k.rank_rows(r, 64) for r in rows64]),
        ("form_stats 20 forms n=10", lambda k: [k.form_stats(u, 10) for u in forms[10]]),
        ("form_stats 20 forms n=14", lambda k: [k.form_stats(u, 14) for u in forms[14]]),
        (f"bilinear_nullity_mask 3 forms n={n_bil}", lambda k: [k.bilinear_nullity_mask(d, p, n_bil) for d, p in bil]),
        (f"reduced_forms {len(deltas)} discriminants", lambda k: [k.reduced_forms(d) for d in deltas]),
    ]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smaller inputs")
    args = ap.parse_args(argv)
    if kernels.compiled_backend is None:
        print("compiled kernels are not built; only the Python timings are shown", file=sys.stderr)
    print(f"{'kernel':<40}{'python s':>12}{'cython s':>12}{'speedup':>10}")
    for name, fn in _workloads(args.quick):
        py = min(timeit.repeat(lambda: fn(kernels.python_backend), number=1, repeat=args.repeat))
        if kernels.compiled_backend is None:
            print(f"{name:<40}{py:>12.4f}{'-':>12}{'-':>10}")
            continue
        if fn(kernels.python_backend) != fn(kernels.compiled_backend):
            print(f"{name}: backends disagree", file=sys.stderr)
            return 1
        cy = min(timeit.repeat(lambda: fn(kernels.compiled_backend), number=1, repeat=args.repeat))
        print(f"{name:<40}{py:>12.4f}{cy:>12.4f}{py / cy:>9.0f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
