"""Compare the compiled and pure-Python Smith normal form kernels.

Two workloads: the flattened local-module relation matrices of a sweep of
abelian extensions, and random dense integer matrices. Both kernels must
return identical invariant factors; the script exits nonzero otherwise.

    python benchmarks/bench_snf.py [--repeat 3] [--random 300] [--size 12]
"""

import argparse
import random
import sys
import time

from ssiwasawa import smith
from ssiwasawa.local_module import build_presentation, flatten
from ssiwasawa.tower import FieldSpec, build_tower, legal_traces


def module_matrices():
    mats = []
    for p in (2, 3, 5):
        for f in (1, 2, 3):
            for m in (-1, 0, 1):
                for a_p in legal_traces(p):
                    tower = build_tower(FieldSpec(p=p, f=f, m=m, a_p=a_p))
                    pres = build_presentation(tower)
                    width = tower.G.order * len(pres.generators)
                    mats.append((flatten(pres), width))
    return mats


def random_matrices(count, size, seed=0):
    rng = random.Random(seed)
    mats = []
    for _ in range(count):
        r, c = rng.randint(1, size), rng.randint(1, size)
        mats.append(([[rng.randint(-20, 20) for _ in range(c)] for _ in range(r)], c))
    return mats


def run(mats, backend, transforms):
    out = []
    start = time.perf_counter()
    for rows, ncols in mats:
        out.append(
            smith.smith_normal_form(rows, want_transforms=transforms, ncols=ncols, backend=backend).invariant_factors
        )
    return time.perf_counter() - start, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--random", type=int, default=300, help="number of random matrices")
    ap.add_argument("--size", type=int, default=12, help="max rows/columns of random matrices")
    args = ap.parse_args(argv)

    if smith.BACKEND != "cython":
        print("compiled kernel unavailable; only the Python kernel can be timed", file=sys.stderr)
        return 1

    workloads = {
        "module matrices": module_matrices(),
        f"random <= {args.size}x{args.size}": random_matrices(args.random, args.size),
    }
    print(f"{'workload':<24} {'transforms':<10} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    ok = True
    for name, mats in workloads.items():
        for transforms in (False, True):
            best = {}
            results = {}
            for backend in ("python", "cython"):
                times = []
                for _ in range(args.repeat):
                    t, results[backend] = run(mats, backend, transforms)
                    times.append(t)
                best[backend] = min(times)
            if results["python"] != results["cython"]:
                ok = False
                print(f"MISMATCH in {name}", file=sys.stderr)
            speedup = best["python"] / best["cython"] if best["cython"] else float("inf")
            print(
                f"{name:<24} {str(transforms):<10} {best['python']:>10.4f} {best['cython']:>10.4f} {speedup:>7.1f}x"
            )
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
