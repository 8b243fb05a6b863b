"""Time the numba kernels against their numpy fallbacks.

    python benchmarks/bench_kernels.py [--repeat 5] [--seed 0]

Both flavours run on identical inputs and must return identical results.
The end-to-end rows call the public functions in a subprocess per flavour,
selected with DUALGEO_DISABLE_NUMBA.
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from dualgeo import kernels


def best(fn, repeat):
    fn()  # warm-up, includes jit compilation
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def chain_case(rng, n):
    pts = np.unique(rng.normal(size=(n, 2)), axis=0)
    xs, ys = pts[:, 0].copy(), pts[:, 1].copy()
    return (
        lambda: kernels.chain_np(xs, ys, True),
        lambda: kernels.chain_nb(xs, ys, True),
        lambda a, b: np.array_equal(a, b),
    )


def lifted_case(rng, n, d=3):
    sites = rng.uniform(-1, 1, (n, d))
    coeffs, offsets = 2 * sites, -np.sum(sites * sites, axis=1)
    x = rng.uniform(-1, 1, d)
    return (
        lambda: kernels.lifted_values_np(coeffs, offsets, x),
        lambda: kernels.lifted_values_nb(coeffs, offsets, x),
        lambda a, b: np.allclose(a, b, rtol=1e-14, atol=1e-14),
    )


def crossing_case(rng, n):
    # a simple polygon, so the whole O(n^2) scan runs
    ang = (np.arange(n) + rng.uniform(0.05, 0.95, n)) * (2 * np.pi / n)
    r = rng.uniform(0.5, 3.0, n)
    xs, ys = r * np.cos(ang), r * np.sin(ang)
    return (
        lambda: kernels.first_crossing_np(xs, ys),
        lambda: kernels.first_crossing_nb(xs, ys),
        lambda a, b: a == b,
    )


END_TO_END = """
import sys, timeit, numpy as np
from dualgeo import convex_hull, knn_query, polygon_kernel, Polygon
from dualgeo.envelope import hull_array
rng = np.random.default_rng(int(sys.argv[1]))
pts = rng.normal(size=(1_000_000, 2))
sites = rng.uniform(-1, 1, (100_000, 3))
n = 400
ang = (np.arange(n) + rng.uniform(0.05, 0.95, n)) * (2 * np.pi / n)
r = rng.uniform(0.5, 3.0, n)
poly = Polygon(tuple(zip((r * np.cos(ang)).tolist(), (r * np.sin(ang)).tolist())))
cases = {
    "hull_array 1e6": lambda: hull_array(pts),
    "knn_query 1e5 d=3": lambda: knn_query(sites, np.zeros(3), 10),
    "polygon_kernel n=400": lambda: polygon_kernel(poly),
}
for name, fn in cases.items():
    fn()
    print(name, min(timeit.repeat(fn, number=1, repeat=int(sys.argv[2]))))
"""


def end_to_end(seed, repeat):
    out = {}
    for flag in ("0", "1"):
        env = dict(os.environ, DUALGEO_DISABLE_NUMBA=flag)
        text = subprocess.run(
            [sys.executable, "-c", END_TO_END, str(seed), str(repeat)],
            env=env, capture_output=True, text=True, check=True,
        ).stdout
        for line in text.splitlines():
            name, t = line.rsplit(" ", 1)
            out.setdefault(name, {})[flag] = float(t)
    return [(name, v["1"], v["0"]) for name, v in out.items()]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--skip-end-to-end", action="store_true")
    args = ap.parse_args(argv)
    if not kernels.HAVE_NUMBA:
        print("numba is not installed; both columns time the fallback")
    rng = np.random.default_rng(args.seed)

    rows = []
    for label, make, sizes in (
        ("chain", chain_case, (10_000, 100_000, 1_000_000)),
        ("lifted_values", lifted_case, (10_000, 100_000, 1_000_000)),
        ("first_crossing", crossing_case, (100, 400, 1_000)),
    ):
        for n in sizes:
            f_np, f_nb, same = make(rng, n)
            assert same(f_np(), f_nb()), f"{label} flavours disagree at n={n}"
            rows.append((f"{label} n={n}", best(f_np, args.repeat), best(f_nb, args.repeat)))
    if not args.skip_end_to_end:
        rows += end_to_end(args.seed, args.repeat)

    width = max(len(r[0]) for r in rows)
    print(f"{'case':<{width}}  {'numpy s':>10}  {'numba s':>10}  {'speedup':>8}")
    for name, t_np, t_nb in rows:
        print(f"{name:<{width}}  {t_np:>10.5f}  {t_nb:>10.5f}  {t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
