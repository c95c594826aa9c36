"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py --repeat 5

Both backends are run on the same random inputs; the outputs must be
identical, otherwise the script exits with status 1.
"""

import argparse
import sys
import timeit

import numpy as np

from bongard_forge import kernels


def polyline(rng, n, scale=1.0):
    pts = np.cumsum(rng.normal(0, scale, size=(n + 1, 2)), axis=0)
    return np.hstack([pts[:-1], pts[1:]])


def cases(rng):
    segs = polyline(rng, 60, 12.0) + 256.0
    yield "raster_capsules", (segs, 512, 512, 2, 1.5)
    a, b = rng.random((800, 2)), rng.random((700, 2))
    yield "hausdorff", (a, b)
    shape = polyline(rng, 40)
    pts = np.vstack([shape[:, :2], shape[:, 2:]])
    yield "points_near_segments", (pts, shape, 1e-6)
    # a symmetric polyline so the scan has to run to its matching angle
    half = np.cumsum(np.abs(rng.normal(0, 1, size=(20, 2))), axis=0)
    half = np.vstack([[0.0, 0.0], half])
    full = np.vstack([half[::-1] * [-1, 1], half[1:]])
    sym = np.hstack([full[:-1], full[1:]])
    angles = np.radians(np.arange(0, 180, 0.25))
    cs = np.column_stack([np.cos(2 * angles), np.sin(2 * angles)])
    dense = np.vstack([sym[:, :2] + t * (sym[:, 2:] - sym[:, :2]) for t in np.linspace(0, 1, 8)])
    yield "reflection_scan", (dense, sym, (0.0, 0.0), cs, 1e-6)


def same(x, y) -> bool:
    if isinstance(x, np.ndarray):
        return x.dtype == y.dtype and np.array_equal(x, y)
    return x == y


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if kernels.compiled is None:
        print("compiled backend not built; only the numpy kernels are available")
        return 1
    rng = np.random.default_rng(args.seed)
    ok = True
    print(f"{'kernel':22s} {'cython ms':>10s} {'numpy ms':>10s} {'speedup':>8s}  equal")
    for name, inputs in cases(rng):
        fc, fp = getattr(kernels.compiled, name), getattr(kernels.python, name)
        eq = same(fc(*inputs), fp(*inputs))
        ok &= eq
        tc = min(timeit.repeat(lambda: fc(*inputs), number=1, repeat=args.repeat)) * 1e3
        tp = min(timeit.repeat(lambda: fp(*inputs), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:22s} {tc:10.2f} {tp:10.2f} {tp / tc:8.1f}  {'yes' if eq else 'NO'}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
