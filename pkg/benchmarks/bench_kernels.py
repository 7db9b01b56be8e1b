"""Timing comparison of the jitted loop kernels against the numpy builds.

Runs both implementations in one process on identical inputs, so the
numbers isolate kernel cost from body construction.  Invoke as

    python3 benchmarks/bench_kernels.py [--arcs 64 256 1024] [--repeat 200]

With CONVEXIP_BACKEND=numpy the jitted column is skipped, since the
public names then alias the numpy builds.
"""

import argparse
import time

import numpy as np

from convexip import backend, polytope_from_points, support_curve
from convexip._kernels import (_moment_loop, _moment_np,
                               _product_integral_loop, _product_integral_np,
                               _sup_difference_loop, _sup_difference_np)

if backend.USING_NUMBA:
    from convexip._kernels import curve_moment, product_integral, sup_difference

    JITTED = {
        "product_integral": lambda a, b: product_integral(*a, *b),
        "curve_moment": lambda a, b: curve_moment(*a),
        "sup_difference": lambda a, b: sup_difference(*a, *b, True),
    }
else:
    JITTED = {}

NUMPY = {
    "product_integral": lambda a, b: _product_integral_np(*a, *b),
    "curve_moment": lambda a, b: _moment_np(*a),
    "sup_difference": lambda a, b: _sup_difference_np(*a, *b, True),
}

LOOP = {
    "product_integral": lambda a, b: _product_integral_loop(*a, *b),
    "curve_moment": lambda a, b: _moment_loop(*a),
    "sup_difference": lambda a, b: _sup_difference_loop(*a, *b, True),
}


def curve_args(rng, arcs):
    # jittered circular polygon: every point is extreme, so the curve
    # really has `arcs` arcs
    t = np.sort(rng.uniform(0.0, 2.0 * np.pi, size=arcs))
    r = rng.uniform(1.0, 1.5)
    poly = polytope_from_points(r * np.stack((np.cos(t), np.sin(t)), axis=1))
    c = support_curve(poly)
    return (c.angles, c.ax, c.ay, c.offs)


def run(fn, pairs, repeat):
    # one untimed pass absorbs jit compilation
    fn(*pairs[0])
    t0 = time.perf_counter()
    for _ in range(repeat):
        for a, b in pairs:
            fn(a, b)
    return (time.perf_counter() - t0) / (repeat * len(pairs))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--arcs", type=int, nargs="+", default=[16, 64, 256])
    ap.add_argument("--repeat", type=int, default=200)
    ap.add_argument("--pairs", type=int, default=20)
    args = ap.parse_args()

    mode = "numba" if backend.USING_NUMBA else "numpy only"
    print(f"backend: {mode}")
    header = f"{'kernel':<18} {'arcs':>5} {'numpy':>10} {'loop(py)':>10}"
    if JITTED:
        header += f" {'jitted':>10} {'speedup':>8}"
    print(header)
    rng = np.random.default_rng(12)
    for arcs in args.arcs:
        pairs = [(curve_args(rng, arcs), curve_args(rng, arcs))
                 for _ in range(args.pairs)]
        for name in NUMPY:
            t_np = run(NUMPY[name], pairs, args.repeat)
            t_loop = run(LOOP[name], pairs, max(1, args.repeat // 20))
            line = (f"{name:<18} {arcs:>5} {t_np * 1e6:>9.1f}u "
                    f"{t_loop * 1e6:>9.1f}u")
            if JITTED:
                t_jit = run(JITTED[name], pairs, args.repeat)
                line += f" {t_jit * 1e6:>9.1f}u {t_np / t_jit:>7.1f}x"
            print(line)


if __name__ == "__main__":
    main()
