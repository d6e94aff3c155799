"""Benchmark the pure-python kernels against the compiled extension.

Runs every hot kernel on realistic batch sizes with both backends, checks
that the outputs agree, and reports per-call times and speedups.  The
compiled backend is optional; if the extension is missing the script says
so and exits cleanly.

Usage:
    python3 benchmarks/bench_kernels.py --size 200000 --repeats 5 --out bench.csv
"""

import argparse
import math
import sys
import time

import numpy as np

from shadowfit._kernels import _ref

try:
    from shadowfit._kernels import _fast
except ImportError:
    _fast = None


def _unit_dirs(rng, n):
    v = rng.standard_normal((n, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def _best_of(fn, repeats):
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def build_cases(size, rng):
    u = rng.uniform(-7.0, 7.0, size)
    dirs = _unit_dirs(rng, size)
    centers = _unit_dirs(rng, 6)
    radii = np.full(6, 0.14)
    heights = np.full(6, 1e-4)
    prof = rng.uniform(-1.5, 1.5, 4 * size)
    return [
        ("cone_section_radial", lambda k: k.cone_section_radial(0.9, u)),
        ("cylinder_section_radial", lambda k: k.cylinder_section_radial(0.51, 1.2, u)),
        ("cylinder_radial", lambda k: k.cylinder_radial(0.51, 0.51, dirs)),
        ("double_cone_radial", lambda k: k.double_cone_radial(1.0, 1.0, dirs)),
        ("cylinder_support", lambda k: k.cylinder_support(0.51, 0.51, dirs)),
        ("double_cone_support", lambda k: k.double_cone_support(1.0, 1.0, dirs)),
        ("cap_profile", lambda k: k.cap_profile(prof)),
        ("bump_sum", lambda k: k.bump_sum(dirs, centers, radii, heights)),
        ("ring_sum", lambda k: k.ring_sum(dirs, 1e-5, 0.07)),
    ]


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--size", type=int, default=200000, help="batch size per kernel")
    parser.add_argument("--repeats", type=int, default=5, help="take the best of this many runs")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", help="also write the table as CSV to this path")
    args = parser.parse_args(argv)

    if _fast is None:
        print("compiled kernels are not available; only the python backend is installed")
        return 1

    rng = np.random.default_rng(args.seed)
    cases = build_cases(args.size, rng)

    rows = []
    header = ("kernel", "n", "python_ms", "compiled_ms", "speedup", "max_diff")
    print("%-24s %9s %11s %12s %8s %10s" % header)
    for name, call in cases:
        ref_out = np.asarray(call(_ref), dtype=float)
        fast_out = np.asarray(call(_fast), dtype=float)
        diff = float(np.max(np.abs(ref_out - fast_out))) if ref_out.size else 0.0
        t_ref = _best_of(lambda: call(_ref), args.repeats) * 1e3
        t_fast = _best_of(lambda: call(_fast), args.repeats) * 1e3
        n = ref_out.size
        rows.append((name, n, t_ref, t_fast, t_ref / t_fast, diff))
        print(
            "%-24s %9d %11.3f %12.3f %7.2fx %10.2e"
            % (name, n, t_ref, t_fast, t_ref / t_fast, diff)
        )

    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(",".join(header) + "\n")
            for name, n, t_ref, t_fast, speed, diff in rows:
                fh.write(
                    "%s,%d,%.6f,%.6f,%.3f,%.17g\n" % (name, n, t_ref, t_fast, speed, diff)
                )
        print("wrote %s" % args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
