"""Compare the compiled and pure kernels on kernel-bound workloads.

Run as a script; it re-launches itself twice (once per backend, via the
PLMONSTER_PURE environment switch), times the same seeded workloads in
each child, and prints a side-by-side table:

    python3 benchmarks/bench_core.py [--repeat 3]

Workloads are chosen to spend their time inside the kernel (grid
composition, inversion, evaluation, displacement) rather than in the
Fraction-based layers above it, so the table reflects the backend split
and not shared Python code.
"""

import argparse
import json
import os
import random
import subprocess
import sys
import time
from fractions import Fraction


def random_grid(rng, cuts=9, xden=1 << 10, yden=3 << 10):
    """A random canonical grid as lowest-terms (num, den) pair tuples."""
    from plmonster._core import canon_grid

    xs = [Fraction(0)]
    xs += sorted({Fraction(rng.randint(1, xden - 1), xden) for _ in range(cuts)})
    xs.append(Fraction(1))
    vals = set()
    while len(vals) < len(xs) - 1:
        vals.add(Fraction(rng.randint(0, yden - 1), yden))
    vals = sorted(vals)
    ys = vals + [vals[0] + 1]
    gx = tuple((q.numerator, q.denominator) for q in xs)
    gy = tuple((q.numerator, q.denominator) for q in ys)
    return canon_grid(gx, gy)


def bench_compose_pairs(rng):
    """All ordered pairs from 40 random 10-segment grids: 1600 composites."""
    from plmonster._core import compose

    grids = [random_grid(rng) for _ in range(40)]
    start = time.perf_counter()
    for fx, fy in grids:
        for gx, gy in grids:
            compose(fx, fy, gx, gy)
    return time.perf_counter() - start


def bench_compose_chain(rng):
    """Left-fold 120 random grids into one composite with a growing grid."""
    from plmonster._core import compose

    grids = [random_grid(rng, cuts=4) for _ in range(120)]
    start = time.perf_counter()
    ax, ay = grids[0]
    for gx, gy in grids[1:]:
        ax, ay, _ = compose(ax, ay, gx, gy)
    elapsed = time.perf_counter() - start
    if len(ax) < 100:
        raise RuntimeError("chain stayed unexpectedly small: %d" % len(ax))
    return elapsed


def bench_invert(rng):
    """Invert 400 random grids and compose each with its inverse."""
    from plmonster._core import compose, invert

    grids = [random_grid(rng) for _ in range(400)]
    start = time.perf_counter()
    for gx, gy in grids:
        ix, iy, _ = invert(gx, gy)
        compose(gx, gy, ix, iy)
    return time.perf_counter() - start


def bench_eval(rng):
    """Evaluate one 200-segment grid at 20000 rational points."""
    from plmonster._core import canon_grid, eval_lift, rat

    big = random_grid(rng, cuts=220, xden=1 << 16, yden=3 << 16)
    points = [rat(rng.randint(0, 1 << 16), 1 << 16) for _ in range(20000)]
    start = time.perf_counter()
    for x in points:
        eval_lift(big[0], big[1], x)
    return time.perf_counter() - start


def bench_rotation(rng):
    """Certify the irrational rotation number of g0 up to denominator 50."""
    from plmonster.rotation import rotation_number
    from plmonster.stein import irrational_candidate_g0

    g0 = irrational_candidate_g0()
    start = time.perf_counter()
    for _ in range(20):
        rotation_number(g0, max_denominator=50, depth=200)
    return time.perf_counter() - start


WORKLOADS = [
    ("compose-pairs", bench_compose_pairs),
    ("compose-chain", bench_compose_chain),
    ("invert-roundtrip", bench_invert),
    ("eval-20k", bench_eval),
    ("rotation-certify-x20", bench_rotation),
]


def run_child(repeat):
    import plmonster

    timings = {}
    for name, fn in WORKLOADS:
        best = min(fn(random.Random(1729)) for _ in range(repeat))
        timings[name] = best
    print(json.dumps({"backend": plmonster.BACKEND, "timings": timings}))


def launch(repeat, force_pure):
    env = dict(os.environ)
    if force_pure:
        env["PLMONSTER_PURE"] = "1"
    else:
        env.pop("PLMONSTER_PURE", None)
    out = subprocess.run(
        [sys.executable, os.path.abspath(__file__), "--child", "--repeat", str(repeat)],
        capture_output=True,
        text=True,
        env=env,
        check=True,
    )
    return json.loads(out.stdout)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3, help="best of N runs")
    parser.add_argument("--child", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args(argv)

    if args.child:
        run_child(args.repeat)
        return 0

    pure = launch(args.repeat, force_pure=True)
    fast = launch(args.repeat, force_pure=False)
    if fast["backend"] == "pure":
        print("compiled kernel not built; both columns ran the pure kernel")

    width = max(len(name) for name, _ in WORKLOADS)
    print(
        "%-*s  %10s  %10s  %8s"
        % (width, "workload", "pure", fast["backend"], "speedup")
    )
    for name, _ in WORKLOADS:
        a = pure["timings"][name]
        b = fast["timings"][name]
        print(
            "%-*s  %9.3fs  %9.3fs  %7.2fx" % (width, name, a, b, a / b)
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
