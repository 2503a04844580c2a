"""Backend selection and pure/compiled kernel agreement."""

import os
import random
import subprocess
import sys
from fractions import Fraction as F

import pytest

import plmonster
from plmonster._core import pure

try:
    from plmonster._core import _speed
except ImportError:
    _speed = None

needs_compiled = pytest.mark.skipif(
    _speed is None, reason="compiled kernel not built"
)


def random_grid(rng):
    """A random canonical grid, as lowest-terms (num, den) pair tuples."""
    cuts = sorted({F(rng.randint(1, 63), 64) for _ in range(rng.randint(0, 5))})
    xs = [F(0)] + cuts + [F(1)]
    vals = set()
    while len(vals) < len(xs) - 1:
        vals.add(F(rng.randint(0, 191), 192))
    vals = sorted(vals)
    ys = vals + [vals[0] + 1]
    gx = tuple((q.numerator, q.denominator) for q in xs)
    gy = tuple((q.numerator, q.denominator) for q in ys)
    return pure.canon_grid(gx, gy)


def test_backend_name_is_one_of_the_two_kernels():
    assert plmonster.BACKEND in {"pure", "compiled"}


def test_pure_kernel_is_always_importable():
    assert pure.BACKEND_NAME == "pure"
    assert pure.ZERO == (0, 1) and pure.ONE == (1, 1)


@needs_compiled
def test_compiled_kernel_reports_its_name():
    assert _speed.BACKEND_NAME == "compiled"


@needs_compiled
def test_kernels_export_the_same_contract():
    names = [
        "ZERO", "ONE", "rat", "radd", "rsub", "rmul", "rdiv", "rcmp",
        "rfloor", "canon_grid", "eval_lift", "compose", "invert",
        "displacement",
    ]
    for name in names:
        assert hasattr(_speed, name), name


@needs_compiled
def test_rational_helpers_agree():
    rng = random.Random(11)
    for _ in range(500):
        a = pure.rat(rng.randint(-99, 99), rng.randint(1, 99))
        b = pure.rat(rng.randint(-99, 99), rng.randint(1, 99))
        assert _speed.radd(a, b) == pure.radd(a, b)
        assert _speed.rsub(a, b) == pure.rsub(a, b)
        assert _speed.rmul(a, b) == pure.rmul(a, b)
        if b[0]:
            assert _speed.rdiv(a, b) == pure.rdiv(a, b)
        assert _speed.rcmp(a, b) == pure.rcmp(a, b)
        assert _speed.rfloor(a) == pure.rfloor(a)
    with pytest.raises(ZeroDivisionError):
        _speed.rat(1, 0)


@needs_compiled
def test_kernels_agree_on_random_grids():
    rng = random.Random(23)
    for _ in range(300):
        fx, fy = random_grid(rng)
        gx, gy = random_grid(rng)
        assert _speed.canon_grid(fx, fy) == (fx, fy)
        assert _speed.compose(fx, fy, gx, gy) == pure.compose(fx, fy, gx, gy)
        assert _speed.invert(fx, fy) == pure.invert(fx, fy)
        assert _speed.displacement(fx, fy) == pure.displacement(fx, fy)
        x = pure.rat(rng.randint(0, 64), 64)
        assert _speed.eval_lift(fx, fy, x) == pure.eval_lift(fx, fy, x)


@needs_compiled
def test_kernels_agree_on_big_denominators():
    rng = random.Random(37)
    big = 2**64
    for _ in range(40):
        cuts = sorted({F(rng.randint(1, big - 1), big) for _ in range(4)})
        xs = [F(0)] + cuts + [F(1)]
        vals = sorted({F(rng.randint(0, 3 * big - 1), 3 * big) for _ in range(len(xs) - 1)})
        while len(vals) < len(xs) - 1:
            vals = sorted(set(vals) | {F(rng.randint(0, 3 * big - 1), 3 * big)})
        ys = vals + [vals[0] + 1]
        gx = tuple((q.numerator, q.denominator) for q in xs)
        gy = tuple((q.numerator, q.denominator) for q in ys)
        gx, gy = pure.canon_grid(gx, gy)
        assert _speed.compose(gx, gy, gx, gy) == pure.compose(gx, gy, gx, gy)
        assert _speed.invert(gx, gy) == pure.invert(gx, gy)


def test_environment_variable_forces_pure_backend():
    env = dict(os.environ, PLMONSTER_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c", "import plmonster; print(plmonster.BACKEND)"],
        capture_output=True,
        text=True,
        env=env,
        check=True,
    )
    assert out.stdout.strip() == "pure"


def test_package_backend_matches_selected_kernel():
    from plmonster import _core

    assert plmonster.BACKEND == _core.BACKEND
    if os.environ.get("PLMONSTER_PURE"):
        assert plmonster.BACKEND == "pure"
