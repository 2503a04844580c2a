"""Exact piecewise linear circle maps and their lifts to the line.

A circle map here is an orientation preserving piecewise linear bijection
of R/Z (degree 1), described by finitely many breakpoints in [0, 1) and
their images.  A line map is a lift: a PL homeomorphism of R commuting
with the unit translation, determined by a circle map together with an
integer offset k via  fbar(0) = f(0) + k  (taking the representative of
f(0) in [0, 1)).  All coordinates are arbitrary-precision rationals;
floats are rejected everywhere.

Composition convention: ``compose(f, g)`` applies ``f`` first, then ``g``,
so ``compose(f, g)(x) == g(f(x))``.  The product ``f * g`` follows the
same left-to-right order, as do words in the amalgam module.

Maps are kept in canonical form (no breakpoint whose removal leaves the
same function), and equality is structural equality of canonical forms,
which coincides with equality as functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from . import _core as core

RationalLike = Union[Fraction, int, str]

BACKEND = core.BACKEND


def as_fraction(value: RationalLike) -> Fraction:
    """Coerce int, ``'p/q'`` string, or Fraction; floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational coordinate")
    if isinstance(value, float):
        raise TypeError("refusing float %r; pass a Fraction or 'p/q' string" % (value,))
    return Fraction(value)


def _pair(fr: Fraction):
    return (fr.numerator, fr.denominator)


def _frac(pair) -> Fraction:
    return Fraction(pair[0], pair[1])


class PLCircleMap:
    """Orientation preserving PL bijection of the circle R/Z.

    Constructed from parallel sequences of breakpoints and image points,
    both in [0, 1); the image sequence must be cyclically strictly
    increasing (the map winds exactly once).  Between breakpoints the map
    interpolates affinely, wrapping once around the circle.
    """

    __slots__ = ("_xs", "_ys")

    def __init__(self, breakpoints, images):
        breaks = [as_fraction(b) for b in breakpoints]
        imgs = [as_fraction(v) for v in images]
        if len(breaks) != len(imgs):
            raise ValueError("breakpoints and images must have equal length")
        if not breaks:
            raise ValueError("a map needs at least one breakpoint")
        for b in breaks:
            if not 0 <= b < 1:
                raise ValueError("breakpoint %s outside [0, 1)" % b)
        for v in imgs:
            if not 0 <= v < 1:
                raise ValueError("image %s outside [0, 1)" % v)
        for i in range(len(breaks) - 1):
            if breaks[i + 1] <= breaks[i]:
                raise ValueError("breakpoints must be strictly increasing")

        m = len(breaks)
        if m == 1:
            tilde = imgs[:]
        else:
            descents = []
            for i in range(m - 1):
                if imgs[i + 1] == imgs[i]:
                    raise ValueError("images must be distinct")
                if imgs[i + 1] < imgs[i]:
                    descents.append(i)
            if len(descents) > 1:
                raise ValueError("images are not cyclically increasing (winding != 1)")
            if descents:
                if imgs[0] <= imgs[-1]:
                    raise ValueError("images are not cyclically increasing (winding != 1)")
                i = descents[0]
                tilde = imgs[: i + 1] + [v + 1 for v in imgs[i + 1 :]]
            else:
                tilde = imgs[:]

        one = Fraction(1)
        if breaks[0] == 0:
            grid_x = breaks + [one]
            grid_y = tilde + [tilde[0] + 1]
        else:
            # value of the unrolled graph at x = 1, inside the closing segment
            slope = (tilde[0] + 1 - tilde[-1]) / (breaks[0] + 1 - breaks[-1])
            h1 = tilde[-1] + (1 - breaks[-1]) * slope
            grid_x = [Fraction(0)] + breaks + [one]
            grid_y = [h1 - 1] + tilde + [h1]
        if grid_y[0] < 0:
            grid_y = [v + 1 for v in grid_y]

        xs, ys = core.canon_grid(
            [_pair(x) for x in grid_x], [_pair(y) for y in grid_y]
        )
        self._xs = xs
        self._ys = ys

    @classmethod
    def _from_grid(cls, xs, ys) -> "PLCircleMap":
        self = object.__new__(cls)
        self._xs = xs
        self._ys = ys
        return self

    def _anchor_is_corner(self) -> bool:
        xs, ys = self._xs, self._ys
        if len(xs) == 2:
            return False
        first = core.rdiv(core.rsub(ys[1], ys[0]), core.rsub(xs[1], xs[0]))
        last = core.rdiv(core.rsub(ys[-1], ys[-2]), core.rsub(xs[-1], xs[-2]))
        return first != last

    @property
    def breakpoints(self) -> tuple:
        """Canonical breakpoints: genuine corners, or (0,) for a rotation."""
        xs = self._xs
        if len(xs) == 2:
            return (Fraction(0),)
        pts = []
        if self._anchor_is_corner():
            pts.append(Fraction(0))
        pts.extend(_frac(x) for x in xs[1:-1])
        return tuple(pts)

    @property
    def images(self) -> tuple:
        """Circle images of the canonical breakpoints."""
        xs, ys = self._xs, self._ys
        if len(xs) == 2:
            return (_frac(ys[0]),)
        vals = []
        if self._anchor_is_corner():
            vals.append(_frac(ys[0]))
        for y in ys[1:-1]:
            f = _frac(y)
            vals.append(f - 1 if f >= 1 else f)
        return tuple(vals)

    def segment_slopes(self) -> tuple:
        """Slopes of the grid segments (duplicates possible across x = 0)."""
        xs, ys = self._xs, self._ys
        out = []
        for j in range(len(xs) - 1):
            s = core.rdiv(core.rsub(ys[j + 1], ys[j]), core.rsub(xs[j + 1], xs[j]))
            out.append(_frac(s))
        return tuple(out)

    def num_breakpoints(self) -> int:
        return len(self.breakpoints)

    def is_identity(self) -> bool:
        return self._ys == self._xs

    def __call__(self, x: RationalLike) -> Fraction:
        return evaluate_circle(self, x)

    def __mul__(self, other):
        if isinstance(other, PLCircleMap):
            return compose(self, other)
        return NotImplemented

    def __pow__(self, n: int):
        return power(self, n)

    def __invert__(self):
        return invert(self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PLCircleMap):
            return NotImplemented
        return self._xs == other._xs and self._ys == other._ys

    def __hash__(self) -> int:
        return hash((self._xs, self._ys))

    def __repr__(self) -> str:
        b = ", ".join(str(x) for x in self.breakpoints)
        v = ", ".join(str(x) for x in self.images)
        return "PLCircleMap([%s] -> [%s])" % (b, v)


class PLLineMap:
    """Lift of a circle map: a PL homeomorphism of R commuting with x -> x + 1.

    Determined by the base circle map and an integer offset k, with
    fbar(0) = f(0) + k for the representative f(0) in [0, 1).
    """

    __slots__ = ("_base", "_offset")

    def __init__(self, base: PLCircleMap, offset: int):
        if not isinstance(base, PLCircleMap):
            raise TypeError("base must be a PLCircleMap")
        if isinstance(offset, bool) or not isinstance(offset, int):
            raise TypeError("offset must be an int")
        self._base = base
        self._offset = offset

    @property
    def base(self) -> PLCircleMap:
        return self._base

    @property
    def offset(self) -> int:
        return self._offset

    def is_identity(self) -> bool:
        return self._offset == 0 and self._base.is_identity()

    def graph_vertices(self) -> tuple:
        """Vertices (x, fbar(x)) of the graph over [0, 1], as Fractions.

        The map is affine between consecutive vertices and repeats with
        period 1 via fbar(x + 1) = fbar(x) + 1, so this determines it.
        """
        k = self._offset
        return tuple(
            (_frac(x), _frac(y) + k)
            for x, y in zip(self._base._xs, self._base._ys)
        )

    def __call__(self, x: RationalLike) -> Fraction:
        return evaluate_line(self, x)

    def __mul__(self, other):
        if isinstance(other, PLLineMap):
            return compose(self, other)
        return NotImplemented

    def __pow__(self, n: int):
        return power(self, n)

    def __invert__(self):
        return invert(self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PLLineMap):
            return NotImplemented
        return self._offset == other._offset and self._base == other._base

    def __hash__(self) -> int:
        return hash((self._base, self._offset))

    def __repr__(self) -> str:
        return "PLLineMap(base=%r, offset=%d)" % (self._base, self._offset)


@dataclass(frozen=True)
class DisplacementInterval:
    """Exact range [lo, hi] of fbar(x) - x; its width is always < 1."""

    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, value) -> bool:
        v = as_fraction(value)
        return self.lo <= v <= self.hi

    def contains_float(self, value: float) -> bool:
        """Containment for a float probe (comparisons stay exact)."""
        return self.lo <= value <= self.hi

    def integer_point(self) -> Optional[int]:
        """The unique integer in [lo, hi], if any (width < 1 ensures unicity)."""
        p = math.ceil(self.lo)
        return p if p <= self.hi else None


def evaluate_circle(f: PLCircleMap, x: RationalLike) -> Fraction:
    """f(x) for x in [0, 1); the result is again in [0, 1)."""
    xf = as_fraction(x)
    if not 0 <= xf < 1:
        raise ValueError("circle points live in [0, 1); got %s" % xf)
    y = _frac(core.eval_lift(f._xs, f._ys, _pair(xf)))
    return y - 1 if y >= 1 else y


def evaluate_line(fbar: PLLineMap, x: RationalLike) -> Fraction:
    """fbar(x) for any rational x."""
    xf = as_fraction(x)
    n = math.floor(xf)
    y = _frac(core.eval_lift(fbar.base._xs, fbar.base._ys, _pair(xf - n)))
    return y + n + fbar.offset


def compose(f, g):
    """Apply ``f`` first, then ``g`` (both circle maps or both line maps)."""
    if isinstance(f, PLCircleMap) and isinstance(g, PLCircleMap):
        xs, ys, _ = core.compose(f._xs, f._ys, g._xs, g._ys)
        return PLCircleMap._from_grid(xs, ys)
    if isinstance(f, PLLineMap) and isinstance(g, PLLineMap):
        xs, ys, carry = core.compose(
            f.base._xs, f.base._ys, g.base._xs, g.base._ys
        )
        return PLLineMap(PLCircleMap._from_grid(xs, ys), f.offset + g.offset + carry)
    raise TypeError("compose needs two circle maps or two line maps")


def invert(f):
    if isinstance(f, PLCircleMap):
        xs, ys, _ = core.invert(f._xs, f._ys)
        return PLCircleMap._from_grid(xs, ys)
    if isinstance(f, PLLineMap):
        xs, ys, carry = core.invert(f.base._xs, f.base._ys)
        return PLLineMap(PLCircleMap._from_grid(xs, ys), carry - f.offset)
    raise TypeError("invert needs a circle map or a line map")


def power(f, n: int):
    """f composed with itself n times (negative n inverts first).

    Repeated squaring; every intermediate product is canonicalized by the
    kernel, which keeps conjugate-shaped powers from blowing up.
    """
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError("exponent must be an int")
    if isinstance(f, PLCircleMap):
        acc = identity_map()
    elif isinstance(f, PLLineMap):
        acc = PLLineMap(identity_map(), 0)
    else:
        raise TypeError("power needs a circle map or a line map")
    if n < 0:
        f = invert(f)
        n = -n
    base = f
    while n:
        if n & 1:
            acc = compose(acc, base)
        n >>= 1
        if n:
            base = compose(base, base)
    return acc


def rotation_map(r: RationalLike) -> PLCircleMap:
    """Rigid rotation x -> x + r (mod 1); r is reduced mod 1."""
    rf = as_fraction(r) % 1
    xs = (core.ZERO, core.ONE)
    ys = (_pair(rf), _pair(rf + 1))
    return PLCircleMap._from_grid(xs, ys)


def identity_map() -> PLCircleMap:
    return rotation_map(0)


def lift(f: PLCircleMap, k: int) -> PLLineMap:
    """The unique lift of f with fbar(0) = f(0) + k (f(0) taken in [0, 1))."""
    return PLLineMap(f, k)


def project(fbar: PLLineMap) -> PLCircleMap:
    """The circle map induced by a lift; forgets the offset."""
    return fbar.base


def displacement_interval(fbar: PLLineMap) -> DisplacementInterval:
    """Exact [min, max] of fbar(x) - x, attained at breakpoints."""
    lo, hi = core.displacement(fbar.base._xs, fbar.base._ys)
    k = fbar.offset
    return DisplacementInterval(_frac(lo) + k, _frac(hi) + k)
