"""Certified rotation and translation numbers for exact PL maps.

Everything here reduces to one exact primitive: for a lift fbar, the
displacement interval of fbar**n brackets n times the translation number,
and the bracket width stays below 1/n after dividing by n.  An integer in
the n-th displacement interval is equivalent to the translation number
being rational with denominator dividing n, and the witness equation
fbar**n (x) == x + p can be solved exactly on the grid.  Iterating the
test gives either an exact rational value with a periodic witness or a
certificate that no small-denominator rational is the value, together
with a shrinking bracket around it.

The same brackets drive `PowerDetector`, which decides whether a map is
an integer power of a fixed base map: brackets isolate finitely many
plausible exponents and exact structural equality confirms or rejects
each, so the answer has no numerical error in either direction.

`log_ratio_bounds` pins down ratios log(a)/log(b) between rationals using
only integer power comparisons, which is how irrational rotation numbers
of multiplicatively defined maps are matched against their brackets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .maps import (
    DisplacementInterval,
    PLCircleMap,
    PLLineMap,
    compose,
    displacement_interval,
    invert,
    lift,
    power,
)


class ZeroBracketError(ValueError):
    """Raised when iteration cannot separate a translation number from zero."""


@dataclass(frozen=True)
class RationalRotation:
    """Exact rational translation number with a periodic witness.

    ``value`` is in lowest terms, and ``witness`` is a point in [0, 1)
    with fbar**q (witness) == witness + p for p/q = value, which forces
    the translation number to equal p/q.
    """

    value: Fraction
    witness: Fraction

    @property
    def circle_value(self) -> Fraction:
        """Rotation number of the underlying circle map, in [0, 1)."""
        return self.value % 1


@dataclass(frozen=True)
class NonRationalCertificate:
    """Certificate that no rational with small denominator is the value.

    For every q up to ``max_denominator`` the q-th iterate's displacement
    interval contained no integer, which rules out every rational value
    with denominator at most ``max_denominator``.  ``bracket`` is the
    intersection of the per-iterate brackets and contains the true value.
    """

    max_denominator: int
    bracket: DisplacementInterval


def _as_lift(f) -> PLLineMap:
    if isinstance(f, PLLineMap):
        return f
    if isinstance(f, PLCircleMap):
        return lift(f, 0)
    raise TypeError("expected a circle map or a line map")


def _check_positive_int(value, name: str) -> None:
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise ValueError("%s must be a positive integer" % name)


def translation_bracket(f, n: int = 1) -> DisplacementInterval:
    """Exact bracket around the translation number from the n-th iterate.

    The displacement interval of fbar**n divided by n; its width is below
    1/n and it always contains the translation number.  Circle maps are
    lifted with offset 0.
    """
    _check_positive_int(n, "n")
    d = displacement_interval(power(_as_lift(f), n))
    return DisplacementInterval(d.lo / n, d.hi / n)


def _crossing_point(gbar: PLLineMap, p: int) -> Fraction:
    """Exact x in [0, 1) with gbar(x) == x + p.

    Requires p to lie in the displacement interval of gbar; the
    displacement is affine between graph vertices, so a sign change pins
    the crossing down by linear interpolation.
    """
    verts = gbar.graph_vertices()
    for i in range(len(verts) - 1):
        x0, y0 = verts[i]
        x1, y1 = verts[i + 1]
        d0 = y0 - x0
        d1 = y1 - x1
        if d0 == p:
            return x0
        if (d0 - p) * (d1 - p) < 0:
            t = (p - d0) / (d1 - d0)
            return x0 + t * (x1 - x0)
    raise ValueError("%d is outside the displacement interval" % p)


def rational_rotation_test(f, q: int) -> Optional[RationalRotation]:
    """Decide whether the translation number is p/q for some integer p.

    The q-th iterate translates by q times the value, which lies in its
    displacement interval; the interval has width below 1, so it contains
    an integer exactly when the value is a fraction over q, and the
    crossing witness makes that exact.  Returns None when no integer is
    in the interval.
    """
    _check_positive_int(q, "q")
    fbar = _as_lift(f)
    g = power(fbar, q)
    p = displacement_interval(g).integer_point()
    if p is None:
        return None
    value = Fraction(p, q)
    if value.denominator != q:
        # reduce to lowest terms and recompute the witness at the reduced
        # power, so the witness equation matches value.denominator
        g = power(fbar, value.denominator)
        p = value.numerator
    return RationalRotation(value, _crossing_point(g, p))


def rotation_number(
    f, max_denominator: int = 50, depth: int = 200
) -> Union[RationalRotation, NonRationalCertificate]:
    """Certified translation number (rotation number for circle maps).

    Runs the denominator-q test for q = 1, 2, ..., depth on the lift
    (offset 0 for a circle map).  The first hit returns an exact
    RationalRotation; a pinched (width zero) bracket also resolves the
    value exactly.  Otherwise the result is a NonRationalCertificate for
    ``max_denominator`` whose bracket intersects all depth iterate
    brackets.  Requires depth >= max_denominator so the certificate's
    claim is actually checked.
    """
    _check_positive_int(max_denominator, "max_denominator")
    _check_positive_int(depth, "depth")
    if depth < max_denominator:
        raise ValueError("depth must be at least max_denominator")
    fbar = _as_lift(f)
    g = fbar
    lo = None
    hi = None
    for n in range(1, depth + 1):
        d = displacement_interval(g)
        p = d.integer_point()
        if p is not None:
            # first hit: no integer appeared at any q < n, so p/n cannot
            # reduce (a reduced denominator would have fired earlier)
            return RationalRotation(Fraction(p, n), _crossing_point(g, p))
        if d.width == 0:
            # the n-th iterate is a rigid translation by a non-integer,
            # so the value is exactly d.lo / n; a witness exists at the
            # reduced denominator
            value = d.lo / n
            g = power(fbar, value.denominator)
            return RationalRotation(value, _crossing_point(g, value.numerator))
        nlo = d.lo / n
        nhi = d.hi / n
        lo = nlo if lo is None or nlo > lo else lo
        hi = nhi if hi is None or nhi < hi else hi
        if n < depth:
            g = compose(g, fbar)
    return NonRationalCertificate(max_denominator, DisplacementInterval(lo, hi))


def is_translation(f) -> bool:
    """True when the map is rigid: x -> x + c for a constant c."""
    if isinstance(f, PLLineMap):
        f = f.base
    if not isinstance(f, PLCircleMap):
        raise TypeError("expected a circle map or a line map")
    return f.breakpoints == (Fraction(0),)


def log_ratio_bounds(a: int, b: int, denominator: int) -> tuple:
    """Exact bounds p/q <= log(a)/log(b) < (p+1)/q with q = denominator.

    Built from integer power comparisons only: p/q <= log(a)/log(b) is
    equivalent to b**p <= a**q, so the returned pair is a certificate and
    not a floating point estimate.  A float seed speeds up the search but
    never decides the answer.  The left bound is attained only when the
    ratio is exactly p/q; for multiplicatively independent a and b both
    inequalities are strict.
    """
    for name, v in (("a", a), ("b", b)):
        if isinstance(v, bool) or not isinstance(v, int) or v < 2:
            raise ValueError("%s must be an integer >= 2" % name)
    _check_positive_int(denominator, "denominator")
    q = denominator
    target = a**q
    p = int(q * math.log(a) / math.log(b))
    while p > 0 and b**p > target:
        p -= 1
    while b ** (p + 1) <= target:
        p += 1
    return (Fraction(p, q), Fraction(p + 1, q))


class _BracketRefiner:
    """Doubling bracket for the translation number of one map.

    Tracks fbar**n for n = 1, 2, 4, ... and intersects the per-n brackets;
    the current bracket always contains the translation number and its
    width is below 1/n.
    """

    __slots__ = ("power_map", "n", "lo", "hi")

    def __init__(self, fbar: PLLineMap):
        self.power_map = fbar
        self.n = 1
        d = displacement_interval(fbar)
        self.lo = d.lo
        self.hi = d.hi

    def refine(self) -> None:
        self.power_map = compose(self.power_map, self.power_map)
        self.n *= 2
        d = displacement_interval(self.power_map)
        nlo = d.lo / self.n
        nhi = d.hi / self.n
        if nlo > self.lo:
            self.lo = nlo
        if nhi < self.hi:
            self.hi = nhi


class PowerDetector:
    """Decides whether maps are integer powers of a fixed line map.

    The base map must have translation number separated from zero;
    construction refines its bracket by repeated squaring and raises
    ZeroBracketError if zero survives ``zero_exclusion_depth`` iterates.
    ``detect`` brackets the candidate's translation number, keeps the
    finitely many exponents k for which k times the base bracket meets
    it, and confirms each survivor by exact structural equality, so both
    positive and negative answers are exact.
    """

    def __init__(
        self,
        base: PLLineMap,
        zero_exclusion_depth: int = 64,
        candidate_limit: int = 32,
        refine_limit: int = 4096,
    ):
        if not isinstance(base, PLLineMap):
            raise TypeError("base must be a line map")
        _check_positive_int(zero_exclusion_depth, "zero_exclusion_depth")
        _check_positive_int(candidate_limit, "candidate_limit")
        _check_positive_int(refine_limit, "refine_limit")
        self._base = base
        self._candidate_limit = candidate_limit
        self._refine_limit = refine_limit
        probe = _BracketRefiner(base)
        while probe.lo <= 0 <= probe.hi:
            if probe.n >= zero_exclusion_depth:
                raise ZeroBracketError(
                    "translation number bracket still contains 0 after "
                    "%d iterates" % probe.n
                )
            probe.refine()
        if probe.hi < 0:
            self._sign = -1
            self._norm_base = invert(base)
            self._ref = _BracketRefiner(self._norm_base)
            while self._ref.lo <= 0:
                self._ref.refine()
        else:
            self._sign = 1
            self._norm_base = base
            self._ref = probe
        self._powers = {}

    @property
    def base(self) -> PLLineMap:
        return self._base

    def _power(self, k: int) -> PLLineMap:
        cached = self._powers.get(k)
        if cached is None:
            cached = power(self._norm_base, k)
            self._powers[k] = cached
        return cached

    def _candidates(self, lo_w: Fraction, hi_w: Fraction):
        a, b = self._ref.lo, self._ref.hi  # 0 < a <= b
        out = []
        # positive k: k*[a, b] meets [lo_w, hi_w]
        k_lo = max(1, math.ceil(lo_w / b))
        k_hi = math.floor(hi_w / a) if hi_w > 0 else 0
        out.extend(range(k_lo, k_hi + 1))
        # negative k: [k*b, k*a] meets [lo_w, hi_w]
        k_lo = math.ceil(lo_w / a) if lo_w < 0 else 0
        k_hi = min(-1, math.floor(hi_w / b))
        out.extend(range(k_lo, k_hi + 1))
        return out

    def detect(self, candidate: PLLineMap) -> Optional[int]:
        """k with candidate == base**k, or None when no power matches."""
        if not isinstance(candidate, PLLineMap):
            raise TypeError("candidate must be a line map")
        if candidate.is_identity():
            return 0
        wref = _BracketRefiner(candidate)
        while True:
            ks = self._candidates(wref.lo, wref.hi)
            if len(ks) <= self._candidate_limit:
                break
            if wref.n >= self._refine_limit:
                raise ValueError(
                    "cannot isolate candidate exponents within the "
                    "refinement limit"
                )
            wref.refine()
            self._ref.refine()
        for k in sorted(ks, key=abs):
            if self._power(k) == candidate:
                return self._sign * k
        return None


def is_power_of(candidate: PLLineMap, base: PLLineMap, **limits) -> Optional[int]:
    """Exponent k with candidate == base**k, or None; see PowerDetector."""
    return PowerDetector(base, **limits).detect(candidate)
