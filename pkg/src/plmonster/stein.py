"""Stein-Thompson circle groups: descriptors, exact membership, transitivity.

A descriptor lists integers n1, ..., nk (each >= 2).  It determines
lam = n1 * ... * nk, the coordinate ring Y = Z[1/lam] / Z on the circle,
and the multiplicative slope group P generated by the ni inside the
positive rationals.  A PL circle map belongs to the group when all of its
breakpoints and their images lie in Y and every slope lies in P.

`tuple_map` realizes transitivity on cyclically ordered tuples of Y-points:
both tuples are embedded in the grid of multiples of lam**-q, arcs between
consecutive marked points are equalized by inserting midpoints (halving
the leftmost largest gap of the arc with fewer points), and the result
interpolates linearly.  Midpoints stay inside Y and keep gap ratios in P
exactly when 2 lies in P, which holds for the shipped descriptors.
"""

from __future__ import annotations

import heapq

from dataclasses import dataclass
from fractions import Fraction

from .maps import (
    PLCircleMap,
    PLLineMap,
    RationalLike,
    as_fraction,
    compose,
    identity_map,
    invert,
    lift,
    rotation_map,
)


def _prime_factors(n: int) -> dict:
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _solve_exponents(columns, target):
    """Integer solution e with sum_j e[j] * columns[j] == target, or None.

    Column-style Hermite reduction with a tracked transform; dimensions are
    tiny (primes of lam by generator count).
    """
    m = len(target)
    k = len(columns)
    work = [list(c) for c in columns]
    u = [[1 if i == j else 0 for i in range(k)] for j in range(k)]
    col = 0
    pivot = {}
    for row in range(m):
        if col >= k:
            continue
        while True:
            best = -1
            for j in range(col, k):
                v = work[j][row]
                if v != 0 and (best < 0 or abs(v) < abs(work[best][row])):
                    best = j
            if best < 0:
                break
            work[col], work[best] = work[best], work[col]
            u[col], u[best] = u[best], u[col]
            p = work[col][row]
            cleared = True
            for j in range(col + 1, k):
                v = work[j][row]
                if v:
                    q = v // p
                    work[j] = [a - q * b for a, b in zip(work[j], work[col])]
                    u[j] = [a - q * b for a, b in zip(u[j], u[col])]
                    if work[j][row] != 0:
                        cleared = False
            if cleared:
                pivot[row] = col
                col += 1
                break
    y = [0] * k
    residual = list(target)
    for row in range(m):
        j = pivot.get(row)
        if j is None:
            if residual[row] != 0:
                return None
            continue
        p = work[j][row]
        if residual[row] % p:
            return None
        c = residual[row] // p
        y[j] = c
        residual = [residual[i] - c * work[j][i] for i in range(m)]
    return [sum(y[j] * u[j][i] for j in range(k)) for i in range(k)]


class GroupDescriptor:
    """Generators n1, ..., nk of a Stein-Thompson circle group."""

    __slots__ = ("_generators", "_lam", "_primes", "_columns")

    def __init__(self, *generators: int):
        if not generators:
            raise ValueError("a descriptor needs at least one generator")
        for n in generators:
            if isinstance(n, bool) or not isinstance(n, int) or n < 2:
                raise ValueError("generators must be integers >= 2")
        self._generators = tuple(generators)
        lam = 1
        for n in generators:
            lam *= n
        self._lam = lam
        self._primes = tuple(sorted(_prime_factors(lam)))
        self._columns = tuple(
            tuple(_prime_factors(n).get(p, 0) for p in self._primes)
            for n in generators
        )

    @property
    def generators(self) -> tuple:
        return self._generators

    @property
    def lam(self) -> int:
        """Product of the generators; Y = Z[1/lam] mod 1."""
        return self._lam

    @property
    def prime_support(self) -> tuple:
        return self._primes

    def _strip(self, n: int) -> int:
        for p in self._primes:
            while n % p == 0:
                n //= p
        return n

    def contains_coordinate(self, x: RationalLike) -> bool:
        """x in Z[1/lam] (as a circle coordinate, any representative)."""
        return self._strip(as_fraction(x).denominator) == 1

    def coordinate_depth(self, x: RationalLike) -> int:
        """Least q with x a multiple of lam**-q (x must lie in Y)."""
        den = as_fraction(x).denominator
        if self._strip(den) != 1:
            raise ValueError("%s is not a Z[1/%d] point" % (x, self._lam))
        q = 0
        power = 1
        while power % den:
            power *= self._lam
            q += 1
        return q

    def slope_in_group(self, s: RationalLike) -> bool:
        """s in the multiplicative group generated by n1, ..., nk."""
        sf = as_fraction(s)
        if sf <= 0:
            return False
        num, den = sf.numerator, sf.denominator
        if self._strip(num) != 1 or self._strip(den) != 1:
            return False
        target = []
        for p in self._primes:
            e = 0
            n = num
            while n % p == 0:
                e += 1
                n //= p
            n = den
            while n % p == 0:
                e -= 1
                n //= p
            target.append(e)
        return _solve_exponents(self._columns, target) is not None

    def __eq__(self, other):
        if not isinstance(other, GroupDescriptor):
            return NotImplemented
        return self._generators == other._generators

    def __hash__(self):
        return hash(self._generators)

    def __repr__(self):
        return "GroupDescriptor(%s)" % ", ".join(str(n) for n in self._generators)

    def __str__(self):
        return "T_{%s}" % ",".join(str(n) for n in self._generators)


THOMPSON = GroupDescriptor(2)
STEIN_2_3 = GroupDescriptor(2, 3)


@dataclass(frozen=True)
class Violation:
    kind: str  # breakpoint-not-in-Y | image-not-in-Y | slope-not-in-P
    where: Fraction


@dataclass(frozen=True)
class MembershipReport:
    member: bool
    violations: tuple

    def __bool__(self) -> bool:
        return self.member


def is_member(f: PLCircleMap, descriptor: GroupDescriptor) -> MembershipReport:
    """Exact membership of a circle map, with per-item violations."""
    violations = []
    for b, v in zip(f.breakpoints, f.images):
        if not descriptor.contains_coordinate(b):
            violations.append(Violation("breakpoint-not-in-Y", b))
        if not descriptor.contains_coordinate(v):
            violations.append(Violation("image-not-in-Y", v))
    seen = set()
    for s in f.segment_slopes():
        if s in seen:
            continue
        seen.add(s)
        if not descriptor.slope_in_group(s):
            violations.append(Violation("slope-not-in-P", s))
    return MembershipReport(not violations, tuple(violations))


def _cyclic_rotation_to_increasing(values) -> int:
    """Index r so that values[r:] + values[:r] is strictly increasing, else -1."""
    m = len(values)
    if m == 1:
        return 0
    descents = [i for i in range(m - 1) if values[i + 1] <= values[i]]
    for i in descents:
        if values[i + 1] == values[i]:
            return -1
    if not descents:
        return 0
    if len(descents) > 1 or values[0] <= values[-1]:
        return -1
    return descents[0] + 1


@dataclass(frozen=True)
class TupleMapReport:
    map: PLCircleMap
    refinement_depth: int


def tuple_map_report(xtuple, ytuple, descriptor: GroupDescriptor) -> TupleMapReport:
    """tuple_map plus the refinement depth its bookkeeping guarantees.

    Every breakpoint of the result is a multiple of lam**-depth, where the
    depth starts at the embedding depth q and each midpoint insertion into
    a gap of depth t contributes at most t + 1.
    """
    xs = [as_fraction(x) for x in xtuple]
    ys = [as_fraction(y) for y in ytuple]
    if len(xs) != len(ys):
        raise ValueError("tuples must have equal length")
    p = len(xs)
    if p == 0:
        raise ValueError("tuples must be nonempty")
    for e in xs + ys:
        if not 0 <= e < 1:
            raise ValueError("tuple entries live in [0, 1); got %s" % e)
        if not descriptor.contains_coordinate(e):
            raise ValueError("%s is not a Z[1/%d] point" % (e, descriptor.lam))
    if not descriptor.slope_in_group(2):
        raise ValueError(
            "descriptor %s cannot halve grid gaps (2 is not a product of the "
            "generators), so the tuple construction is unavailable" % descriptor
        )
    rx = _cyclic_rotation_to_increasing(xs)
    if rx < 0:
        raise ValueError("source tuple is not positively cyclically ordered")
    if _cyclic_rotation_to_increasing(ys) < 0:
        raise ValueError("target tuple is not positively cyclically ordered")
    # rotate both by the same index shift: pairing x_i -> y_i is preserved,
    # and the source becomes strictly increasing
    xs = xs[rx:] + xs[:rx]
    ys = ys[rx:] + ys[:rx]
    # the target is then a rotation of an increasing sequence; unwrap it to
    # linear coordinates on [ys[0], ys[0] + 1) so arcs are plain intervals
    ys_lin = [ys[0]] + [v if v > ys[0] else v + 1 for v in ys[1:]]

    q = max(1, max(descriptor.coordinate_depth(e) for e in xs + ys))
    lam_q = descriptor.lam**q

    def grid_arcs(points):
        # per arc, the interior lam**-q grid points in linear coordinates,
        # as mutable [value, depth] records; the final arc wraps past the
        # first point plus 1
        out = []
        for i in range(p):
            a = points[i]
            b = points[i + 1] if i + 1 < p else points[0] + 1
            ka = int(a * lam_q)  # entries are exact grid multiples
            kb = int(b * lam_q)
            out.append([[Fraction(k, lam_q), q] for k in range(ka + 1, kb)])
        return out

    xarcs = grid_arcs(xs)
    yarcs = grid_arcs(ys_lin)

    depth_used = q

    def equalize(short, short_lo, short_hi, want):
        # halve the leftmost largest gap until the arc has `want` interior
        # points; a heap keyed by (-gap, left endpoint) realizes exactly
        # that order, since gaps are disjoint and only ever split
        nonlocal depth_used
        need = want - len(short)
        if need <= 0:
            return
        pts = [(short_lo, q)] + [tuple(e) for e in short] + [(short_hi, q)]
        heap = [
            (a - b, a, b, da, db) for (a, da), (b, db) in zip(pts, pts[1:])
        ]
        heapq.heapify(heap)
        added = []
        for _ in range(need):
            _, a, b, da, db = heapq.heappop(heap)
            mid = (a + b) / 2
            d = max(da, db) + 1
            if d > depth_used:
                depth_used = d
            added.append([mid, d])
            heapq.heappush(heap, (a - mid, a, mid, da, d))
            heapq.heappush(heap, (mid - b, mid, b, d, db))
        short[:] = sorted(short + added)

    for i in range(p):
        cx = len(xarcs[i])
        cy = len(yarcs[i])
        if cx < cy:
            lo = xs[i]
            hi = xs[i + 1] if i + 1 < p else xs[0] + 1
            equalize(xarcs[i], lo, hi, cy)
        elif cy < cx:
            lo = ys_lin[i]
            hi = ys_lin[i + 1] if i + 1 < p else ys_lin[0] + 1
            equalize(yarcs[i], lo, hi, cx)

    pairs = []
    for i in range(p):
        pairs.append((xs[i], ys_lin[i]))
        for (xv, _), (yv, _) in zip(xarcs[i], yarcs[i]):
            pairs.append((xv, yv))
    pairs = [(x % 1, y % 1) for x, y in pairs]
    pairs.sort()
    result = PLCircleMap([x for x, _ in pairs], [y for _, y in pairs])
    return TupleMapReport(result, depth_used)


def tuple_map(xtuple, ytuple, descriptor: GroupDescriptor) -> PLCircleMap:
    """A member map sending x_i to y_i for cyclically ordered Y-tuples."""
    return tuple_map_report(xtuple, ytuple, descriptor).map


def irrational_candidate_g0() -> PLCircleMap:
    """The two-piece member of T_{2,3} with slopes 2 and 2/3.

    It doubles [0, 1/4) onto [1/2, 1) and maps [1/4, 1) affinely onto
    [0, 1/2).  In the multiplicative model of the circle (positive reals
    modulo tripling, with the logarithmic chart) this map is doubling, so
    its rotation number is log 2 / log 3.  The library only certifies
    exact finite facts about it: translation brackets and the absence of
    small rational rotation numbers.
    """
    return PLCircleMap(
        (Fraction(0), Fraction(1, 4)), (Fraction(1, 2), Fraction(0))
    )


def center_generator_z() -> PLLineMap:
    """Unit translation x -> x + 1, the center of the lifted groups."""
    return lift(identity_map(), 1)


def torsion_rotation(descriptor: GroupDescriptor, p: int, q: int) -> PLCircleMap:
    """Rotation by p/q as a group member; p/q must lie in Z[1/lam] mod 1."""
    if isinstance(p, bool) or isinstance(q, bool):
        raise TypeError("p and q must be ints")
    if not isinstance(p, int) or not isinstance(q, int) or q <= 0:
        raise ValueError("need integers p and q with q > 0")
    r = Fraction(p, q) % 1
    if not descriptor.contains_coordinate(r):
        raise ValueError(
            "%s is not a Z[1/%d] point, so this rotation is not a member"
            % (r, descriptor.lam)
        )
    return rotation_map(r)


def random_tuple_pair(descriptor, rng, max_len=6, max_depth=4):
    """Aligned random (source, target) tuples on the lam**-q grid.

    Both tuples are sampled strictly increasing and then rotated by a
    common random shift, which preserves the pairing and exercises the
    cyclic normalization.  Returns (source, target, q).
    """
    q = rng.randint(1, max_depth)
    n = descriptor.lam**q
    p = rng.randint(1, min(max_len, n))
    xs = sorted(rng.sample(range(n), p))
    ys = sorted(rng.sample(range(n), p))
    shift = rng.randrange(p)
    xs = xs[shift:] + xs[:shift]
    ys = ys[shift:] + ys[:shift]
    return (
        tuple(Fraction(k, n) for k in xs),
        tuple(Fraction(k, n) for k in ys),
        q,
    )


def random_member(descriptor, rng, max_len=4, max_depth=3) -> PLCircleMap:
    """Random group member: a tuple_map image, sometimes twisted.

    Mixes in a grid rotation or an inverse so samples are not all of the
    same squint; the result is always an exact member.
    """
    xs, ys, q = random_tuple_pair(descriptor, rng, max_len, max_depth)
    f = tuple_map(xs, ys, descriptor)
    style = rng.randrange(4)
    if style == 0:
        n = descriptor.lam**q
        f = compose(f, rotation_map(Fraction(rng.randrange(n), n)))
    elif style == 1:
        f = invert(f)
    return f
