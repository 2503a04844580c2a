"""Pure-Python kernel for exact piecewise linear circle map grids.

A map is stored as the graph of its anchored lift over [0, 1]: parallel
tuples ``xs``, ``ys`` of rationals encoded as ``(numerator, denominator)``
pairs of Python ints.  Grid invariants:

    xs[0] == (0, 1),  xs[-1] == (1, 1),  xs strictly increasing,
    ys strictly increasing,  ys[-1] == ys[0] + 1,  0 <= ys[0] < 1.

Every pair is kept in lowest terms with a positive denominator, so equal
rationals are identical tuples and grid equality is plain tuple equality.
The circle map is x -> y(x) mod 1; the lift with integer offset k is
x -> y(x) + k.  Grids returned by this module are canonical: no interior
point sits on the segment spanned by its neighbours.

`plmonster/_core/_speed.pyx` is a compiled twin of this file with the same
contract; `plmonster/_core/__init__.py` picks one at import time.
"""

from math import gcd

BACKEND_NAME = "pure"

ZERO = (0, 1)
ONE = (1, 1)


def rat(n, d):
    """Lowest-terms pair with a positive denominator."""
    if d == 0:
        raise ZeroDivisionError("rational with zero denominator")
    if d < 0:
        n, d = -n, -d
    g = gcd(n, d)
    if g > 1:
        return (n // g, d // g)
    return (n, d)


def radd(a, b):
    return rat(a[0] * b[1] + b[0] * a[1], a[1] * b[1])


def rsub(a, b):
    return rat(a[0] * b[1] - b[0] * a[1], a[1] * b[1])


def rmul(a, b):
    return rat(a[0] * b[0], a[1] * b[1])


def rdiv(a, b):
    return rat(a[0] * b[1], a[1] * b[0])


def rcmp(a, b):
    t = a[0] * b[1] - b[0] * a[1]
    if t > 0:
        return 1
    if t < 0:
        return -1
    return 0


def rfloor(a):
    return a[0] // a[1]


def canon_grid(xs, ys):
    """Drop interior grid points whose neighbours are collinear with them.

    Endpoints are always kept; the anchor at x = 0 stays even when the two
    segments around it (cyclically) share a slope.
    """
    kept_x = [xs[0]]
    kept_y = [ys[0]]
    for j in range(1, len(xs)):
        xj = xs[j]
        yj = ys[j]
        while len(kept_x) >= 2:
            x1 = kept_x[-1]
            y1 = kept_y[-1]
            lhs = rmul(rsub(y1, kept_y[-2]), rsub(xj, x1))
            rhs = rmul(rsub(yj, y1), rsub(x1, kept_x[-2]))
            if lhs == rhs:
                kept_x.pop()
                kept_y.pop()
            else:
                break
        kept_x.append(xj)
        kept_y.append(yj)
    return tuple(kept_x), tuple(kept_y)


def _segment(xs, x):
    # rightmost j < len(xs) - 1 with xs[j] <= x
    lo = 0
    hi = len(xs) - 1
    while hi - lo > 1:
        mid = (lo + hi) >> 1
        if rcmp(xs[mid], x) <= 0:
            lo = mid
        else:
            hi = mid
    return lo


def eval_lift(xs, ys, x):
    """Value of the anchored lift at x in [0, 1]."""
    j = _segment(xs, x)
    if xs[j] == x:
        return ys[j]
    num = rmul(rsub(x, xs[j]), rsub(ys[j + 1], ys[j]))
    return radd(ys[j], rdiv(num, rsub(xs[j + 1], xs[j])))


def _ext(gxs, gys, t):
    # anchored lift extended to [0, 2) by the unit-translation rule
    if rcmp(t, ONE) <= 0:
        return eval_lift(gxs, gys, t)
    return radd(eval_lift(gxs, gys, rsub(t, ONE)), ONE)


def compose(fxs, fys, gxs, gys):
    """Grid and integer carry of "apply f, then g".

    Returns (xs, ys, carry) where (xs, ys) is the anchored canonical grid
    of the composite circle map and carry = floor(g~(f~(0))) records how the
    anchored lifts stack (0 or 1); lift offsets add it on top of their own.
    """
    t0 = fys[0]
    sg = len(gxs) - 1
    t0_zero = t0 == ZERO

    # breakpoints of g pulled into the open window (t0, t0 + 1)
    stream_t = []
    stream_v = []
    for i in range(1, sg + 1):
        if rcmp(gxs[i], t0) > 0 and not (i == sg and t0_zero):
            stream_t.append(gxs[i])
            stream_v.append(gys[i])
    for i in range(1, sg):
        if rcmp(gxs[i], t0) < 0:
            stream_t.append(radd(gxs[i], ONE))
            stream_v.append(radd(gys[i], ONE))

    out_x = [fxs[0]]
    out_y = [_ext(gxs, gys, t0)]
    ns = len(stream_t)
    k = 0
    sf = len(fxs) - 1
    for j in range(sf):
        tj = fys[j]
        tj1 = fys[j + 1]
        while k < ns and rcmp(stream_t[k], tj) <= 0:
            k += 1  # lands exactly on the vertex emitted already
        if k < ns and rcmp(stream_t[k], tj1) < 0:
            xj = fxs[j]
            dx = rsub(fxs[j + 1], xj)
            dt = rsub(tj1, tj)
            while k < ns and rcmp(stream_t[k], tj1) < 0:
                step = rdiv(rmul(rsub(stream_t[k], tj), dx), dt)
                out_x.append(radd(xj, step))
                out_y.append(stream_v[k])
                k += 1
        if j + 1 < sf:
            out_x.append(fxs[j + 1])
            out_y.append(_ext(gxs, gys, tj1))
        else:
            out_x.append(fxs[sf])
            out_y.append(radd(out_y[0], ONE))

    carry = rfloor(out_y[0])
    if carry:
        c = (carry, 1)
        out_y = [rsub(y, c) for y in out_y]
    xs, ys = canon_grid(out_x, out_y)
    return xs, ys, carry


def invert(xs, ys):
    """Grid and carry of the inverse circle map.

    The anchored lift L of the inverse satisfies L = (anchored inverse
    grid) + carry, with carry = 0 when y(0) = 0 and -1 otherwise; a lift
    with offset j inverts to offset carry - j.
    """
    s = len(xs) - 1
    if ys[0] == ZERO:
        ixs, iys = canon_grid(ys, xs)
        return ixs, iys, 0

    # rightmost a with ys[a] < 1
    lo = 0
    hi = s
    while hi - lo > 1:
        mid = (lo + hi) >> 1
        if rcmp(ys[mid], ONE) < 0:
            lo = mid
        else:
            hi = mid
    a = lo
    if ys[hi] == ONE:
        xc = xs[hi]
        start = hi + 1
    else:
        num = rmul(rsub(ONE, ys[a]), rsub(xs[hi], xs[a]))
        xc = radd(xs[a], rdiv(num, rsub(ys[hi], ys[a])))
        start = hi

    out_x = [ZERO]
    out_y = [xc]
    for j in range(start, s + 1):
        out_x.append(rsub(ys[j], ONE))
        out_y.append(xs[j])
    for j in range(1, a + 1):
        out_x.append(ys[j])
        out_y.append(radd(xs[j], ONE))
    out_x.append(ONE)
    out_y.append(radd(xc, ONE))
    ixs, iys = canon_grid(out_x, out_y)
    return ixs, iys, -1


def displacement(xs, ys):
    """Exact min and max of y(x) - x over [0, 1] (attained at grid points)."""
    lo = rsub(ys[0], xs[0])
    hi = lo
    for j in range(1, len(xs) - 1):
        d = rsub(ys[j], xs[j])
        c = rcmp(d, lo)
        if c < 0:
            lo = d
        elif c > 0 and rcmp(d, hi) > 0:
            hi = d
    return lo, hi
