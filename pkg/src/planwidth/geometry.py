"""Exact rational plane geometry for straight-line segments.

Every predicate works over Fractions; nothing here ever touches a
float, so degeneracies are detected rather than blurred away.
"""

from __future__ import annotations

from fractions import Fraction


def P(x, y):
    """Exact point constructor; accepts ints, Fractions or 'p/q' strings."""
    return (Fraction(x), Fraction(y))


def orientation(a, b, c):
    """Sign of the cross product (b-a) x (c-a): 1 ccw, -1 cw, 0 collinear."""
    d = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (d > 0) - (d < 0)


def point_on_segment(p, a, b):
    """True iff p lies on the closed segment ab (collinearity included)."""
    if orientation(a, b, p) != 0:
        return False
    return (
        min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def point_in_segment_interior(p, a, b):
    if orientation(a, b, p) != 0 or p == a or p == b:
        return False
    return point_on_segment(p, a, b)


def segments_properly_cross(a, b, c, d):
    """True iff open segments ab and cd share exactly one interior point."""
    o1 = orientation(a, b, c)
    o2 = orientation(a, b, d)
    o3 = orientation(c, d, a)
    o4 = orientation(c, d, b)
    return o1 * o2 < 0 and o3 * o4 < 0


def segments_overlap_collinearly(a, b, c, d):
    """True iff ab and cd are collinear and share more than one point."""
    if orientation(a, b, c) != 0 or orientation(a, b, d) != 0:
        return False
    # project on the dominant axis of ab
    axis = 0 if a[0] != b[0] else 1
    lo1, hi1 = sorted((a[axis], b[axis]))
    lo2, hi2 = sorted((c[axis], d[axis]))
    return max(lo1, lo2) < min(hi1, hi2)


def line_intersection(a, b, c, d):
    """Intersection point of lines ab and cd; raises if parallel."""
    r = (b[0] - a[0], b[1] - a[1])
    s = (d[0] - c[0], d[1] - c[1])
    denom = r[0] * s[1] - r[1] * s[0]
    if denom == 0:
        raise ZeroDivisionError("parallel lines")
    t = ((c[0] - a[0]) * s[1] - (c[1] - a[1]) * s[0]) / denom
    return (a[0] + t * r[0], a[1] + t * r[1])


def segment_crossing_point(a, b, c, d):
    """Crossing point of properly crossing segments ab, cd."""
    return line_intersection(a, b, c, d)


def segment_param(p, a, b):
    """Parameter t in [0,1] of point p on segment ab (p assumed on the line)."""
    dx, dy = b[0] - a[0], b[1] - a[1]
    if dx != 0:
        return (p[0] - a[0]) / dx
    return (p[1] - a[1]) / dy


def circle_pair_crossing_x(c1, r1, c2, r2):
    """x-coordinate of the intersections of two circles centered on the x-axis.

    The two intersection points (if any) share this x.  Exact; raises on
    concentric input.
    """
    if c1 == c2:
        raise ZeroDivisionError("concentric circles")
    return (r1 * r1 - r2 * r2 - c1 * c1 + c2 * c2) / (2 * (c2 - c1))
