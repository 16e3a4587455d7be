"""Straight-line drawings with exact coordinates.

Crossing detection, general-position checking and planarization all run
on exact rationals.  Degenerate inputs (overlapping segments, a segment
through a vertex, three segments concurrent at a point, coincident
x-coordinates) are reported, never silently perturbed; perturbation is
the job of the construction that produced the drawing.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .graphs import Graph

try:
    import networkx as nx
except ImportError:  # pragma: no cover
    nx = None

from . import geometry as geo


class DegeneracyError(ValueError):
    """A drawing violates general position; carries the violation report."""

    def __init__(self, violation):
        super().__init__(str(violation))
        self.violation = violation


@dataclass(frozen=True)
class Violation:
    kind: str  # 'overlap' | 'vertex_on_segment' | 'concurrent' | 'coincident_x'
    detail: str
    objects: tuple = ()

    def __str__(self):
        return f"{self.kind}: {self.detail}"


@dataclass(frozen=True)
class CrossingEvent:
    edge_a: int
    edge_b: int
    point: tuple  # exact (Fraction, Fraction)


class Drawing:
    """A graph plus an exact point placement; edges are straight segments."""

    def __init__(self, graph, pos):
        if set(pos) != set(range(graph.n)):
            raise ValueError("positions must cover exactly the vertices")
        self.graph = graph
        self.pos = {v: (Fraction(p[0]), Fraction(p[1])) for v, p in pos.items()}
        if len({self.pos[v] for v in range(graph.n)}) != graph.n:
            raise ValueError("vertex positions must be distinct")

    def segment(self, eid):
        u, v = self.graph.edges[eid]
        return self.pos[u], self.pos[v]


@dataclass
class Planarization:
    """A planar graph obtained by replacing each crossing with a dummy.

    ``chains`` maps each original edge id to the vertex sequence of its
    subdivision, running from the lower endpoint to the higher one.
    """

    planar: Graph
    dummy_of: dict  # dummy vertex -> (edge id, edge id)
    chains: dict  # edge id -> tuple of vertex ids

    @property
    def crossing_count(self):
        return len(self.dummy_of)


def _adjacent(g, ea, eb):
    a = g.edges[ea]
    b = g.edges[eb]
    return bool(set(a) & set(b))


def _hard_degeneracy(d):
    """First degeneracy that breaks crossing detection itself, or None.

    Checks (d) collinearly overlapping segments, (c) a vertex inside a
    non-incident segment (a crossing through a vertex), (b) three
    segments concurrent at a point.  Also returns the crossing points
    found along the way.
    """
    g = d.graph
    segs = [d.segment(e) for e in range(g.m)]
    for i in range(g.m):
        for j in range(i + 1, g.m):
            if geo.segments_overlap_collinearly(*segs[i], *segs[j]):
                return Violation(
                    "overlap",
                    f"edges {g.edges[i]} and {g.edges[j]} overlap collinearly",
                    (i, j),
                ), None
    for v in range(g.n):
        p = d.pos[v]
        for e, (a, b) in enumerate(segs):
            if v in g.edges[e]:
                continue
            if geo.point_in_segment_interior(p, a, b):
                return Violation(
                    "vertex_on_segment",
                    f"vertex {v} lies inside edge {g.edges[e]}",
                    (v, e),
                ), None
    points = {}
    for i in range(g.m):
        for j in range(i + 1, g.m):
            if _adjacent(g, i, j):
                continue
            if geo.segments_properly_cross(*segs[i], *segs[j]):
                pt = geo.segment_crossing_point(*segs[i], *segs[j])
                if pt in points:
                    return Violation(
                        "concurrent",
                        f"three segments concurrent at {pt}: edge pairs "
                        f"{points[pt]} and {(i, j)}",
                        (points[pt], (i, j)),
                    ), None
                points[pt] = (i, j)
    return None, points


def check_general_position(d):
    """Return None if the drawing is in general position, else a Violation.

    On top of the hard degeneracies (overlaps, crossings through a
    vertex, concurrent segments) this enforces that all vertex and
    crossing-point x-coordinates are pairwise distinct, which the
    x-order constructions rely on.
    """
    bad, points = _hard_degeneracy(d)
    if bad is not None:
        return bad
    xs = {}
    for v in range(d.graph.n):
        x = d.pos[v][0]
        if x in xs:
            return Violation(
                "coincident_x", f"objects {xs[x]} and vertex {v} share x={x}", (xs[x], v)
            )
        xs[x] = f"vertex {v}"
    for pt, pair in points.items():
        if pt[0] in xs:
            return Violation(
                "coincident_x",
                f"objects {xs[pt[0]]} and crossing {pair} share x={pt[0]}",
                (xs[pt[0]], pair),
            )
        xs[pt[0]] = f"crossing {pair}"
    return None


def crossings(d):
    """All interior crossings of non-adjacent segments, sorted by edge pair.

    Raises DegeneracyError on overlaps, crossings through a vertex, or
    triple points; coincident x-coordinates are tolerated here (only
    the x-order constructions need them distinct).
    """
    bad, points = _hard_degeneracy(d)
    if bad is not None:
        raise DegeneracyError(bad)
    events = [CrossingEvent(i, j, pt) for pt, (i, j) in points.items()]
    events.sort(key=lambda ev: (ev.edge_a, ev.edge_b))
    return events


def crossing_graph(d):
    """Graph with one vertex per edge of the drawing and one edge per crossing."""
    evs = crossings(d)
    return Graph(d.graph.m, [(ev.edge_a, ev.edge_b) for ev in evs])


def planarize_drawing(d):
    """Replace each crossing by a degree-4 dummy vertex.

    Dummy ids start at n, assigned in crossing-event order.  Chains run
    along each edge from its lower endpoint, ordered by position.
    """
    g = d.graph
    evs = crossings(d)
    n_orig = g.n
    dummy_of = {}
    per_edge = {e: [] for e in range(g.m)}
    for k, ev in enumerate(evs):
        dummy = n_orig + k
        dummy_of[dummy] = (ev.edge_a, ev.edge_b)
        per_edge[ev.edge_a].append((ev.point, dummy))
        per_edge[ev.edge_b].append((ev.point, dummy))
    chains = {}
    new_edges = []
    for e in range(g.m):
        u, v = g.edges[e]
        a, b = d.pos[u], d.pos[v]
        stops = sorted(per_edge[e], key=lambda item: geo.segment_param(item[0], a, b))
        chain = [u] + [dummy for _, dummy in stops] + [v]
        chains[e] = tuple(chain)
        new_edges.extend(zip(chain, chain[1:]))
    planar = Graph(n_orig + len(evs), new_edges, dummy_of)
    return Planarization(planar, dummy_of, chains)


def contract_dummies(p):
    """Undo a planarization: contract every chain back to a single edge."""
    originals = [v for v in range(p.planar.n) if v not in p.dummy_of]
    n = len(originals)
    if originals != list(range(n)):
        raise ValueError("original vertices are expected to come first")
    edges = []
    for chain in p.chains.values():
        edges.append((chain[0], chain[-1]))
    return Graph(n, edges)


# -- planarity ----------------------------------------------------------


def euler_bound_ok(g):
    """Necessary planarity condition m <= 3n - 6 (vacuous below 3 vertices)."""
    if g.n < 3:
        return True
    return g.m <= 3 * g.n - 6


def is_planar(g):
    """Full planarity test (left-right planarity via networkx)."""
    if g.n == 0:
        return True
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    ok, _ = nx.check_planarity(h)
    return ok


# -- serialization ------------------------------------------------------


def drawing_to_json(d):
    return {
        "graph": {
            "n": d.graph.n,
            "edges": [list(e) for e in d.graph.edges],
            "kinds": {
                str(v): (list(d.graph.dummy_of[v]) if v in d.graph.dummy_of else "original")
                for v in range(d.graph.n)
            },
        },
        "pos": {
            str(v): [[p[0].numerator, p[0].denominator], [p[1].numerator, p[1].denominator]]
            for v, p in d.pos.items()
        },
    }


def drawing_from_json(obj):
    from .graphs import graph_from_json

    g = graph_from_json(obj["graph"])
    pos = {
        int(v): (Fraction(px[0], px[1]), Fraction(py[0], py[1]))
        for v, (px, py) in obj["pos"].items()
    }
    return Drawing(g, pos)


def planarization_to_json(p):
    from .graphs import graph_to_json

    return {
        "planar": graph_to_json(p.planar),
        "dummy_of": {str(v): list(pair) for v, pair in sorted(p.dummy_of.items())},
        "chains": {str(e): list(chain) for e, chain in sorted(p.chains.items())},
    }


def planarization_from_json(obj):
    from .graphs import graph_from_json

    return Planarization(
        graph_from_json(obj["planar"]),
        {int(v): tuple(pair) for v, pair in obj["dummy_of"].items()},
        {int(e): tuple(chain) for e, chain in obj["chains"].items()},
    )


# -- SVG export ---------------------------------------------------------


def export_svg(d, size=400, margin=20, vertex_radius=4, labels=False):
    """Render a drawing as an SVG 1.1 document.

    Exact coordinates are kept until emission, where they are scaled to
    the viewport and rounded.  Dummy vertices render as filled squares,
    originals as circles.
    """
    g = d.graph
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
    ]
    if g.n > 0:
        xs = [d.pos[v][0] for v in range(g.n)]
        ys = [d.pos[v][1] for v in range(g.n)]
        lo_x, hi_x = min(xs), max(xs)
        lo_y, hi_y = min(ys), max(ys)
        span = max(hi_x - lo_x, hi_y - lo_y, Fraction(1))
        scale = Fraction(size - 2 * margin) / span

        def sx(x):
            return float(margin + (x - lo_x) * scale)

        def sy(y):
            # flip: SVG y grows downward
            return float(size - margin - (y - lo_y) * scale)

        for u, v in g.edges:
            a, b = d.pos[u], d.pos[v]
            parts.append(
                f'<line x1="{sx(a[0]):.3f}" y1="{sy(a[1]):.3f}" '
                f'x2="{sx(b[0]):.3f}" y2="{sy(b[1]):.3f}" '
                'stroke="black" stroke-width="1"/>'
            )
        for v in range(g.n):
            x, y = sx(d.pos[v][0]), sy(d.pos[v][1])
            if g.is_dummy(v):
                r = vertex_radius
                parts.append(
                    f'<rect x="{x - r:.3f}" y="{y - r:.3f}" width="{2 * r}" '
                    f'height="{2 * r}" fill="crimson"/>'
                )
            else:
                parts.append(
                    f'<circle cx="{x:.3f}" cy="{y:.3f}" r="{vertex_radius}" '
                    'fill="steelblue"/>'
                )
            if labels:
                parts.append(
                    f'<text x="{x + 5:.3f}" y="{y - 5:.3f}" font-size="10">{v}</text>'
                )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
