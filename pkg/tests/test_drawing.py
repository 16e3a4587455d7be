"""Exact crossing detection, general position, planarization, SVG."""

from __future__ import annotations

from fractions import Fraction

import pytest

from planwidth.drawing import (
    DegeneracyError,
    Drawing,
    check_general_position,
    contract_dummies,
    crossing_graph,
    crossings,
    drawing_from_json,
    drawing_to_json,
    euler_bound_ok,
    export_svg,
    is_planar,
    planarize_drawing,
)
from planwidth.graphs import Graph, gen_complete_bipartite
from planwidth.planarizers import cr_pair_k3n, zarankiewicz_k3n


def _segments_drawing(segments):
    """Graph with one edge per segment, vertices at the given endpoints."""
    pos = {}
    edges = []
    for a, b in segments:
        for p in (a, b):
            if p not in pos.values():
                pos[len(pos)] = p
        index = {p: v for v, p in pos.items()}
        edges.append((index[a], index[b]))
    return Drawing(Graph(len(pos), edges), pos)


def test_disjoint_horizontals_do_not_cross():
    d = _segments_drawing([(((0), 0), (2, 1)), ((5, 3), (7, 4))])
    assert crossings(d) == []


def test_symmetric_x_crossing():
    d = _segments_drawing([((0, 0), (2, 2)), ((0, 2), (2, 0))])
    evs = crossings(d)
    assert len(evs) == 1
    assert evs[0].point == (Fraction(1), Fraction(1))


def test_zarankiewicz_11_has_25_crossings():
    assert len(crossings(zarankiewicz_k3n(11))) == 25


def test_adjacent_segments_never_cross():
    # a fan: all segments share vertex 0
    pos = {0: (0, 0), 1: (3, 1), 2: (3, 2), 3: (3, 5)}
    d = Drawing(Graph(4, [(0, 1), (0, 2), (0, 3)]), pos)
    assert crossings(d) == []


def test_general_position_vertical_line_violation():
    d = Drawing(Graph(3, []), {0: (0, 0), 1: (0, 1), 2: (0, 2)})
    v = check_general_position(d)
    assert v is not None and v.kind == "coincident_x"


def test_general_position_concurrent_diagonals():
    # three segments through the origin, all x-coordinates distinct:
    # the hexagon-with-concurrent-main-diagonals degeneracy
    segs = [((-3, 0), (4, 0)), ((1, 1), (-2, -2)), ((2, -4), (-1, 2))]
    d = _segments_drawing(segs)
    v = check_general_position(d)
    assert v is not None and v.kind == "concurrent"


def test_general_position_vertex_on_segment():
    pos = {0: (0, 0), 1: (4, 0), 2: (2, 0), 3: (2, 5)}
    d = Drawing(Graph(4, [(0, 1), (2, 3)]), pos)
    v = check_general_position(d)
    assert v is not None and v.kind == "vertex_on_segment"


def test_general_position_collinear_overlap():
    pos = {0: (0, 0), 1: (4, 4), 2: (1, 1), 3: (6, 6)}
    d = Drawing(Graph(4, [(0, 1), (2, 3)]), pos)
    v = check_general_position(d)
    assert v is not None and v.kind == "overlap"


def test_crossings_raises_on_degenerate_input():
    # vertex 2 sits inside the segment 0-1
    pos = {0: (0, 0), 1: (4, 0), 2: (2, 0), 3: (2, 5)}
    d = Drawing(Graph(4, [(0, 1), (2, 3)]), pos)
    with pytest.raises(DegeneracyError):
        crossings(d)


def test_crossings_tolerates_shared_vertex_x():
    # the symmetric X has coincident vertex x-coordinates; crossing
    # detection still works, only the x-order constructions refuse it
    d = _segments_drawing([((0, 0), (2, 2)), ((0, 2), (2, 0))])
    assert check_general_position(d) is not None
    assert len(crossings(d)) == 1


def test_planarize_planar_drawing_is_identity():
    d = _segments_drawing([((0, 0), (1, 3)), ((2, 1), (5, 2))])
    p = planarize_drawing(d)
    assert p.crossing_count == 0
    assert p.planar == d.graph


def test_planarize_single_x():
    d = _segments_drawing([((0, 0), (2, 2)), ((0, 2), (2, 0))])
    p = planarize_drawing(d)
    assert p.planar.n == 5 and p.planar.m == 4
    assert p.planar.degree(4) == 4
    assert p.dummy_of[4] == (0, 1)


def test_planarize_zarankiewicz_counts():
    for n in (3, 5, 11):
        p = planarize_drawing(zarankiewicz_k3n(n))
        cr = cr_pair_k3n(n)
        assert p.planar.n == 3 + n + cr
        assert p.planar.m == 3 * n + 2 * cr


def test_planarization_invariants_on_zarankiewicz_family():
    for n in range(1, 9):
        d = zarankiewicz_k3n(n)
        p = planarize_drawing(d)
        evs = crossings(d)
        assert len(evs) == crossing_graph(d).m
        assert euler_bound_ok(p.planar)
        assert is_planar(p.planar)
        assert contract_dummies(p) == d.graph
        for dummy in p.dummy_of:
            assert p.planar.degree(dummy) == 4
        for v in range(d.graph.n):
            assert p.planar.degree(v) == d.graph.degree(v)
        # chains of crossing edges share exactly their common dummy
        for dummy, (ea, eb) in p.dummy_of.items():
            shared = set(p.chains[ea]) & set(p.chains[eb])
            assert dummy in shared


def test_crossing_graph_zarankiewicz():
    cg = crossing_graph(zarankiewicz_k3n(11))
    assert cg.n == 33 and cg.m == 25
    assert crossing_graph(zarankiewicz_k3n(6)).m == 6


def test_crossing_graph_of_planar_drawing_is_edgeless():
    d = _segments_drawing([((0, 0), (1, 3)), ((2, 1), (5, 2))])
    assert crossing_graph(d).m == 0


def test_drawing_json_round_trip():
    d = zarankiewicz_k3n(4)
    back = drawing_from_json(drawing_to_json(d))
    assert back.graph == d.graph
    assert back.pos == d.pos


def test_svg_empty_graph():
    svg = export_svg(Drawing(Graph(0, []), {}))
    assert svg.startswith("<?xml")
    assert "<circle" not in svg and "<line" not in svg


def test_svg_single_edge():
    d = _segments_drawing([((0, 0), (1, 1))])
    svg = export_svg(d)
    assert svg.count("<circle") == 2
    assert svg.count("<line") == 1


def test_svg_marks_dummies_distinctly():
    p = planarize_drawing(_segments_drawing([((0, 0), (2, 2)), ((0, 2), (2, 0))]))
    pos = {0: (0, 0), 1: (2, 2), 2: (0, 2), 3: (2, 0), 4: (1, 1)}
    svg = export_svg(Drawing(p.planar, pos))
    assert svg.count("<rect") == 1
    assert svg.count("<circle") == 4
