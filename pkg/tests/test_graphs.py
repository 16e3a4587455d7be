"""Graph representation, parsing, generators and statistics."""

from __future__ import annotations

from fractions import Fraction

import pytest

from planwidth.graphs import (
    DuplicateEdgeError,
    EndpointRangeError,
    Graph,
    GraphError,
    MalformedLineError,
    SelfLoopError,
    components,
    densest_component,
    density,
    gen_circulant,
    gen_complete_bipartite,
    gen_disjoint_cliques,
    gen_random,
    graph_from_json,
    graph_to_json,
    max_degree,
    parse_graph,
    serialize_graph,
)


def test_parse_single_edge():
    g = parse_graph("2 1\n0 1")
    assert g.n == 2 and g.m == 1


def test_parse_edgeless():
    g = parse_graph("3 0")
    assert g.n == 3 and g.m == 0


def test_parse_rejects_self_loop():
    with pytest.raises(SelfLoopError):
        parse_graph("2 1\n0 0")


def test_parse_rejects_out_of_range():
    with pytest.raises(EndpointRangeError):
        parse_graph("2 1\n0 5")


def test_parse_rejects_duplicate():
    with pytest.raises(DuplicateEdgeError):
        parse_graph("3 2\n0 1\n1 0")


def test_parse_rejects_malformed():
    with pytest.raises(MalformedLineError):
        parse_graph("2 1\n0 1 junk")
    with pytest.raises(MalformedLineError):
        parse_graph("nonsense")
    with pytest.raises(MalformedLineError):
        parse_graph("3 2\n0 1")


def test_serialize_round_trip():
    g = gen_circulant(7, {1, 2})
    assert parse_graph(serialize_graph(g)) == g


def test_json_round_trip_keeps_dummy_provenance():
    g = Graph(5, [(0, 4), (1, 4), (2, 4), (3, 4)], dummy_of={4: (0, 1)})
    back = graph_from_json(graph_to_json(g))
    assert back == g
    assert back.dummy_of == {4: (0, 1)}


@pytest.mark.parametrize(
    "a,b,n,m", [(3, 5, 8, 15), (1, 1, 2, 1), (3, 11, 14, 33)]
)
def test_complete_bipartite_counts(a, b, n, m):
    g = gen_complete_bipartite(a, b)
    assert g.n == n and g.m == m


def test_complete_bipartite_rejects_zero_side():
    with pytest.raises(GraphError):
        gen_complete_bipartite(0, 4)


@pytest.mark.parametrize("k,s,n,m,comps", [(2, 3, 6, 6, 2), (1, 4, 4, 6, 1), (3, 5, 15, 30, 3)])
def test_disjoint_cliques(k, s, n, m, comps):
    g = gen_disjoint_cliques(k, s)
    assert g.n == n and g.m == m
    assert len(components(g)) == comps


def test_circulant_cycle():
    g = gen_circulant(5, {1})
    assert g.n == 5 and g.m == 5
    assert all(g.degree(v) == 2 for v in range(5))


def test_circulant_degree_four():
    g = gen_circulant(6, {1, 2})
    assert g.n == 6 and g.m == 12


def test_circulant_rejects_bad_offset():
    with pytest.raises(GraphError):
        gen_circulant(6, {5})


def test_density_complete_graph():
    assert density(gen_disjoint_cliques(1, 4)) == 1


def test_density_edgeless():
    assert density(Graph(5, [])) == 0


def test_density_needs_two_vertices():
    with pytest.raises(GraphError):
        density(Graph(1, []))


def test_density_in_unit_interval_on_random_graphs():
    for seed in range(10):
        g = gen_random(8, 2 * seed, seed)
        assert 0 <= density(g) <= 1


def test_densest_component_triangle_vs_edge():
    g = Graph(5, [(0, 1), (1, 2), (0, 2), (3, 4)])
    assert densest_component(g) == [0, 1, 2]


def test_densest_component_connected_graph_is_whole():
    g = gen_complete_bipartite(2, 3)
    assert densest_component(g) == list(range(5))


def test_densest_component_clique_with_deleted_edge():
    # two K4s, one losing an edge: ratios 6/4 vs 5/4
    g = gen_disjoint_cliques(2, 4)
    edges = [e for e in g.edges if e != (4, 5)]
    g = Graph(8, edges)
    assert densest_component(g) == [0, 1, 2, 3]


def test_densest_component_beats_global_ratio():
    for seed in range(12):
        g = gen_random(10, 8 + seed, 100 + seed)
        if g.m == 0:
            continue
        comp = densest_component(g)
        members = set(comp)
        m_i = sum(1 for u, v in g.edges if u in members)
        assert Fraction(m_i, len(comp)) >= Fraction(g.m, g.n)


def test_densest_component_rejects_edgeless():
    with pytest.raises(GraphError):
        densest_component(Graph(3, []))


def test_components_ordering():
    g = gen_disjoint_cliques(3, 2)
    assert components(g) == [[0, 1], [2, 3], [4, 5]]


def test_max_degree_k35():
    assert max_degree(gen_complete_bipartite(3, 5)) == 5
