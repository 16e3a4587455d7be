"""The four planarization strategies and their width guarantees."""

from __future__ import annotations

from fractions import Fraction

import pytest

from planwidth.arrangements import (
    LinearArrangement,
    edge_separation,
    exact_cutwidth,
    span,
)
from planwidth.decompositions import (
    caterpillar_carving_from_arrangement,
    exact_carving_width,
    validate_carving,
)
from planwidth.drawing import (
    check_general_position,
    contract_dummies,
    crossings,
    euler_bound_ok,
    is_planar,
)
from planwidth.experiments import folded_arrangement, joined_clique_carving
from planwidth.graphs import (
    Graph,
    gen_circulant,
    gen_complete_bipartite,
    gen_cycle,
    gen_path,
    gen_random,
    gen_star,
    max_degree,
)
from planwidth.planarizers import (
    carving_guided,
    clustered_carving,
    convex_lift,
    cr_pair_k3n,
    zarankiewicz_k3n,
)


# -- crossing pair formula -----------------------------------------------------


@pytest.mark.parametrize("n,value", [(1, 0), (2, 0), (3, 1), (6, 6), (11, 25)])
def test_cr_pair_values(n, value):
    assert cr_pair_k3n(n) == value


def test_cr_pair_rejects_nonpositive():
    with pytest.raises(ValueError):
        cr_pair_k3n(0)


# -- Zarankiewicz drawings ------------------------------------------------------


@pytest.mark.parametrize("n", range(1, 17))
def test_zarankiewicz_crossing_counts(n):
    d = zarankiewicz_k3n(n)
    assert check_general_position(d) is None
    assert len(crossings(d)) == cr_pair_k3n(n)


def test_zarankiewicz_is_k3n():
    d = zarankiewicz_k3n(7)
    assert d.graph == gen_complete_bipartite(3, 7)


# -- convex lift -----------------------------------------------------------------


def test_convex_lift_path_is_crossing_free():
    g = gen_path(5)
    d, report = convex_lift(g, LinearArrangement(range(5)))
    assert report.crossings_added == 0
    assert report.planarization.planar == g
    assert report.validated_width == 1


def test_convex_lift_k34_preserves_optimal_cutwidth():
    g = gen_complete_bipartite(3, 4)
    value, arr = exact_cutwidth(g)
    assert value == 6
    d, report = convex_lift(g, arr)
    assert report.claimed_width == 6
    assert report.validated_width == 6
    assert is_planar(report.planarization.planar)


@pytest.mark.parametrize("seed", range(8))
def test_convex_lift_width_preservation_random(seed):
    g = gen_random(9, 14, 500 + seed)
    arr = LinearArrangement(range(9))
    _, report = convex_lift(g, arr)
    assert report.validated_width == edge_separation(g, arr)


def test_convex_lift_planarization_invariants():
    g = gen_circulant(8, {1, 2})
    _, report = convex_lift(g, LinearArrangement(range(8)))
    p = report.planarization
    assert euler_bound_ok(p.planar)
    assert is_planar(p.planar)
    assert contract_dummies(p) == g
    assert all(p.planar.degree(d) == 4 for d in p.dummy_of)


def test_convex_lift_witness_is_xorder_of_planarization():
    g = gen_complete_bipartite(3, 3)
    _, report = convex_lift(g, LinearArrangement(range(6)))
    assert report.witness_kind == "arrangement"
    assert report.witness.n == report.planarization.planar.n


def test_convex_lift_handles_triple_point_inputs():
    # chords (0,4), (1,5), (2,10) of the integer parabola are concurrent,
    # so the shear alone cannot reach general position; the height bump
    # fallback must engage
    g = Graph(11, [(0, 4), (1, 5), (2, 10)])
    d, report = convex_lift(g, LinearArrangement(range(11)))
    assert check_general_position(d) is None
    assert report.crossings_added == 3
    assert report.validated_width == edge_separation(g, LinearArrangement(range(11)))


def test_convex_lift_single_vertex():
    g = Graph(1, [])
    d, report = convex_lift(g, LinearArrangement([0]))
    assert report.crossings_added == 0 and report.validated_width == 0


# -- carving guided ----------------------------------------------------------------


def test_carving_guided_tree_natural_carving_no_crossings():
    g = gen_path(6)
    cd = caterpillar_carving_from_arrangement(g, LinearArrangement(range(6)))
    report = carving_guided(g, cd)
    assert report.crossings_added == 0
    assert report.planarization.planar == g


def test_carving_guided_k33():
    g = gen_complete_bipartite(3, 3)
    w, cd = exact_carving_width(g)
    report = carving_guided(g, cd)
    assert report.crossings_added <= 3 * 6  # 3 internal tree edges, C(4,2) each
    assert report.validated_width <= max(w, 4) == 4
    p = report.planarization
    assert is_planar(p.planar)
    assert contract_dummies(p) == g
    assert all(p.planar.degree(d) == 4 for d in p.dummy_of)


def test_carving_guided_k34_caterpillar():
    g = gen_complete_bipartite(3, 4)
    _, arr = exact_cutwidth(g)
    cd = caterpillar_carving_from_arrangement(g, arr)
    w = validate_carving(g, cd)
    report = carving_guided(g, cd)
    assert report.validated_width <= max(w, 4) <= 6
    assert is_planar(report.planarization.planar)
    assert contract_dummies(report.planarization) == g


def test_carving_guided_routing_invariants():
    g = gen_complete_bipartite(3, 3)
    w, cd = exact_carving_width(g)
    report = carving_guided(g, cd)
    total = 0
    for routing in report.routings:
        entry, exit_ = list(routing.entry_order), list(routing.exit_order)
        assert sorted(entry) == sorted(exit_)
        # replaying the transpositions on the entry order gives the exit
        seq = entry[:]
        for pos in routing.transpositions:
            seq[pos], seq[pos + 1] = seq[pos + 1], seq[pos]
        assert seq == exit_
        inversions = sum(
            1
            for i in range(len(entry))
            for j in range(i + 1, len(entry))
            if exit_.index(entry[i]) > exit_.index(entry[j])
        )
        assert len(routing.transpositions) == inversions
        total += len(routing.transpositions)
    assert total == report.crossings_added


def test_carving_guided_cut_bound_along_corridors():
    # every corridor keeps at most w wires, so the output carving
    # validates within max(w, 4) on a corpus
    for seed in range(6):
        g = gen_random(8, 12, 700 + seed)
        if any(g.degree(v) == 0 for v in range(8)):
            continue
        _, arr = exact_cutwidth(g)
        cd = caterpillar_carving_from_arrangement(g, arr)
        w = validate_carving(g, cd)
        report = carving_guided(g, cd)
        assert report.validated_width <= max(w, 4)
        assert is_planar(report.planarization.planar)
        assert contract_dummies(report.planarization) == g


def test_carving_guided_two_vertices():
    g = Graph(2, [(0, 1)])
    _, cd = exact_carving_width(g)
    report = carving_guided(g, cd)
    assert report.crossings_added == 0
    assert report.validated_width == 1


# -- clustered carving ----------------------------------------------------------------


def test_clustered_single_cluster_is_convex_drawing():
    g = gen_complete_bipartite(3, 3)
    w, cd = exact_carving_width(g)
    report = clustered_carving(g, cd, z=len(cd.tree))
    assert is_planar(report.planarization.planar)
    assert contract_dummies(report.planarization) == g
    # one cluster means no corridors: all crossings are chord crossings
    assert report.crossings_added <= g.m * (g.m - 1) // 2


def test_clustered_k33_small_z():
    g = gen_complete_bipartite(3, 3)
    w, cd = exact_carving_width(g)
    report = clustered_carving(g, cd, z=2)
    assert is_planar(report.planarization.planar)
    assert contract_dummies(report.planarization) == g
    assert report.validated_width >= max_degree(g)


def test_clustered_rejects_bad_z():
    g = gen_complete_bipartite(3, 3)
    _, cd = exact_carving_width(g)
    with pytest.raises(ValueError):
        clustered_carving(g, cd, z=0)


@pytest.mark.parametrize("s", [3, 4, 5])
def test_clustered_clique_family(s):
    g, cd = joined_clique_carving(3, s)
    w = validate_carving(g, cd)
    report = clustered_carving(g, cd)
    assert is_planar(report.planarization.planar)
    assert contract_dummies(report.planarization) == g
    assert report.validated_width <= 2 * w
    assert all(report.planarization.planar.degree(d) == 4 for d in report.planarization.dummy_of)


def test_clustered_cluster_wire_bound():
    # chord crossings per cluster stay below C(wire count, 2)
    g = gen_complete_bipartite(3, 3)
    w, cd = exact_carving_width(g)
    report = clustered_carving(g, cd, z=3)
    assert report.crossings_added <= g.m * (g.m - 1) // 2


# -- bandwidth family ---------------------------------------------------------------------


def test_folded_circulant_span_constant():
    spans = []
    for n in (12, 24):
        g = gen_circulant(n, {1, 2, 3})
        arr = folded_arrangement(n)
        assert span(g, arr) == 6
        _, report = convex_lift(g, arr)
        spans.append(span(report.planarization.planar, report.witness))
    assert spans[0] == spans[1]
