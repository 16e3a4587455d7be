"""Validators, exact decomposition solvers, conversions, partitions."""

from __future__ import annotations

from itertools import permutations

import pytest

from planwidth.arrangements import LinearArrangement, edge_separation, exact_cutwidth
from planwidth.decompositions import (
    AncestorForest,
    BranchDecomposition,
    CarvingDecomposition,
    InvalidDecompositionError,
    TreeDecomposition,
    branch_from_json,
    branch_to_carving,
    branch_to_json,
    brute_force_treewidth,
    carving_from_json,
    carving_to_branch,
    carving_to_json,
    caterpillar_carving_from_arrangement,
    check_restricted_partition,
    exact_carving_width,
    exact_treedepth,
    exact_treewidth,
    restricted_partition,
    tree_decomposition_from_json,
    tree_decomposition_to_json,
    validate_branch,
    validate_carving,
    validate_tree_decomposition,
)
from planwidth.experiments import random_binary_tree
from planwidth.graphs import (
    Graph,
    gen_complete_bipartite,
    gen_cycle,
    gen_path,
    gen_random,
    gen_star,
    max_degree,
)

K4 = Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
TRIANGLE = Graph(3, [(0, 1), (0, 2), (1, 2)])


def fig1_style_decomposition(n):
    """Path of bags for K_{3,n}: hubs in every bag, one leaf per bag."""
    g = gen_complete_bipartite(3, n)
    bags = {i: frozenset({0, 1, 2, 3 + i}) for i in range(n)}
    tree = {i: set() for i in range(n)}
    for i in range(n - 1):
        tree[i].add(i + 1)
        tree[i + 1].add(i)
    return g, TreeDecomposition(tree, bags)


# -- tree decomposition validator ---------------------------------------------


def test_validate_fig1_decomposition():
    g, td = fig1_style_decomposition(5)
    assert validate_tree_decomposition(g, td) == 3


def test_validate_single_bag():
    g = gen_complete_bipartite(2, 2)
    td = TreeDecomposition({0: set()}, {0: frozenset(range(4))})
    assert validate_tree_decomposition(g, td) == 3


def test_validate_reports_uncovered_edge():
    g = gen_path(3)
    tree = {0: {1}, 1: {0}}
    bags = {0: frozenset({0, 1}), 1: frozenset({2})}
    with pytest.raises(InvalidDecompositionError) as info:
        validate_tree_decomposition(g, TreeDecomposition(tree, bags))
    assert info.value.axiom == "edge_coverage"
    assert info.value.witness == (1, 2)


def test_validate_reports_disconnected_vertex():
    g = gen_path(3)
    tree = {0: {1}, 1: {0, 2}, 2: {1}}
    bags = {0: frozenset({0, 1}), 1: frozenset({1, 2}), 2: frozenset({0, 2})}
    with pytest.raises(InvalidDecompositionError) as info:
        validate_tree_decomposition(g, TreeDecomposition(tree, bags))
    assert info.value.axiom == "connectivity"


def test_validate_reports_missing_vertex():
    g = gen_path(3)
    td = TreeDecomposition({0: set()}, {0: frozenset({0, 1})})
    with pytest.raises(InvalidDecompositionError) as info:
        validate_tree_decomposition(g, td)
    assert info.value.axiom == "vertex_coverage"


# -- exact treewidth -----------------------------------------------------------


def test_treewidth_of_tree_is_one():
    g = Graph(6, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5)])
    w, td = exact_treewidth(g)
    assert w == 1
    assert validate_tree_decomposition(g, td) == 1


def test_treewidth_k3n_is_three():
    for n in (3, 4, 5):
        g = gen_complete_bipartite(3, n)
        w, td = exact_treewidth(g)
        assert w == 3
        assert validate_tree_decomposition(g, td) == 3


def test_treewidth_k35_optimality_by_exhaustion():
    assert brute_force_treewidth(gen_complete_bipartite(3, 5)) == 3


def test_treewidth_matches_brute_force_small():
    corpus = [
        gen_path(6),
        gen_cycle(6),
        K4,
        gen_complete_bipartite(2, 3),
        gen_random(6, 9, 5),
        gen_random(7, 11, 8),
    ]
    for g in corpus:
        w, td = exact_treewidth(g)
        assert w == brute_force_treewidth(g)
        assert validate_tree_decomposition(g, td) == w


def test_treewidth_at_most_pathwidth():
    from planwidth.arrangements import exact_pathwidth

    for seed in range(6):
        g = gen_random(7, 10, 60 + seed)
        assert exact_treewidth(g)[0] <= exact_pathwidth(g)[0]


def test_treewidth_of_zarankiewicz_planarization():
    from planwidth.decompositions import elimination_width_at_most
    from planwidth.drawing import planarize_drawing
    from planwidth.planarizers import zarankiewicz_k3n

    p = planarize_drawing(zarankiewicz_k3n(5))
    w, td = exact_treewidth(p.planar)
    # the 12-vertex instance is upper-bounded by the validated witness
    # and lower-bounded by a complete threshold search at k=3
    assert w == 4
    assert validate_tree_decomposition(p.planar, td) == 4
    assert not elimination_width_at_most(p.planar, 3)
    assert elimination_width_at_most(p.planar, 4)


# -- tree-depth ----------------------------------------------------------------


def test_treedepth_k38_is_three():
    g = gen_complete_bipartite(3, 8)
    depth, forest = exact_treedepth(g)
    assert depth == 3
    assert forest.depth() == 3
    for u, v in g.edges:
        assert forest.is_ancestor(u, v) or forest.is_ancestor(v, u)


def test_treedepth_small_values():
    # depth counts edges: a single vertex is 0, a star is 1
    assert exact_treedepth(Graph(1, []))[0] == 0
    assert exact_treedepth(gen_star(3))[0] == 1
    assert exact_treedepth(gen_path(2))[0] == 1


def test_treedepth_path4_matches_root_search():
    g = gen_path(4)

    def oracle(vertices):
        vs = sorted(vertices)
        members = set(vs)
        if len(vs) == 1:
            return 0
        comps = []
        left = set(vs)
        while left:
            start = next(iter(left))
            comp = {start}
            stack = [start]
            while stack:
                x = stack.pop()
                for y in g.neighbors(x):
                    if y in members and y not in comp:
                        comp.add(y)
                        stack.append(y)
            comps.append(comp)
            left -= comp
        if len(comps) > 1:
            return max(oracle(c) for c in comps)
        return 1 + min(oracle(members - {v}) for v in vs)

    assert oracle(range(4)) == 2
    assert exact_treedepth(g)[0] == 2


def test_treedepth_witness_forest_on_random_graphs():
    for seed in range(5):
        g = gen_random(7, 9, 70 + seed)
        depth, forest = exact_treedepth(g)
        assert forest.depth() == depth
        for u, v in g.edges:
            assert forest.is_ancestor(u, v) or forest.is_ancestor(v, u)


# -- carving / branch validators -------------------------------------------------


def test_validate_carving_star():
    g = gen_star(3)
    tree = {0: {4}, 1: {4}, 2: {5}, 3: {5}, 4: {0, 1, 5}, 5: {2, 3, 4}}
    cd = CarvingDecomposition(tree, {0: 0, 1: 1, 2: 2, 3: 3})
    assert validate_carving(g, cd) == 3


def test_validate_carving_k33_optimum_is_four():
    g = gen_complete_bipartite(3, 3)
    w, cd = exact_carving_width(g)
    assert w == 4
    assert validate_carving(g, cd) == 4


def test_validate_carving_rejects_bad_degree():
    g = gen_path(4)
    tree = {0: {4}, 1: {4}, 2: {4}, 3: {4}, 4: {0, 1, 2, 3}}
    with pytest.raises(InvalidDecompositionError) as info:
        validate_carving(g, CarvingDecomposition(tree, {i: i for i in range(4)}))
    assert info.value.axiom == "degree"


def test_validate_carving_rejects_partial_bijection():
    g = gen_path(3)
    tree = {0: {1}, 1: {0}}
    with pytest.raises(InvalidDecompositionError) as info:
        validate_carving(g, CarvingDecomposition(tree, {0: 0, 1: 1}))
    assert info.value.axiom == "bijection"


def test_validate_branch_single_edge():
    g = Graph(2, [(0, 1)])
    bd = BranchDecomposition({0: set()}, {0: 0})
    assert validate_branch(g, bd) == 0


def test_validate_branch_triangle_star():
    tree = {0: {3}, 1: {3}, 2: {3}, 3: {0, 1, 2}}
    bd = BranchDecomposition(tree, {0: 0, 1: 1, 2: 2})
    assert validate_branch(TRIANGLE, bd) == 2


# -- exact carving width ----------------------------------------------------------


def test_carving_width_c4_by_enumeration():
    # the three 4-leaf tree shapes give cuts {2, 4, 2}; the optimum is 2
    g = gen_cycle(4)
    w, cd = exact_carving_width(g)
    assert w == 2
    assert validate_carving(g, cd) == 2


def test_carving_width_p5():
    w, cd = exact_carving_width(gen_path(5))
    assert w == 2


def test_carving_width_at_least_max_degree():
    for seed in range(5):
        g = gen_random(7, 10, 80 + seed)
        if min(g.degree(v) for v in range(7)) == 0:
            continue
        w, cd = exact_carving_width(g)
        assert w >= max_degree(g)


def test_carving_width_two_vertices():
    g = Graph(2, [(0, 1)])
    w, cd = exact_carving_width(g)
    assert w == 1


# -- caterpillars -------------------------------------------------------------------


def test_caterpillar_path_in_order():
    g = gen_path(5)
    cd = caterpillar_carving_from_arrangement(g, LinearArrangement(range(5)))
    assert validate_carving(g, cd) <= 2


def test_caterpillar_k34_bound():
    g = gen_complete_bipartite(3, 4)
    w, arr = exact_cutwidth(g)
    cd = caterpillar_carving_from_arrangement(g, arr)
    assert validate_carving(g, cd) <= max(w, max_degree(g)) == 6


def test_caterpillar_bound_on_random_corpus():
    for seed in range(10):
        g = gen_random(8, 13, 90 + seed)
        arr = LinearArrangement(range(8))
        cd = caterpillar_carving_from_arrangement(g, arr)
        assert validate_carving(g, cd) <= max(
            edge_separation(g, arr), max_degree(g)
        )


def test_caterpillar_planarization_of_k34():
    from planwidth.planarizers import convex_lift

    g = gen_complete_bipartite(3, 4)
    w, arr = exact_cutwidth(g)
    _, report = convex_lift(g, arr)
    planar = report.planarization.planar
    cd = caterpillar_carving_from_arrangement(planar, report.witness)
    assert validate_carving(planar, cd) <= max(6, max_degree(planar))


# -- conversions ----------------------------------------------------------------------


def test_carving_to_branch_single_edge():
    g = Graph(2, [(0, 1)])
    _, cd = exact_carving_width(g)
    bd = carving_to_branch(g, cd)
    assert validate_branch(g, bd) == 0


def test_carving_to_branch_triangle():
    w, cd = exact_carving_width(TRIANGLE)
    bd = carving_to_branch(TRIANGLE, cd)
    assert validate_branch(TRIANGLE, bd) == 2


def test_carving_to_branch_rejects_isolated_vertex():
    g = Graph(3, [(0, 1)])
    cd = CarvingDecomposition(
        {0: {3}, 1: {3}, 2: {3}, 3: {0, 1, 2}}, {0: 0, 1: 1, 2: 2}
    )
    with pytest.raises(InvalidDecompositionError):
        carving_to_branch(g, cd)


def test_branch_to_carving_triangle():
    _, cd = exact_carving_width(TRIANGLE)
    bd = carving_to_branch(TRIANGLE, cd)
    cd2 = branch_to_carving(TRIANGLE, bd)
    # max degree 2 here, so the degree and the factor-2 bounds coincide
    assert validate_carving(TRIANGLE, cd2) <= 2 * validate_branch(TRIANGLE, bd)


CONVERSION_CORPUS = [
    gen_complete_bipartite(3, 3),
    gen_complete_bipartite(3, 4),
    K4,
    gen_path(6),
    gen_cycle(7),
    gen_star(5),
    gen_random(9, 14, 7),
]


@pytest.mark.parametrize("g", CONVERSION_CORPUS, ids=lambda g: f"n{g.n}m{g.m}")
def test_conversion_factor_bounds(g):
    d = max_degree(g)
    _, arr = exact_cutwidth(g)
    cd = caterpillar_carving_from_arrangement(g, arr)
    wc = validate_carving(g, cd)
    bd = carving_to_branch(g, cd)
    wb = validate_branch(g, bd)
    assert wb <= 2 * wc  # branch width grows by at most a factor of two
    assert wb <= d * wc
    cd2 = branch_to_carving(g, bd)
    wc2 = validate_carving(g, cd2)
    assert wc2 <= d * wb  # carving width grows by at most the degree


def test_branch_to_carving_factor_two_fails_on_stars():
    # any carving of a star has width equal to the center degree, but
    # the branchwidth is 1: the factor-two direction cannot hold
    g = gen_star(3)
    _, arr = exact_cutwidth(g)
    cd = caterpillar_carving_from_arrangement(g, arr)
    bd = carving_to_branch(g, cd)
    wb = validate_branch(g, bd)
    cd2 = branch_to_carving(g, bd)
    assert validate_carving(g, cd2) > 2 * wb


# -- decomposition JSON round trips ---------------------------------------------------


def test_decomposition_json_round_trips():
    g, td = fig1_style_decomposition(4)
    td2 = tree_decomposition_from_json(tree_decomposition_to_json(td))
    assert validate_tree_decomposition(g, td2) == 3

    w, cd = exact_carving_width(TRIANGLE)
    cd2 = carving_from_json(carving_to_json(cd))
    assert validate_carving(TRIANGLE, cd2) == w

    bd = carving_to_branch(TRIANGLE, cd)
    bd2 = branch_from_json(branch_to_json(bd))
    assert validate_branch(TRIANGLE, bd2) == validate_branch(TRIANGLE, bd)


# -- restricted partitions --------------------------------------------------------------


def test_restricted_partition_small_tree_single_block():
    tree = random_binary_tree(4, seed=1)
    rp = restricted_partition(tree, len(tree))
    assert len(rp.blocks) == 1
    check_restricted_partition(tree, rp)


def test_restricted_partition_z_one_is_all_singletons():
    tree = random_binary_tree(6, seed=2)
    rp = restricted_partition(tree, 1)
    assert len(rp.blocks) == len(tree)
    check_restricted_partition(tree, rp)


@pytest.mark.parametrize("seed", range(6))
def test_restricted_partition_properties_random(seed):
    tree = random_binary_tree(40 + 7 * seed, seed=300 + seed)
    for z in (3, 8, 20):
        rp = restricted_partition(tree, z)
        check_restricted_partition(tree, rp)


def test_restricted_partition_block_count_500():
    tree = random_binary_tree(251, seed=12)  # 500 nodes
    n = len(tree)
    assert n == 500
    rp = restricted_partition(tree, 10)
    check_restricted_partition(tree, rp)
    assert len(rp.blocks) <= 6 * (-(-n // 10))


def test_restricted_partition_rejects_high_degree():
    with pytest.raises(ValueError):
        restricted_partition({0: {1, 2, 3, 4}, 1: {0}, 2: {0}, 3: {0}, 4: {0}}, 2)
