"""Planarization strategies for graphs of bounded width, with exact
small-instance solvers for seven width parameters."""

from .graphs import (
    Graph,
    GraphError,
    ParseError,
    components,
    densest_component,
    density,
    gen_circulant,
    gen_complete_bipartite,
    gen_disjoint_cliques,
    max_degree,
    parse_graph,
    serialize_graph,
)
from .arrangements import (
    LinearArrangement,
    SizeLimitError,
    edge_separation,
    exact_bandwidth,
    exact_cutwidth,
    exact_pathwidth,
    span,
    vertex_separation,
)
from .drawing import (
    Drawing,
    Planarization,
    check_general_position,
    crossing_graph,
    crossings,
    export_svg,
    planarize_drawing,
)
from .decompositions import (
    BranchDecomposition,
    CarvingDecomposition,
    TreeDecomposition,
    branch_to_carving,
    carving_to_branch,
    caterpillar_carving_from_arrangement,
    exact_carving_width,
    exact_treedepth,
    exact_treewidth,
    restricted_partition,
    validate_branch,
    validate_carving,
    validate_tree_decomposition,
)
from .planarizers import (
    PlanarizationReport,
    carving_guided,
    clustered_carving,
    convex_lift,
    cr_pair_k3n,
    zarankiewicz_k3n,
)

__version__ = "0.1.0"
