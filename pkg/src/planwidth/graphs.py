"""Simple undirected graphs with crossing-dummy provenance.

Vertices are dense integers 0..n-1.  A vertex is either an original
vertex of the input graph or a dummy introduced by a planarization; in
the latter case the graph records which pair of original edges the
dummy subdivides, so planarizations are self-describing.
"""

from __future__ import annotations

import json
from fractions import Fraction
from itertools import combinations


class GraphError(ValueError):
    """Base class for graph construction / query errors."""


class ParseError(GraphError):
    """Base class for edge-list parse errors."""


class MalformedLineError(ParseError):
    pass


class EndpointRangeError(ParseError):
    pass


class SelfLoopError(ParseError):
    pass


class DuplicateEdgeError(ParseError):
    pass


class Graph:
    """Immutable simple undirected graph.

    ``edges`` is a sorted tuple of sorted vertex pairs; the index of a
    pair in this tuple is its edge id, used by drawings, crossing
    graphs and dummy provenance.  ``dummy_of`` maps dummy vertices to
    the pair of edge ids whose crossing they replace; vertices absent
    from the map are original.
    """

    __slots__ = ("n", "edges", "dummy_of", "_adj", "_edge_index")

    def __init__(self, n, edges, dummy_of=None):
        if n < 0:
            raise GraphError("vertex count must be nonnegative")
        seen = set()
        norm = []
        for u, v in edges:
            if u == v:
                raise SelfLoopError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise EndpointRangeError(f"edge ({u}, {v}) outside [0, {n})")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise DuplicateEdgeError(f"duplicate edge {e}")
            seen.add(e)
            norm.append(e)
        self.n = n
        self.edges = tuple(sorted(norm))
        dummy_of = dict(dummy_of or {})
        for d, pair in dummy_of.items():
            if not 0 <= d < n:
                raise GraphError(f"dummy vertex {d} out of range")
            a, b = pair
            if a == b:
                raise GraphError(f"dummy {d} must reference two distinct edges")
        self.dummy_of = dummy_of
        adj = [[] for _ in range(n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        self._adj = tuple(tuple(sorted(nb)) for nb in adj)
        self._edge_index = {e: i for i, e in enumerate(self.edges)}

    # -- basic queries -------------------------------------------------

    @property
    def m(self):
        return len(self.edges)

    def neighbors(self, v):
        return self._adj[v]

    def degree(self, v):
        return len(self._adj[v])

    def edge_id(self, u, v):
        return self._edge_index[(u, v) if u < v else (v, u)]

    def has_edge(self, u, v):
        return ((u, v) if u < v else (v, u)) in self._edge_index

    def is_dummy(self, v):
        return v in self.dummy_of

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and self.edges == other.edges
            and self.dummy_of == other.dummy_of
        )

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


# -- parsing / serialization ------------------------------------------


def parse_graph(text):
    """Parse an edge-list document: a header line ``n m`` followed by
    m lines ``u v``.  All vertices are original."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise MalformedLineError("empty document")
    header = lines[0].split()
    if len(header) != 2:
        raise MalformedLineError(f"bad header line: {lines[0]!r}")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise MalformedLineError(f"bad header line: {lines[0]!r}") from None
    if n < 0 or m < 0:
        raise MalformedLineError("negative counts in header")
    if len(lines) - 1 != m:
        raise MalformedLineError(f"header promises {m} edges, found {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise MalformedLineError(f"bad edge line: {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise MalformedLineError(f"bad edge line: {ln!r}") from None
        edges.append((u, v))
    return Graph(n, edges)


def serialize_graph(g):
    """Deterministic edge-list text; inverse of parse_graph up to vertex order."""
    out = [f"{g.n} {g.m}"]
    out.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(out) + "\n"


def graph_to_json(g):
    kinds = {}
    for v in range(g.n):
        if v in g.dummy_of:
            kinds[str(v)] = list(g.dummy_of[v])
        else:
            kinds[str(v)] = "original"
    return {"n": g.n, "edges": [list(e) for e in g.edges], "kinds": kinds}


def graph_from_json(obj):
    dummy_of = {}
    for k, kind in obj.get("kinds", {}).items():
        if kind != "original":
            dummy_of[int(k)] = (kind[0], kind[1])
    return Graph(obj["n"], [tuple(e) for e in obj["edges"]], dummy_of)


def graph_to_json_text(g):
    return json.dumps(graph_to_json(g), sort_keys=True)


# -- generators --------------------------------------------------------


def gen_complete_bipartite(a, b):
    """K_{a,b} with side-A vertices 0..a-1 and side-B vertices a..a+b-1."""
    if a < 1 or b < 1:
        raise GraphError("both side sizes must be positive")
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def gen_disjoint_cliques(k, s):
    """k disjoint copies of the complete graph on s vertices."""
    if k < 1 or s < 1:
        raise GraphError("clique count and size must be positive")
    edges = []
    for c in range(k):
        base = c * s
        edges.extend((base + i, base + j) for i, j in combinations(range(s), 2))
    return Graph(k * s, edges)


def gen_circulant(n, offsets):
    """Circulant graph: vertex i adjacent to (i +- o) mod n for each offset."""
    if n < 3:
        raise GraphError("circulant needs n >= 3")
    offs = sorted(set(offsets))
    for o in offs:
        if not 1 <= o <= n // 2:
            raise GraphError(f"offset {o} outside [1, {n // 2}]")
    edges = set()
    for i in range(n):
        for o in offs:
            j = (i + o) % n
            if i != j:
                edges.add((min(i, j), max(i, j)))
    return Graph(n, sorted(edges))


def gen_path(n):
    if n < 1:
        raise GraphError("path needs n >= 1")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def gen_cycle(n):
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def gen_star(n):
    """Star with center 0 and n leaves."""
    if n < 1:
        raise GraphError("star needs at least one leaf")
    return Graph(n + 1, [(0, i) for i in range(1, n + 1)])


def gen_random(n, m, seed):
    """Deterministic G(n, m): sample m distinct non-loop pairs with a fixed seed."""
    import random

    if m > n * (n - 1) // 2:
        raise GraphError("too many edges requested")
    rng = random.Random(seed)
    pairs = list(combinations(range(n), 2))
    rng.shuffle(pairs)
    return Graph(n, pairs[:m])


# -- elementary statistics ---------------------------------------------


def components(g):
    """Connected components as sorted vertex lists, ordered by smallest member."""
    seen = [False] * g.n
    comps = []
    for start in range(g.n):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in g.neighbors(v):
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def max_degree(g):
    return max((g.degree(v) for v in range(g.n)), default=0)


def density(g):
    """Edge density m / C(n, 2) as an exact rational."""
    if g.n < 2:
        raise GraphError("density needs at least two vertices")
    return Fraction(g.m, g.n * (g.n - 1) // 2)


def densest_component(g):
    """A connected component maximizing edges/vertices.

    The returned ratio is at least m/n for the whole graph, because the
    global ratio is a convex combination of the per-component ones.
    Ties break toward the component with the smallest minimum vertex.
    """
    if g.m == 0:
        raise GraphError("densest_component needs at least one edge")
    best = None
    best_ratio = None
    for comp in components(g):
        members = set(comp)
        m_i = sum(1 for u, v in g.edges if u in members)
        ratio = Fraction(m_i, len(comp))
        if best_ratio is None or ratio > best_ratio:
            best, best_ratio = comp, ratio
    return best


def induced_subgraph(g, vertices):
    """Induced subgraph on the given vertices, relabeled 0..k-1 in sorted order.

    Returns (subgraph, mapping old vertex -> new vertex).
    """
    order = sorted(vertices)
    remap = {v: i for i, v in enumerate(order)}
    edges = [
        (remap[u], remap[v]) for u, v in g.edges if u in remap and v in remap
    ]
    return Graph(len(order), edges), remap
