"""Tree, branch and carving decompositions: validators, exact solvers,
and conversions between the decomposition kinds.

The validators are the single source of truth for every width claim in
this package; constructions never self-report a width without running
the relevant validator.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import permutations

from .arrangements import SizeLimitError


class InvalidDecompositionError(ValueError):
    """A decomposition violates one of its defining axioms."""

    def __init__(self, axiom, witness, message):
        super().__init__(message)
        self.axiom = axiom
        self.witness = witness


def _limit(name, default, override):
    if override is not None:
        return override
    env = os.environ.get(f"PLANWIDTH_LIMIT_{name.upper()}")
    if env is not None:
        return int(env)
    return default


# -- tree decompositions --------------------------------------------------


@dataclass
class TreeDecomposition:
    """Bags indexed by tree nodes; ``tree`` is an adjacency map."""

    tree: dict  # node -> set of nodes
    bags: dict  # node -> frozenset of graph vertices

    def width(self):
        return max(len(b) for b in self.bags.values()) - 1


def _check_is_tree(adj):
    nodes = list(adj)
    if not nodes:
        return False
    edge_count = sum(len(nb) for nb in adj.values()) // 2
    if edge_count != len(nodes) - 1:
        return False
    seen = {nodes[0]}
    stack = [nodes[0]]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(nodes)


def validate_tree_decomposition(g, td):
    """Check the three tree-decomposition axioms; return the width.

    Raises InvalidDecompositionError naming the failing axiom with a
    witness (a vertex whose bags are disconnected, an uncovered edge, or
    an uncovered vertex).
    """
    if not _check_is_tree(td.tree):
        raise InvalidDecompositionError("tree", None, "bag graph is not a tree")
    if set(td.bags) != set(td.tree):
        raise InvalidDecompositionError("tree", None, "bags and tree nodes differ")
    placement = {v: [] for v in range(g.n)}
    for node, bag in td.bags.items():
        for v in bag:
            if not 0 <= v < g.n:
                raise InvalidDecompositionError(
                    "vertex_coverage", v, f"bag {node} mentions unknown vertex {v}"
                )
            placement[v].append(node)
    for v in range(g.n):
        nodes = placement[v]
        if not nodes:
            raise InvalidDecompositionError(
                "vertex_coverage", v, f"vertex {v} is in no bag"
            )
        # the bags containing v must induce a connected subtree
        member = set(nodes)
        seen = {nodes[0]}
        stack = [nodes[0]]
        while stack:
            x = stack.pop()
            for y in td.tree[x]:
                if y in member and y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != len(member):
            raise InvalidDecompositionError(
                "connectivity", v, f"bags containing vertex {v} are disconnected"
            )
    bag_sets = list(td.bags.values())
    for u, v in g.edges:
        if not any(u in b and v in b for b in bag_sets):
            raise InvalidDecompositionError(
                "edge_coverage", (u, v), f"edge ({u}, {v}) is covered by no bag"
            )
    return td.width()


# -- exact treewidth ------------------------------------------------------


def _neighbors_through(masks, v, eliminated):
    """Vertices outside ``eliminated`` reachable from v via eliminated vertices."""
    reach = masks[v]
    frontier = reach & eliminated
    seen = frontier
    while frontier:
        u = (frontier & -frontier).bit_length() - 1
        frontier &= frontier - 1
        new = masks[u] & ~reach
        reach |= new
        add = new & eliminated & ~seen
        seen |= add
        frontier |= add
    return reach & ~eliminated & ~(1 << v)


def _greedy_fill_order(g):
    """Min-fill elimination order; gives an upper bound on the treewidth."""
    adj = {v: set(g.neighbors(v)) for v in range(g.n)}
    order = []
    width = 0
    while adj:
        best_v, best_fill = None, None
        for v in sorted(adj):
            nb = adj[v]
            fill = sum(
                1
                for i, a in enumerate(sorted(nb))
                for b in sorted(nb)[i + 1 :]
                if b not in adj[a]
            )
            if best_fill is None or fill < best_fill:
                best_v, best_fill = v, fill
        nb = adj.pop(best_v)
        width = max(width, len(nb))
        for a in nb:
            adj[a].discard(best_v)
            adj[a].update(nb - {a})
        order.append(best_v)
    return width, order


def exact_treewidth(g, limit=None):
    """Optimal treewidth plus a witness decomposition.

    Memoized search over eliminated-vertex subsets: the cost of a state
    is the minimum over the next eliminated vertex v of
    max(|reachable-through| of v, cost of the extended state).  Branches
    whose immediate degree already matches the best known value for the
    state are skipped, which keeps the values exact.
    """
    lim = _limit("treewidth", 24, limit)
    if g.n > lim:
        raise SizeLimitError(f"n={g.n} exceeds treewidth solver limit {lim}")
    if g.n == 0:
        raise InvalidDecompositionError("tree", None, "empty graph has no decomposition")
    masks = [0] * g.n
    for u, v in g.edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    n = g.n
    full = (1 << n) - 1
    ub, _ = _greedy_fill_order(g)
    memo = {}

    def solve(elim):
        if elim == full:
            return 0
        hit = memo.get(elim)
        if hit is not None:
            return hit
        cands = []
        for v in range(n):
            if elim & (1 << v):
                continue
            q = bin(_neighbors_through(masks, v, elim)).count("1")
            cands.append((q, v))
        cands.sort()
        # a vertex of fill-degree <= 1 is always safe to eliminate first
        if cands[0][0] <= 1:
            q, v = cands[0]
            val = max(q, solve(elim | (1 << v)))
            memo[elim] = val
            return val
        best = None
        for q, v in cands:
            if best is not None and q >= best:
                break
            val = max(q, solve(elim | (1 << v)))
            if best is None or val < best:
                best = val
        memo[elim] = best
        return best

    width = solve(0)

    # reconstruct a lexicographically smallest optimal elimination order
    order = []
    elim = 0
    while elim != full:
        for v in range(n):
            if elim & (1 << v):
                continue
            q = bin(_neighbors_through(masks, v, elim)).count("1")
            if max(q, solve(elim | (1 << v))) <= width:
                order.append(v)
                elim |= 1 << v
                break
    td = decomposition_from_elimination_order(g, order)
    return width, td


def decomposition_from_elimination_order(g, order):
    """Standard tree decomposition built by eliminating vertices in order."""
    masks = [0] * g.n
    for u, v in g.edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    n = g.n
    pos = {v: i for i, v in enumerate(order)}
    bags = {}
    elim = 0
    for i, v in enumerate(order):
        q = _neighbors_through(masks, v, elim)
        bag = {v}
        t = q
        while t:
            u = (t & -t).bit_length() - 1
            t &= t - 1
            bag.add(u)
        bags[i] = frozenset(bag)
        elim |= 1 << v
    tree = {i: set() for i in range(n)}
    for i, v in enumerate(order):
        later = [pos[u] for u in bags[i] if u != v and pos[u] > i]
        parent = min(later) if later else (i + 1 if i + 1 < n else None)
        if parent is not None:
            tree[i].add(parent)
            tree[parent].add(i)
    return TreeDecomposition(tree, bags)


def brute_force_treewidth(g):
    """Minimum width over all elimination orders; oracle for small n."""
    masks = [0] * g.n
    for u, v in g.edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    best = g.n
    for order in permutations(range(g.n)):
        elim = 0
        worst = 0
        for v in order:
            q = bin(_neighbors_through(masks, v, elim)).count("1")
            worst = max(worst, q)
            if worst >= best:
                break
            elim |= 1 << v
        best = min(best, worst)
    return best


def elimination_width_at_most(g, k):
    """Does some elimination order keep every elimination degree <= k?

    Complete depth-first search over orders, cutting branches as soon
    as a vertex would exceed k and memoizing failed eliminated-sets.
    An independent decision oracle for treewidth bounds on instances
    too large for the factorial search.
    """
    masks = [0] * g.n
    for u, v in g.edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    full = (1 << g.n) - 1
    dead = set()

    def search(elim):
        if elim == full:
            return True
        if elim in dead:
            return False
        for v in range(g.n):
            if elim & (1 << v):
                continue
            q = bin(_neighbors_through(masks, v, elim)).count("1")
            if q <= k and search(elim | (1 << v)):
                return True
        dead.add(elim)
        return False

    return search(0)


# -- tree-depth -----------------------------------------------------------


@dataclass
class AncestorForest:
    """Rooted forest in which every graph edge joins an ancestor-descendant pair.

    Depth is counted in edges: a single-node tree has depth 0.
    """

    parent: dict  # vertex -> parent vertex or None for roots

    def depth(self):
        memo = {}

        def d(v):
            if v not in memo:
                p = self.parent[v]
                memo[v] = 0 if p is None else d(p) + 1
            return memo[v]

        return max((d(v) for v in self.parent), default=0)

    def is_ancestor(self, a, v):
        while v is not None:
            if v == a:
                return True
            v = self.parent[v]
        return False


def exact_treedepth(g, limit=None):
    """Minimum over forests of the maximum root-to-leaf edge count.

    Recursion: a connected graph needs one root plus an optimal forest
    of the rest; disconnected parts are independent.  Memoized on vertex
    subsets.
    """
    lim = _limit("treedepth", 15, limit)
    if g.n > lim:
        raise SizeLimitError(f"n={g.n} exceeds tree-depth solver limit {lim}")
    masks = [0] * g.n
    for u, v in g.edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    memo = {}

    def comps_of(mask):
        out = []
        left = mask
        while left:
            start = left & -left
            seen = start
            stack = [start.bit_length() - 1]
            while stack:
                v = stack.pop()
                nxt = masks[v] & mask & ~seen
                seen |= nxt
                while nxt:
                    u = (nxt & -nxt).bit_length() - 1
                    nxt &= nxt - 1
                    stack.append(u)
            out.append(seen)
            left &= ~seen
        return out

    def depth_of(mask):
        if mask == 0:
            return -1  # empty forest: one less than a single node
        hit = memo.get(mask)
        if hit is not None:
            return hit
        parts = comps_of(mask)
        if len(parts) > 1:
            val = max(depth_of(p) for p in parts)
        elif mask & (mask - 1) == 0:
            val = 0
        else:
            best = None
            t = mask
            while t:
                v = (t & -t).bit_length() - 1
                t &= t - 1
                cand = 1 + depth_of(mask & ~(1 << v))
                if best is None or cand < best:
                    best = cand
            val = best
        memo[mask] = val
        return val

    full = (1 << g.n) - 1
    if g.n == 0:
        return 0, AncestorForest({})
    depth = depth_of(full)

    parent = {}

    def build(mask, above):
        for part in comps_of(mask):
            target = depth_of(part)
            if part & (part - 1) == 0:
                v = part.bit_length() - 1
                parent[v] = above
                continue
            t = part
            while t:
                v = (t & -t).bit_length() - 1
                t &= t - 1
                if 1 + depth_of(part & ~(1 << v)) == target:
                    parent[v] = above
                    build(part & ~(1 << v), v)
                    break

    build(full, None)
    return depth, AncestorForest(parent)


# -- branch / carving decompositions ---------------------------------------


@dataclass
class CarvingDecomposition:
    """Unrooted tree, internal degree exactly 3, leaves labeled by vertices."""

    tree: dict  # node -> set of nodes
    leaf_vertex: dict  # leaf node -> graph vertex

    def leaves(self):
        return [x for x, nb in self.tree.items() if len(nb) <= 1]


@dataclass
class BranchDecomposition:
    """Unrooted tree, internal degree exactly 3, leaves labeled by edges."""

    tree: dict
    leaf_edge: dict  # leaf node -> graph edge id

    def leaves(self):
        return [x for x, nb in self.tree.items() if len(nb) <= 1]


def _check_leaf_tree(tree, leaf_map, label_count, what):
    if not _check_is_tree(tree):
        raise InvalidDecompositionError("tree", None, f"{what}: not a tree")
    leaves = [x for x, nb in tree.items() if len(nb) <= 1]
    for x, nb in tree.items():
        if len(nb) > 1 and len(nb) != 3:
            raise InvalidDecompositionError(
                "degree", x, f"{what}: internal node {x} has degree {len(nb)}"
            )
    if set(leaf_map) != set(leaves):
        raise InvalidDecompositionError(
            "bijection", None, f"{what}: leaf labels do not match the leaves"
        )
    labels = sorted(leaf_map.values())
    if labels != list(range(label_count)):
        raise InvalidDecompositionError(
            "bijection", None, f"{what}: labels are not a bijection onto 0..{label_count - 1}"
        )


def _side_sets(tree):
    """For each tree edge (x, y) yield the set of nodes on the x side."""
    nodes = list(tree)
    for x in nodes:
        for y in tree[x]:
            if x < y:
                side = {x}
                stack = [x]
                while stack:
                    a = stack.pop()
                    for b in tree[a]:
                        if b == y and a == x:
                            continue
                        if b not in side and not (a == x and b == y):
                            side.add(b)
                            stack.append(b)
                yield (x, y), side


def validate_carving(g, cd):
    """Max over tree edges of the cut between the two leaf-labeled vertex sets."""
    _check_leaf_tree(cd.tree, cd.leaf_vertex, g.n, "carving decomposition")
    if len(cd.tree) == 1:
        return 0
    width = 0
    for (x, y), side in _side_sets(cd.tree):
        vs = {cd.leaf_vertex[t] for t in side if t in cd.leaf_vertex}
        cut = sum(1 for u, v in g.edges if (u in vs) != (v in vs))
        width = max(width, cut)
    return width


def validate_branch(g, bd):
    """Max over tree edges of the number of vertices shared by the two sides."""
    _check_leaf_tree(bd.tree, bd.leaf_edge, g.m, "branch decomposition")
    if len(bd.tree) == 1:
        return 0
    width = 0
    for (x, y), side in _side_sets(bd.tree):
        es = {bd.leaf_edge[t] for t in side if t in bd.leaf_edge}
        v1 = set()
        v2 = set()
        for e in range(g.m):
            u, v = g.edges[e]
            if e in es:
                v1.update((u, v))
            else:
                v2.update((u, v))
        width = max(width, len(v1 & v2))
    return width


# -- exact carving width ----------------------------------------------------


def exact_carving_width(g, limit=None):
    """Exhaustive minimum over all (2n-5)!! unrooted binary leaf trees."""
    lim = _limit("carving", 10, limit)
    if g.n > lim:
        raise SizeLimitError(f"n={g.n} exceeds carving solver limit {lim}")
    n = g.n
    if n < 2:
        raise InvalidDecompositionError("tree", None, "carving needs at least 2 vertices")
    degs = [g.degree(v) for v in range(n)]
    masks = [0] * n
    for u, v in g.edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    cut = [0] * (1 << n)
    for s in range(1, 1 << n):
        v = (s & -s).bit_length() - 1
        rest = s & (s - 1)
        cut[s] = cut[rest] + degs[v] - 2 * bin(masks[v] & rest).count("1")

    if n == 2:
        cd = CarvingDecomposition({0: {1}, 1: {0}}, {0: 0, 1: 1})
        return validate_carving(g, cd), cd

    best = [None, None]  # width, edge list

    # nodes: leaves are 0..n-1, internal nodes n, n+1, ...
    edges = [(0, n), (1, n), (2, n)]

    def evaluate():
        adj = {}
        for a, b in edges:
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
        # leaf masks below each directed edge via one DFS from leaf 0
        width = 0
        seen_mask = {}

        def below(a, parent):
            m = 1 << a if a < n else 0
            for b in adj[a]:
                if b != parent:
                    m |= below(b, a)
            seen_mask[(a, parent)] = m
            return m

        below(adj[0][0], 0)
        for key, m in seen_mask.items():
            width = max(width, cut[m])
        return width

    def insert(k):
        if k == n:
            w = evaluate()
            if best[0] is None or w < best[0]:
                best[0] = w
                best[1] = list(edges)
            return
        new_internal = n + k - 2
        for i in range(len(edges)):
            a, b = edges[i]
            edges[i] = (a, new_internal)
            edges.append((new_internal, b))
            edges.append((new_internal, k))
            insert(k + 1)
            edges.pop()
            edges.pop()
            edges[i] = (a, b)

    insert(3)
    tree = {}
    for a, b in best[1]:
        tree.setdefault(a, set()).add(b)
        tree.setdefault(b, set()).add(a)
    cd = CarvingDecomposition(tree, {v: v for v in range(n)})
    return best[0], cd


# -- caterpillars and conversions -------------------------------------------


def caterpillar_carving_from_arrangement(g, a):
    """Carving tree shaped like a caterpillar whose leaf order follows ``a``.

    Spine cuts are exactly the interior prefix cuts of the arrangement,
    so the width is at most max(edge separation, max degree).
    """
    n = g.n
    if n < 2:
        raise InvalidDecompositionError("tree", None, "caterpillar needs n >= 2")
    if a.n != n:
        raise InvalidDecompositionError("bijection", None, "arrangement size mismatch")
    order = a.order
    if n == 2:
        return CarvingDecomposition(
            {0: {1}, 1: {0}}, {0: order[0], 1: order[1]}
        )
    if n == 3:
        tree = {0: {3}, 1: {3}, 2: {3}, 3: {0, 1, 2}}
        return CarvingDecomposition(tree, {i: order[i] for i in range(3)})
    # leaves 0..n-1 in arrangement order; spine nodes n..2n-5
    tree = {}
    spine = list(range(n, n + n - 2))

    def link(x, y):
        tree.setdefault(x, set()).add(y)
        tree.setdefault(y, set()).add(x)

    for s1, s2 in zip(spine, spine[1:]):
        link(s1, s2)
    link(0, spine[0])
    link(1, spine[0])
    for i in range(2, n - 2):
        link(i, spine[i - 1])
    link(n - 2, spine[-1])
    link(n - 1, spine[-1])
    return CarvingDecomposition(tree, {i: order[i] for i in range(n)})


def carving_to_branch(g, cd):
    """Replace each leaf (a vertex) with a subtree of its assigned edges.

    Each edge is assigned to exactly one endpoint: its lower-id endpoint,
    unless that endpoint so far carries nothing and the other already
    carries an edge.
    """
    if any(len(g.neighbors(v)) == 0 for v in range(g.n)):
        raise InvalidDecompositionError(
            "bijection", None, "isolated vertices cannot carry any edge"
        )
    validate_carving(g, cd)
    assigned = {v: [] for v in range(g.n)}
    for e, (u, v) in enumerate(g.edges):
        lo, hi = (u, v) if u < v else (v, u)
        if not assigned[lo] and assigned[hi]:
            assigned[hi].append(e)
        else:
            assigned[lo].append(e)
    next_node = max(cd.tree) + 1
    tree = {x: set(nb) for x, nb in cd.tree.items()}
    leaf_edge = {}

    def link(x, y):
        tree.setdefault(x, set()).add(y)
        tree.setdefault(y, set()).add(x)

    for leaf, v in cd.leaf_vertex.items():
        edges = assigned[v]
        if len(edges) == 0:
            (nb,) = tree[leaf]
            tree[nb].discard(leaf)
            del tree[leaf]
        elif len(edges) == 1:
            leaf_edge[leaf] = edges[0]
        else:
            # binary caterpillar over the assigned edges, hung at the leaf spot
            anchor = leaf
            for e in edges[:-2]:
                spine = next_node
                lf = next_node + 1
                next_node += 2
                link(anchor, spine)
                link(spine, lf)
                leaf_edge[lf] = e
                anchor = spine
            last = next_node
            lf1 = next_node + 1
            lf2 = next_node + 2
            next_node += 3
            link(anchor, last)
            link(last, lf1)
            link(last, lf2)
            leaf_edge[lf1] = edges[-2]
            leaf_edge[lf2] = edges[-1]
    _prune_leaf_tree(tree, set(leaf_edge))
    bd = BranchDecomposition(tree, leaf_edge)
    return bd


def branch_to_carving(g, bd):
    """Replace each leaf (an edge) with up to two vertex leaves.

    Each vertex is assigned to exactly one incident edge: the one with
    the smallest id.
    """
    validate_branch(g, bd)
    assigned = {e: [] for e in range(g.m)}
    for v in range(g.n):
        if not g.neighbors(v):
            raise InvalidDecompositionError(
                "bijection", None, "isolated vertices cannot be placed at any edge"
            )
        e = min(g.edge_id(v, w) for w in g.neighbors(v))
        assigned[e].append(v)
    next_node = max(bd.tree) + 1
    tree = {x: set(nb) for x, nb in bd.tree.items()}
    leaf_vertex = {}

    def link(x, y):
        tree.setdefault(x, set()).add(y)
        tree.setdefault(y, set()).add(x)

    for leaf, e in bd.leaf_edge.items():
        vs = assigned[e]
        if len(vs) == 0:
            (nb,) = tree[leaf]
            tree[nb].discard(leaf)
            del tree[leaf]
        elif len(vs) == 1:
            leaf_vertex[leaf] = vs[0]
        else:
            lf1, lf2 = next_node, next_node + 1
            next_node += 2
            link(leaf, lf1)
            link(leaf, lf2)
            leaf_vertex[lf1] = vs[0]
            leaf_vertex[lf2] = vs[1]
    _prune_leaf_tree(tree, set(leaf_vertex))
    cd = CarvingDecomposition(tree, leaf_vertex)
    return cd


def _prune_leaf_tree(tree, labeled):
    """Drop unlabeled leaves and contract unlabeled degree-2 nodes.

    Keeps the tree a valid leaf-labeled binary tree after leaf surgery.
    """
    changed = True
    while changed:
        changed = False
        for x in list(tree):
            if x in labeled:
                continue
            deg = len(tree[x])
            if deg == 0 and len(tree) > 1:
                del tree[x]
                changed = True
            elif deg == 1:
                (a,) = tree[x]
                tree[a].discard(x)
                del tree[x]
                changed = True
            elif deg == 2:
                a, b = tree[x]
                tree[a].discard(x)
                tree[b].discard(x)
                tree[a].add(b)
                tree[b].add(a)
                del tree[x]
                changed = True


# -- restricted partitions ---------------------------------------------------


@dataclass
class RestrictedPartition:
    """Partition of a binary tree's nodes into connected blocks of order z."""

    blocks: list  # list of frozensets of tree nodes
    z: int


def _block_boundary(tree, block):
    return sum(1 for x in block for y in tree[x] if y not in block)


def restricted_partition(tree, z):
    """Greedy maximal partition into connected blocks.

    Properties guaranteed: every block has at most z nodes; a block with
    more than two boundary edges is a single node; no two adjacent
    blocks can be merged without breaking the first two properties.
    """
    if z < 1:
        raise ValueError("z must be at least 1")
    for x, nb in tree.items():
        if len(nb) > 3:
            raise ValueError(f"node {x} has degree {len(nb)} > 3")
    if not _check_is_tree(tree):
        raise ValueError("input is not a tree")
    block_of = {x: i for i, x in enumerate(sorted(tree))}
    blocks = {i: {x} for x, i in block_of.items()}

    def boundary(i):
        return _block_boundary(tree, blocks[i])

    def mergeable(i, j):
        size = len(blocks[i]) + len(blocks[j])
        if size > z:
            return False
        bd = boundary(i) + boundary(j) - 2
        return bd <= 2 or size == 1

    changed = True
    while changed:
        changed = False
        for i in sorted(blocks, key=lambda i: min(blocks[i])):
            if i not in blocks:
                continue
            neighbors = sorted(
                {
                    block_of[y]
                    for x in blocks[i]
                    for y in tree[x]
                    if block_of[y] != i
                },
                key=lambda j: min(blocks[j]),
            )
            for j in neighbors:
                if mergeable(i, j):
                    blocks[i].update(blocks[j])
                    for x in blocks[j]:
                        block_of[x] = i
                    del blocks[j]
                    changed = True
                    break
    out = sorted((frozenset(b) for b in blocks.values()), key=min)
    return RestrictedPartition(out, z)


def check_restricted_partition(tree, rp):
    """Assert the three defining properties; raises ValueError on failure."""
    seen = set()
    for block in rp.blocks:
        if len(block) > rp.z:
            raise ValueError(f"block of size {len(block)} exceeds z={rp.z}")
        if _block_boundary(tree, block) > 2 and len(block) != 1:
            raise ValueError("multi-node block with more than two boundary edges")
        sub = {x: {y for y in tree[x] if y in block} for x in block}
        if not _check_is_tree(sub):
            raise ValueError("block is not connected")
        if seen & block:
            raise ValueError("blocks overlap")
        seen |= block
    if seen != set(tree):
        raise ValueError("blocks do not cover the tree")
    block_of = {}
    for i, block in enumerate(rp.blocks):
        for x in block:
            block_of[x] = i
    for i, block in enumerate(rp.blocks):
        for x in block:
            for y in tree[x]:
                j = block_of[y]
                if j == i:
                    continue
                merged = block | rp.blocks[j]
                bd = _block_boundary(tree, merged)
                if len(merged) <= rp.z and (bd <= 2 or len(merged) == 1):
                    raise ValueError(f"blocks {i} and {j} are still mergeable")
    return True


# -- serialization -------------------------------------------------------


def tree_decomposition_to_json(td):
    return {
        "tree": {str(x): sorted(nb) for x, nb in td.tree.items()},
        "bags": {str(x): sorted(b) for x, b in td.bags.items()},
    }


def tree_decomposition_from_json(obj):
    tree = {int(x): set(nb) for x, nb in obj["tree"].items()}
    bags = {int(x): frozenset(b) for x, b in obj["bags"].items()}
    return TreeDecomposition(tree, bags)


def carving_to_json(cd):
    return {
        "tree": {str(x): sorted(nb) for x, nb in cd.tree.items()},
        "leaf_vertex": {str(x): v for x, v in cd.leaf_vertex.items()},
    }


def carving_from_json(obj):
    return CarvingDecomposition(
        {int(x): set(nb) for x, nb in obj["tree"].items()},
        {int(x): v for x, v in obj["leaf_vertex"].items()},
    )


def branch_to_json(bd):
    return {
        "tree": {str(x): sorted(nb) for x, nb in bd.tree.items()},
        "leaf_edge": {str(x): e for x, e in bd.leaf_edge.items()},
    }


def branch_from_json(obj):
    return BranchDecomposition(
        {int(x): set(nb) for x, nb in obj["tree"].items()},
        {int(x): e for x, e in obj["leaf_edge"].items()},
    )
