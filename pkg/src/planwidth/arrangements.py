"""Linear arrangements and the width values they induce.

An arrangement is a permutation of the vertices.  Its prefix cuts give
the edge separation number (minimized: cutwidth), the vertex separation
number (minimized: pathwidth) and the span (minimized: bandwidth).

Exact minimizers: cutwidth and pathwidth use dynamic programming over
vertex subsets, since both costs depend on a prefix only through its
set.  Bandwidth is not prefix-decomposable, so it uses iterative
deepening search; trying target values upward and candidate vertices in
increasing id order makes the first solution found the lexicographically
smallest optimal arrangement.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .graphs import max_degree


class SizeLimitError(ValueError):
    """An exact solver was asked for an instance above its configured limit."""


class ArrangementError(ValueError):
    pass


DEFAULT_LIMITS = {"cutwidth": 20, "pathwidth": 20, "bandwidth": 16}


def _limit(param, override):
    if override is not None:
        return override
    env = os.environ.get(f"PLANWIDTH_LIMIT_{param.upper()}")
    if env is not None:
        return int(env)
    return DEFAULT_LIMITS[param]


@dataclass(frozen=True)
class LinearArrangement:
    order: tuple

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))
        if sorted(self.order) != list(range(len(self.order))):
            raise ArrangementError("order is not a permutation of 0..n-1")

    @property
    def n(self):
        return len(self.order)

    def position(self):
        """Inverse map: vertex -> index in the order."""
        return {v: i for i, v in enumerate(self.order)}


def _check_match(g, a):
    if a.n != g.n:
        raise ArrangementError(f"arrangement length {a.n} != vertex count {g.n}")


def edge_separation(g, a):
    """Max over the n-1 prefix cuts of the number of edges crossing the cut."""
    _check_match(g, a)
    pos = a.position()
    if g.n <= 1:
        return 0
    cuts = [0] * (g.n - 1)
    for u, v in g.edges:
        lo, hi = sorted((pos[u], pos[v]))
        for c in range(lo, hi):
            cuts[c] += 1
    return max(cuts, default=0)


def vertex_separation(g, a):
    """Max over prefix cuts of prefix vertices with a neighbor in the suffix."""
    _check_match(g, a)
    pos = a.position()
    best = 0
    for c in range(g.n - 1):
        count = 0
        for i in range(c + 1):
            v = a.order[i]
            if any(pos[w] > c for w in g.neighbors(v)):
                count += 1
        best = max(best, count)
    return best


def span(g, a):
    """Max over edges of the positional distance between the endpoints."""
    _check_match(g, a)
    pos = a.position()
    return max((abs(pos[u] - pos[v]) for u, v in g.edges), default=0)


# -- subset dynamic programs for cutwidth / pathwidth --------------------


def _adjacency_masks(g):
    masks = [0] * g.n
    for u, v in g.edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return masks


def _suffix_dp(g, cost_of_prefix):
    """g[S] = best achievable max cost over prefix cuts at S and beyond.

    cost_of_prefix(S) must give the cut cost of prefix set S.  Returns
    the dp table; the optimum is table[0].
    """
    n = g.n
    full = (1 << n) - 1
    table = [0] * (1 << n)
    # s | bit is numerically larger than s, so descending order sees supersets first
    for s in range(full - 1, -1, -1):
        best = None
        for v in range(n):
            bit = 1 << v
            if s & bit:
                continue
            cand = table[s | bit]
            if best is None or cand < best:
                best = cand
        cost = cost_of_prefix(s) if s != 0 else 0
        table[s] = max(cost, best)
    return table


def _lex_witness(g, table, cost_of_prefix):
    """Lexicographically smallest arrangement achieving table[0]."""
    n = g.n
    opt = table[0]
    order = []
    s = 0
    for _ in range(n):
        for v in range(n):
            bit = 1 << v
            if s & bit:
                continue
            if table[s | bit] <= opt:
                order.append(v)
                s |= bit
                break
    return LinearArrangement(order)


def exact_cutwidth(g, limit=None):
    """Minimum edge separation with a lexicographically smallest witness."""
    lim = _limit("cutwidth", limit)
    if g.n > lim:
        raise SizeLimitError(f"n={g.n} exceeds cutwidth solver limit {lim}")
    if g.n == 0:
        return 0, LinearArrangement(())
    masks = _adjacency_masks(g)
    degs = [g.degree(v) for v in range(g.n)]
    n = g.n
    cut = [0] * (1 << n)
    for s in range(1, 1 << n):
        v = (s & -s).bit_length() - 1
        rest = s & (s - 1)
        cut[s] = cut[rest] + degs[v] - 2 * bin(masks[v] & rest).count("1")
    table = _suffix_dp(g, cut.__getitem__)
    witness = _lex_witness(g, table, cut.__getitem__)
    return table[0], witness


def exact_pathwidth(g, limit=None):
    """Minimum vertex separation with a lexicographically smallest witness."""
    lim = _limit("pathwidth", limit)
    if g.n > lim:
        raise SizeLimitError(f"n={g.n} exceeds pathwidth solver limit {lim}")
    if g.n == 0:
        return 0, LinearArrangement(())
    masks = _adjacency_masks(g)
    n = g.n
    full = (1 << n) - 1

    def vsep(s):
        comp = full & ~s
        count = 0
        t = s
        while t:
            v = (t & -t).bit_length() - 1
            t &= t - 1
            if masks[v] & comp:
                count += 1
        return count

    table = _suffix_dp(g, vsep)
    witness = _lex_witness(g, table, vsep)
    return table[0], witness


# -- bandwidth: iterative deepening -------------------------------------


def exact_bandwidth(g, limit=None):
    """Minimum span with a lexicographically smallest witness."""
    lim = _limit("bandwidth", limit)
    if g.n > lim:
        raise SizeLimitError(f"n={g.n} exceeds bandwidth solver limit {lim}")
    n = g.n
    if n == 0:
        return 0, LinearArrangement(())
    if g.m == 0:
        return 0, LinearArrangement(range(n))
    # span >= ceil(d/2) around a max-degree vertex
    lower = (max_degree(g) + 1) // 2
    for k in range(max(lower, 1), n):
        order = _bandwidth_dfs(g, k)
        if order is not None:
            return k, LinearArrangement(order)
    return n - 1, LinearArrangement(range(n))


def _bandwidth_dfs(g, k):
    """First arrangement with span <= k in lexicographic DFS order."""
    n = g.n
    placed_pos = {}
    order = []

    def ok(v, idx):
        for w in g.neighbors(v):
            p = placed_pos.get(w)
            if p is not None and idx - p > k:
                return False
        # a placed vertex with an unplaced neighbor must still be reachable
        for w, p in placed_pos.items():
            if idx - p >= k and any(x not in placed_pos and x != v for x in g.neighbors(w)):
                return False
        return True

    def rec(idx):
        if idx == n:
            return True
        for v in range(n):
            if v in placed_pos:
                continue
            if ok(v, idx):
                placed_pos[v] = idx
                order.append(v)
                if rec(idx + 1):
                    return True
                del placed_pos[v]
                order.pop()
        return False

    return order if rec(0) else None


# -- path decompositions from arrangements -------------------------------


def arrangement_to_path_decomposition(g, a):
    """Path-shaped tree decomposition whose width equals the vertex separation.

    Bag i holds a.order[i] together with every earlier vertex that still
    has a neighbor at position i or later.
    """
    from .decompositions import TreeDecomposition

    _check_match(g, a)
    pos = a.position()
    bags = {}
    for i, v in enumerate(a.order):
        bag = {v}
        for j in range(i):
            u = a.order[j]
            if any(pos[w] >= i for w in g.neighbors(u)):
                bag.add(u)
        bags[i] = frozenset(bag)
    tree = {i: set() for i in range(g.n)}
    for i in range(g.n - 1):
        tree[i].add(i + 1)
        tree[i + 1].add(i)
    return TreeDecomposition(tree, bags)
