"""Exact evaluation of diameter-constrained reliability.

Edges with p = 1 are fixed up and edges with p = 0 fixed down before any
enumeration, so the cost of every routine here scales with the number of
random edges rather than with the edge count.
"""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from dcrel.errors import CapExceededError, InstanceError
from dcrel.graph import Graph, NetworkInstance, connected_within

__all__ = [
    "DEFAULT_CAP",
    "PathsetCount",
    "count_diameter_bounded_subgraphs",
    "count_min_pathsets",
    "reliability_enumerate",
    "reliability_factoring",
    "thread_count",
]

DEFAULT_CAP = 30


def thread_count() -> int:
    """Worker bound taken from ``DCR_THREADS`` (default 1)."""
    try:
        return max(1, int(os.environ.get("DCR_THREADS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class PathsetCount:
    """Smallest pathset cardinality and the number of pathsets attaining it.

    ``min_cardinality`` is None (and ``count`` 0) when no pathset exists.
    """

    min_cardinality: int | None
    count: int


class _Space:
    """Precomputed view of an instance restricted to its random edges."""

    def __init__(self, instance: NetworkInstance):
        self.instance = instance
        self.graph = instance.graph
        self.random = instance.random_edges
        self.fixed = instance.perfect_mask
        self.terminals = sorted(instance.terminals)
        self.tmask = instance.terminal_mask
        self.d = instance.diameter

    def phi_bits(self, bits: int) -> bool:
        return connected_within(self.graph.adjacency(bits), self.terminals, self.tmask, self.d)

    def expand(self, local: int) -> int:
        """Full edge word for a word over the random edges."""
        bits = self.fixed
        for j, i in enumerate(self.random):
            if local >> j & 1:
                bits |= 1 << i
        return bits


def _check_cap(space: _Space, cap: int | None):
    if cap is not None and len(space.random) > cap:
        raise CapExceededError("random edge set", len(space.random), cap)


def _half_tables(space: _Space, edges: list[int], base_adj: list[int], numerators, denom):
    """Adjacency and weight tables for every up/down assignment of ``edges``."""
    graph_edges = space.graph.edges
    adj_table = [base_adj]
    weight_table = [1]
    for j, i in enumerate(edges):
        u, v = graph_edges[i]
        up, down = numerators[i], denom - numerators[i]
        new_adj = []
        for adj in adj_table:
            adj = list(adj)
            adj[u] |= 1 << v
            adj[v] |= 1 << u
            new_adj.append(adj)
        # bit j set means edge up; table index order matches
        weight_table = [w * down for w in weight_table] + [w * up for w in weight_table]
        adj_table = adj_table + new_adj
    return adj_table, weight_table


def reliability_enumerate(instance: NetworkInstance, cap: int | None = DEFAULT_CAP,
                          threads: int | None = None) -> Fraction:
    """Sum the probabilities of all d-K-connected states.

    The random edges are split in two halves whose adjacency contributions and
    weights are tabulated once; every state is then the join of one entry from
    each table. Work over the high half is partitioned across ``threads``
    workers; the integer sum does not depend on the partition.
    """
    space = _Space(instance)
    _check_cap(space, cap)
    random = list(space.random)
    n = space.graph.node_count
    denom = reduce(math.lcm, (instance.probabilities[i].denominator for i in random), 1)
    numerators = {i: instance.probabilities[i].numerator * (denom // instance.probabilities[i].denominator)
                  for i in random}
    half = len(random) // 2
    low_edges, high_edges = random[:half], random[half:]
    low_adj, low_w = _half_tables(space, low_edges, [0] * n, numerators, denom)
    high_adj, high_w = _half_tables(space, high_edges, space.graph.adjacency(space.fixed),
                                    numerators, denom)
    terminals, tmask, d = space.terminals, space.tmask, space.d

    def block(high_range: range) -> int:
        total = 0
        for hm in high_range:
            hadj = high_adj[hm]
            partial = 0
            for lm, ladj in enumerate(low_adj):
                adj = [a | b for a, b in zip(hadj, ladj)]
                if connected_within(adj, terminals, tmask, d):
                    partial += low_w[lm]
            total += partial * high_w[hm]
        return total

    size = len(high_adj)
    workers = min(threads or thread_count(), size)
    if workers <= 1:
        total = block(range(size))
    else:
        step = -(-size // workers)
        ranges = [range(lo, min(lo + step, size)) for lo in range(0, size, step)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            total = sum(pool.map(block, ranges))
    return Fraction(total, denom ** len(random))


def _distances(adj, source: int, depth: int) -> dict[int, int]:
    dist = {source: 0}
    frontier = [source]
    for level in range(1, depth + 1):
        nxt = []
        for u in frontier:
            nbrs = adj[u]
            while nbrs:
                low = nbrs & -nbrs
                v = low.bit_length() - 1
                nbrs ^= low
                if v not in dist:
                    dist[v] = level
                    nxt.append(v)
        if not nxt:
            break
        frontier = nxt
    return dist


def _branch_edge(space: _Space, optimistic: int, undecided: int) -> int:
    """Undecided edge touching the farthest terminal pair, lowest index first."""
    adj = space.graph.adjacency(optimistic)
    worst, pair = -1, None
    for idx, u in enumerate(space.terminals):
        dist = _distances(adj, u, space.d)
        for v in space.terminals[idx + 1:]:
            if dist.get(v, space.d + 1) > worst:
                worst, pair = dist.get(v, space.d + 1), (u, v)
    fallback = None
    for i, (a, b) in enumerate(space.graph.edges):
        if undecided >> i & 1:
            if fallback is None:
                fallback = i
            if pair and (a in pair or b in pair):
                return i
    return fallback


def reliability_factoring(instance: NetworkInstance) -> Fraction:
    """Exact reliability by recursive conditioning on single edges.

    A branch returns 0 as soon as switching every undecided edge on still
    leaves some terminal pair too far apart, and 1 as soon as the decided-up
    edges alone already satisfy the bound.
    """
    space = _Space(instance)
    probs = instance.probabilities
    undecided0 = 0
    for i in space.random:
        undecided0 |= 1 << i

    def solve(up: int, undecided: int) -> Fraction:
        if not space.phi_bits(up | undecided):
            return Fraction(0)
        if space.phi_bits(up):
            return Fraction(1)
        e = _branch_edge(space, up | undecided, undecided)
        rest = undecided & ~(1 << e)
        p = probs[e]
        return p * solve(up | (1 << e), rest) + (1 - p) * solve(up, rest)

    return solve(space.fixed, undecided0)


def count_min_pathsets(instance: NetworkInstance, cap: int | None = DEFAULT_CAP) -> PathsetCount:
    """Count the pathsets of minimum cardinality among the possible states.

    Only states with every p = 1 edge up and every p = 0 edge down are
    considered; cardinality counts all operating edges, perfect ones included.
    Random-edge subsets are scanned by increasing size so the scan stops at
    the first level containing a pathset.
    """
    space = _Space(instance)
    _check_cap(space, cap)
    fixed_count = bin(space.fixed).count("1")
    if not space.phi_bits(space.expand((1 << len(space.random)) - 1)):
        return PathsetCount(None, 0)
    for r in range(len(space.random) + 1):
        count = 0
        for chosen in itertools.combinations(space.random, r):
            bits = space.fixed
            for i in chosen:
                bits |= 1 << i
            if space.phi_bits(bits):
                count += 1
        if count:
            return PathsetCount(fixed_count + r, count)
    raise AssertionError("full state is a pathset but no level produced one")


def count_diameter_bounded_subgraphs(graph: Graph, d: int, cap: int | None = DEFAULT_CAP,
                                     threads: int | None = None) -> int:
    """Number of spanning subgraphs of ``graph`` with diameter at most ``d``.

    Every subgraph is equally likely at p = 1/2, so this is 2^m times the
    all-terminal reliability at p = 1/2.
    """
    if graph.node_count < 2:
        raise InstanceError("need at least two nodes")
    instance = NetworkInstance.uniform(graph, None, d, Fraction(1, 2))
    value = reliability_enumerate(instance, cap=cap, threads=threads) * 2 ** graph.edge_count
    assert value.denominator == 1, f"subgraph count {value} is not an integer"
    return value.numerator

