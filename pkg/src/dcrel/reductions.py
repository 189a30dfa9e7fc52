"""Hardness gadgets built from bipartite or general graphs, and their identity checks.

Three constructions are provided:

* :func:`build_cp_gadget` turns a bipartite graph (A, B, E) into a two-terminal
  network. A path s, s_1..s_{d-3} leads to the last path node, which is joined
  to every node of A. Every node of B is joined to a sink t. Only these
  attachment links are random, with p = 1/2. Whenever every attachment link of
  a vertex cover fails, no s-t route of length at most d survives. The number
  of covers is therefore 2^{|A|+|B|} (1 - R).
* :func:`build_all_terminal_gadget` adds perfect cliques on A and on B and makes
  every node a terminal, without changing the reliability.
* :func:`build_diameter2_gadget` joins two apex nodes a and b to every node of
  a graph. Only the links at a are random, and every node is a terminal with
  d = 2.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import TextIO

from dcrel.errors import CapExceededError, InstanceError, ParseError
from dcrel.exact import DEFAULT_CAP, count_min_pathsets, reliability_factoring
from dcrel.graph import Graph, NetworkInstance

__all__ = [
    "BipartiteInstance",
    "CanaleReport",
    "CoverCount",
    "GadgetResult",
    "RomeroReport",
    "VcIdentityReport",
    "build_all_terminal_gadget",
    "build_cp_gadget",
    "build_diameter2_gadget",
    "count_dominating_sets",
    "count_graph_covers",
    "count_vertex_covers",
    "format_bipartite",
    "parse_bipartite",
    "verify_canale_correspondence",
    "verify_romero_equality",
    "verify_vc_identity",
]

DEFAULT_COVER_CAP = 24
HALF = Fraction(1, 2)


@dataclass(frozen=True)
class BipartiteInstance:
    """Bipartite graph with sides A = 0..a_count-1 and B = 0..b_count-1."""

    a_count: int
    b_count: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.a_count < 0 or self.b_count < 0:
            raise InstanceError("side sizes must be nonnegative")
        edges = tuple((int(a), int(b)) for a, b in self.edges)
        if len(set(edges)) != len(edges):
            raise InstanceError("duplicate bipartite edge")
        for a, b in edges:
            if not (0 <= a < self.a_count and 0 <= b < self.b_count):
                raise InstanceError(f"bipartite edge ({a}, {b}) out of range")
        object.__setattr__(self, "edges", edges)

    @property
    def node_count(self) -> int:
        return self.a_count + self.b_count

    def as_graph(self) -> Graph:
        """Plain graph with A first, then B."""
        return Graph(self.node_count, tuple((a, self.a_count + b) for a, b in self.edges))


def parse_bipartite(text: str | TextIO) -> BipartiteInstance:
    """Parse ``a_nodes``, ``b_nodes`` and ``edge <a> <b>`` lines."""
    if not isinstance(text, str):
        text = text.read()
    sizes = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        keyword, args = tokens[0], tokens[1:]
        try:
            values = [int(a) for a in args]
        except ValueError:
            raise ParseError(f"expected integers after {keyword!r}", lineno) from None
        if keyword in ("a_nodes", "b_nodes"):
            if len(values) != 1 or values[0] < 0:
                raise ParseError(f"expected '{keyword} <n>'", lineno)
            if keyword in sizes:
                raise ParseError(f"repeated {keyword!r} declaration", lineno)
            sizes[keyword] = values[0]
        elif keyword == "edge":
            if len(values) != 2:
                raise ParseError("expected 'edge <a-index> <b-index>'", lineno)
            if tuple(values) in edges:
                raise ParseError(f"duplicate edge {values[0]} {values[1]}", lineno)
            edges.append(tuple(values))
        else:
            raise ParseError(f"unknown declaration {keyword!r}", lineno)
    for key in ("a_nodes", "b_nodes"):
        if key not in sizes:
            raise ParseError(f"missing '{key}' declaration")
    try:
        return BipartiteInstance(sizes["a_nodes"], sizes["b_nodes"], tuple(edges))
    except InstanceError as exc:
        raise ParseError(str(exc)) from None


def format_bipartite(bip: BipartiteInstance) -> str:
    lines = [f"a_nodes {bip.a_count}", f"b_nodes {bip.b_count}"]
    lines += [f"edge {a} {b}" for a, b in bip.edges]
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class GadgetResult:
    instance: NetworkInstance
    node_labels: dict[str, int]


def _check_d(d: int):
    if d < 3:
        raise InstanceError(f"gadget needs diameter at least 3, got {d}")


def _cp_parts(bip: BipartiteInstance, d: int):
    path_len = d - 3
    labels = {"s": 0}
    for i in range(1, path_len + 1):
        labels[f"s_{i}"] = i
    first_a = path_len + 1
    a_ids = [first_a + i for i in range(bip.a_count)]
    b_ids = [first_a + bip.a_count + j for j in range(bip.b_count)]
    t = first_a + bip.node_count
    labels.update({f"a_{i + 1}": node for i, node in enumerate(a_ids)})
    labels.update({f"b_{j + 1}": node for j, node in enumerate(b_ids)})
    labels["t"] = t
    last = path_len  # s itself when the path is empty
    edges, probs = [], []
    for i in range(path_len):
        edges.append((i, i + 1))
        probs.append(Fraction(1))
    for a, b in bip.edges:
        edges.append((a_ids[a], b_ids[b]))
        probs.append(Fraction(1))
    for node in a_ids:
        edges.append((last, node))
        probs.append(HALF)
    for node in b_ids:
        edges.append((node, t))
        probs.append(HALF)
    return t + 1, edges, probs, labels, a_ids, b_ids


def build_cp_gadget(bip: BipartiteInstance, d: int) -> GadgetResult:
    """Two-terminal gadget G' with terminals {s, t} and diameter ``d``.

    Edge order: path edges, bipartite edges, links from the path end to A,
    links from B to t.
    """
    _check_d(d)
    n, edges, probs, labels, _, _ = _cp_parts(bip, d)
    graph = Graph(n, tuple(edges))
    instance = NetworkInstance(graph, frozenset({labels["s"], labels["t"]}), d, tuple(probs))
    return GadgetResult(instance, labels)


def build_all_terminal_gadget(bip: BipartiteInstance, d: int) -> GadgetResult:
    """G' plus perfect cliques on A and on B, with every node a terminal."""
    _check_d(d)
    n, edges, probs, labels, a_ids, b_ids = _cp_parts(bip, d)
    for side in (a_ids, b_ids):
        for u, v in combinations(side, 2):
            edges.append((u, v))
            probs.append(Fraction(1))
    graph = Graph(n, tuple(edges))
    instance = NetworkInstance(graph, frozenset(range(n)), d, tuple(probs))
    return GadgetResult(instance, labels)


def build_diameter2_gadget(g: Graph) -> GadgetResult:
    """Apex gadget: nodes a = n and b = n + 1 joined to every node of ``g``.

    Links at a have p = 1/2, all others p = 1. There is no a-b link.
    """
    if not g.edges:
        raise InstanceError("the diameter-2 gadget needs a graph with at least one edge")
    n = g.node_count
    a, b = n, n + 1
    edges = list(g.edges) + [(x, a) for x in range(n)] + [(x, b) for x in range(n)]
    probs = [Fraction(1)] * g.edge_count + [HALF] * n + [Fraction(1)] * n
    labels = {f"v_{x}": x for x in range(n)}
    labels.update({"apex_a": a, "apex_b": b})
    instance = NetworkInstance(Graph(n + 2, tuple(edges)), frozenset(range(n + 2)), 2, tuple(probs))
    return GadgetResult(instance, labels)


# --------------------------------------------------------------- brute force

@dataclass(frozen=True)
class CoverCount:
    """Number of covers; with ``minimum_only`` only those of size ``min_size``."""

    count: int
    min_size: int | None = None


def _subset_census(n: int, accept, minimum_only: bool, cap: int | None, what: str) -> CoverCount:
    if cap is not None and n > cap:
        raise CapExceededError(what, n, cap)
    best, count = None, 0
    for subset in range(1 << n):
        if not accept(subset):
            continue
        if not minimum_only:
            count += 1
            continue
        size = bin(subset).count("1")
        if best is None or size < best:
            best, count = size, 1
        elif size == best:
            count += 1
    return CoverCount(count, best)


def count_graph_covers(g: Graph, minimum_only: bool = False,
                       cap: int | None = DEFAULT_COVER_CAP) -> CoverCount:
    """Brute-force vertex cover census of any graph."""
    masks = [(1 << u) | (1 << v) for u, v in g.edges]
    return _subset_census(g.node_count, lambda s: all(s & e for e in masks), minimum_only, cap,
                          "vertex set")


def count_vertex_covers(bip: BipartiteInstance, minimum_only: bool = False,
                        cap: int | None = DEFAULT_COVER_CAP) -> CoverCount:
    """Brute-force vertex cover census of a bipartite graph (2^{|A|+|B|} subsets)."""
    return count_graph_covers(bip.as_graph(), minimum_only, cap)


def count_dominating_sets(g: Graph, minimum_only: bool = False,
                          cap: int | None = DEFAULT_COVER_CAP) -> CoverCount:
    """Brute-force dominating set census: every node is in the set or next to it."""
    closed = [1 << x for x in range(g.node_count)]
    for u, v in g.edges:
        closed[u] |= 1 << v
        closed[v] |= 1 << u
    return _subset_census(g.node_count, lambda s: all(s & c for c in closed), minimum_only, cap,
                          "vertex set")


# --------------------------------------------------------------- verifiers

@dataclass(frozen=True)
class VcIdentityReport:
    covers: int
    reliability: Fraction
    derived_count: Fraction
    diameter: int
    passed: bool

    def to_json(self) -> dict:
        return {
            "covers": self.covers,
            "reliability": _rational(self.reliability),
            "derived_count": _rational(self.derived_count),
            "diameter": self.diameter,
            "passed": self.passed,
        }


@dataclass(frozen=True)
class RomeroReport:
    two_terminal: Fraction
    all_terminal: Fraction
    diameter: int
    passed: bool

    def to_json(self) -> dict:
        return {
            "two_terminal": _rational(self.two_terminal),
            "all_terminal": _rational(self.all_terminal),
            "diameter": self.diameter,
            "passed": self.passed,
        }


@dataclass(frozen=True)
class CanaleReport:
    """Minimum pathsets of the apex gadget against minimum covers of the source.

    ``passed`` requires both the cardinality relation and equal counts. The
    minimum dominating set census is reported alongside as a diagnostic.
    """

    perfect_edges: int
    min_pathset_cardinality: int | None
    min_pathset_count: int
    min_cover_size: int
    min_cover_count: int
    min_dominating_size: int
    min_dominating_count: int
    cardinality_matches: bool
    count_matches: bool
    passed: bool
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return asdict(self)


def _rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _reliability(instance: NetworkInstance, cap: int | None) -> Fraction:
    if cap is not None and len(instance.random_edges) > cap:
        raise CapExceededError("random edge set", len(instance.random_edges), cap)
    return reliability_factoring(instance)


def verify_vc_identity(bip: BipartiteInstance, d: int, cap: int | None = DEFAULT_CAP,
                       cover_cap: int | None = DEFAULT_COVER_CAP) -> VcIdentityReport:
    """Check that 2^{|A|+|B|} (1 - R_{s,t}) is the vertex cover count of ``bip``."""
    gadget = build_cp_gadget(bip, d)
    covers = count_vertex_covers(bip, cap=cover_cap).count
    r = _reliability(gadget.instance, cap)
    derived = 2 ** bip.node_count * (1 - r)
    passed = derived.denominator == 1 and derived == covers
    return VcIdentityReport(covers, r, derived, d, passed)


def verify_romero_equality(bip: BipartiteInstance, d: int,
                           cap: int | None = DEFAULT_CAP) -> RomeroReport:
    """Check that the two-terminal and all-terminal gadgets have equal reliability."""
    two = _reliability(build_cp_gadget(bip, d).instance, cap)
    every = _reliability(build_all_terminal_gadget(bip, d).instance, cap)
    return RomeroReport(two, every, d, two == every)


def verify_canale_correspondence(g: Graph, cap: int | None = DEFAULT_CAP,
                                 cover_cap: int | None = DEFAULT_COVER_CAP) -> CanaleReport:
    """Compare minimum pathsets of the apex gadget with minimum vertex covers of ``g``.

    A gadget state is a pathset exactly when the neighbors of a dominate
    ``g``. That is a weaker condition than covering every edge. The report
    records both censuses so any disagreement is visible.
    """
    gadget = build_diameter2_gadget(g)
    pathsets = count_min_pathsets(gadget.instance, cap=cap)
    perfect = bin(gadget.instance.perfect_mask).count("1")
    covers = count_graph_covers(g, minimum_only=True, cap=cover_cap)
    dominating = count_dominating_sets(g, minimum_only=True, cap=cover_cap)
    cardinality_ok = pathsets.min_cardinality == perfect + covers.min_size
    count_ok = pathsets.count == covers.count
    notes = [
        "correspondence is checked against minimum vertex covers of the source graph, "
        "not vertex covers of the gadget",
    ]
    if pathsets.min_cardinality is not None and (
            pathsets.min_cardinality - perfect != dominating.min_size
            or pathsets.count != dominating.count):
        notes.append("minimum pathsets disagree with minimum dominating sets")
    if not (cardinality_ok and count_ok):
        notes.append(
            f"mismatch: gadget needs {pathsets.min_cardinality - perfect} random links "
            f"({pathsets.count} ways); minimum cover has size {covers.min_size} "
            f"({covers.count} covers); minimum dominating set has size "
            f"{dominating.min_size} ({dominating.count} sets)"
        )
    return CanaleReport(
        perfect_edges=perfect,
        min_pathset_cardinality=pathsets.min_cardinality,
        min_pathset_count=pathsets.count,
        min_cover_size=covers.min_size,
        min_cover_count=covers.count,
        min_dominating_size=dominating.min_size,
        min_dominating_count=dominating.count,
        cardinality_matches=cardinality_ok,
        count_matches=count_ok,
        passed=cardinality_ok and count_ok,
        notes=notes,
    )
