"""Graph data model, instance files and the diameter-constrained structure function.

Edge states are plain integers used as bit words: bit ``i`` (least significant
first) is set when edge ``graph.edges[i]`` operates. :class:`EdgeStateMask`
wraps such a word together with its length for callers that want the check.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, TextIO, Union

from dcrel.errors import InstanceError, ParseError

__all__ = [
    "EdgeStateMask",
    "Graph",
    "NetworkInstance",
    "StateClass",
    "classify_state",
    "format_instance",
    "parse_graph",
    "parse_instance",
    "probability",
    "structure_phi",
]

_RATIONAL = re.compile(r"^(\d+)(?:/(\d+))?$")


def probability(value) -> Fraction:
    """Coerce ``value`` to an exact probability in [0, 1].

    Accepts ints, Fractions and ``"num/den"`` strings. Floats and decimal
    strings are rejected so that no rounding sneaks into exact evaluation.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise InstanceError(f"probability must be an exact rational, got {value!r}")
    if isinstance(value, str):
        match = _RATIONAL.match(value.strip())
        if not match:
            raise InstanceError(f"probability must be an exact rational num/den, got {value!r}")
        num, den = int(match.group(1)), int(match.group(2) or 1)
        if den == 0:
            raise InstanceError(f"zero denominator in probability {value!r}")
        value = Fraction(num, den)
    else:
        value = Fraction(value)
    if not 0 <= value <= 1:
        raise InstanceError(f"probability out of range [0, 1]: {value}")
    return value


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on nodes ``0..node_count-1`` with ordered edges."""

    node_count: int
    edges: tuple[tuple[int, int], ...]
    names: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.node_count < 0:
            raise InstanceError("node count must be nonnegative")
        normalized = []
        seen = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise InstanceError(f"self-loop on node {u}")
            if not (0 <= u < self.node_count and 0 <= v < self.node_count):
                raise InstanceError(f"edge ({u}, {v}) has an endpoint out of range")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InstanceError(f"duplicate edge ({u}, {v})")
            seen.add(key)
            normalized.append(key)
        object.__setattr__(self, "edges", tuple(normalized))
        if self.names is not None:
            if len(self.names) != self.node_count:
                raise InstanceError("names must label every node")
            object.__setattr__(self, "names", tuple(self.names))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def edge_index(self) -> dict[tuple[int, int], int]:
        """Map each normalized ``(min, max)`` pair to its edge index."""
        return {e: i for i, e in enumerate(self.edges)}

    def node_id(self, token: str | int) -> int:
        """Resolve a node name or integer id to an id."""
        if isinstance(token, int):
            node = token
        elif self.names is not None and token in self.names:
            return self.names.index(token)
        else:
            try:
                node = int(token)
            except ValueError:
                raise InstanceError(f"unknown node {token!r}") from None
        if not 0 <= node < self.node_count:
            raise InstanceError(f"node {node} out of range")
        return node

    def adjacency(self, bits: int) -> list[int]:
        """Neighbor bitsets of the subgraph whose operating edges are ``bits``."""
        adj = [0] * self.node_count
        for i, (u, v) in enumerate(self.edges):
            if bits >> i & 1:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
        return adj

    @property
    def full_mask(self) -> int:
        return (1 << len(self.edges)) - 1


@dataclass(frozen=True)
class NetworkInstance:
    """Graph, terminal set, diameter bound and per-edge operation probabilities."""

    graph: Graph
    terminals: frozenset[int]
    diameter: int
    probabilities: tuple[Fraction, ...]

    def __post_init__(self):
        terminals = frozenset(int(t) for t in self.terminals)
        for t in terminals:
            if not 0 <= t < self.graph.node_count:
                raise InstanceError(f"terminal {t} out of range")
        if len(terminals) < 2:
            raise InstanceError("at least two terminals are required")
        if int(self.diameter) < 1:
            raise InstanceError("diameter must be a positive integer")
        probs = tuple(probability(p) for p in self.probabilities)
        if len(probs) != self.graph.edge_count:
            raise InstanceError(
                f"{len(probs)} probabilities given for {self.graph.edge_count} edges"
            )
        object.__setattr__(self, "terminals", terminals)
        object.__setattr__(self, "diameter", int(self.diameter))
        object.__setattr__(self, "probabilities", probs)

    @classmethod
    def uniform(cls, graph: Graph, terminals: Iterable[int] | None, diameter: int,
                p=Fraction(1, 2)) -> NetworkInstance:
        """All edges share probability ``p``; ``terminals=None`` means every node."""
        if terminals is None:
            terminals = range(graph.node_count)
        return cls(graph, frozenset(terminals), diameter, (probability(p),) * graph.edge_count)

    def with_probability(self, index: int, p) -> NetworkInstance:
        probs = list(self.probabilities)
        probs[index] = probability(p)
        return NetworkInstance(self.graph, self.terminals, self.diameter, tuple(probs))

    @property
    def terminal_mask(self) -> int:
        mask = 0
        for t in self.terminals:
            mask |= 1 << t
        return mask

    @property
    def random_edges(self) -> tuple[int, ...]:
        """Indices of edges with 0 < p < 1."""
        return tuple(i for i, p in enumerate(self.probabilities) if 0 < p < 1)

    @property
    def perfect_mask(self) -> int:
        """Bit word of the edges with p = 1."""
        bits = 0
        for i, p in enumerate(self.probabilities):
            if p == 1:
                bits |= 1 << i
        return bits


@dataclass(frozen=True)
class EdgeStateMask:
    """Binary word selecting the operating edges of a graph."""

    bits: int
    length: int

    def __post_init__(self):
        if self.length < 0 or not 0 <= self.bits < (1 << self.length):
            raise InstanceError(f"state {self.bits:#x} does not fit in {self.length} bits")

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> EdgeStateMask:
        """Build from a sequence ``x_1..x_m`` of 0/1 values."""
        word = 0
        for i, b in enumerate(bits):
            if b:
                word |= 1 << i
        return cls(word, len(bits))

    @classmethod
    def from_edges(cls, graph: Graph, up: Iterable[tuple[int, int]]) -> EdgeStateMask:
        index = graph.edge_index()
        word = 0
        for u, v in up:
            try:
                word |= 1 << index[(min(u, v), max(u, v))]
            except KeyError:
                raise InstanceError(f"({u}, {v}) is not an edge") from None
        return cls(word, graph.edge_count)

    def __iter__(self):
        return ((self.bits >> i) & 1 for i in range(self.length))

    def __len__(self):
        return self.length


State = Union[EdgeStateMask, int]


def _state_bits(instance: NetworkInstance, state: State) -> int:
    m = instance.graph.edge_count
    if isinstance(state, EdgeStateMask):
        if state.length != m:
            raise InstanceError(f"state has length {state.length}, graph has {m} edges")
        return state.bits
    if not 0 <= state < (1 << m):
        raise InstanceError(f"state {state:#x} does not fit in {m} bits")
    return state


def bounded_reach(adj: Sequence[int], source: int, depth: int, stop: int = 0) -> int:
    """Bitset of nodes within ``depth`` hops of ``source``.

    Stops early once every node in ``stop`` is reached.
    """
    reach = frontier = 1 << source
    for _ in range(depth):
        nxt = 0
        while frontier:
            low = frontier & -frontier
            nxt |= adj[low.bit_length() - 1]
            frontier ^= low
        nxt &= ~reach
        if not nxt:
            break
        reach |= nxt
        if stop and reach & stop == stop:
            break
        frontier = nxt
    return reach


def connected_within(adj: Sequence[int], terminals: Sequence[int], terminal_mask: int,
                     depth: int) -> bool:
    """True when every terminal pair is at distance at most ``depth``."""
    # the last terminal is covered by the searches from all the others
    for t in terminals[:-1]:
        if bounded_reach(adj, t, depth, terminal_mask) & terminal_mask != terminal_mask:
            return False
    return True


def structure_phi(instance: NetworkInstance, state: State) -> int:
    """1 if the subgraph selected by ``state`` is d-K-connected, else 0."""
    bits = _state_bits(instance, state)
    adj = instance.graph.adjacency(bits)
    ok = connected_within(adj, sorted(instance.terminals), instance.terminal_mask,
                          instance.diameter)
    return int(ok)


class StateClass(enum.Enum):
    MINPATH = "minpath"
    NON_MINIMAL_PATHSET = "non-minimal-pathset"
    MINCUT = "mincut"
    NON_MAXIMAL_CUTSET = "non-maximal-cutset"

    @property
    def is_pathset(self) -> bool:
        return self in (StateClass.MINPATH, StateClass.NON_MINIMAL_PATHSET)

    @property
    def is_cutset(self) -> bool:
        return not self.is_pathset


def classify_state(instance: NetworkInstance, state: State) -> StateClass:
    """Place a state in the pathset/cutset taxonomy.

    By coherence it is enough to look at neighbors differing in one bit: a
    pathset is minimal when clearing any set bit breaks it, a cutset is
    maximal when setting any clear bit repairs it.
    """
    bits = _state_bits(instance, state)
    m = instance.graph.edge_count
    if structure_phi(instance, bits):
        for i in range(m):
            if bits >> i & 1 and structure_phi(instance, bits & ~(1 << i)):
                return StateClass.NON_MINIMAL_PATHSET
        return StateClass.MINPATH
    for i in range(m):
        if not bits >> i & 1 and not structure_phi(instance, bits | (1 << i)):
            return StateClass.NON_MAXIMAL_CUTSET
    return StateClass.MINCUT


# ---------------------------------------------------------------- file format

@dataclass
class _Declarations:
    node_count: int | None = None
    edges: list = field(default_factory=list)
    probabilities: list = field(default_factory=list)
    terminals: list | str | None = None
    diameter: int | None = None
    names: dict = field(default_factory=dict)
    numeric: bool = False
    terminal_line: int | None = None


def _read(text: str | TextIO) -> str:
    return text if isinstance(text, str) else text.read()


def _int(token: str, lineno: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {token!r}", lineno) from None


def _node(decl: _Declarations, token: str, lineno: int) -> int:
    if token.isdigit():
        if decl.names:
            raise ParseError("cannot mix named and numeric node ids", lineno)
        decl.numeric = True
        return int(token)
    if decl.numeric:
        raise ParseError("cannot mix named and numeric node ids", lineno)
    return decl.names.setdefault(token, len(decl.names))


def _scan(text: str | TextIO) -> _Declarations:
    decl = _Declarations()
    for lineno, raw in enumerate(_read(text).splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        keyword, args = tokens[0], tokens[1:]
        if keyword == "nodes":
            if len(args) != 1:
                raise ParseError("expected 'nodes <n>'", lineno)
            if decl.node_count is not None:
                raise ParseError("repeated 'nodes' declaration", lineno)
            decl.node_count = _int(args[0], lineno, "node count")
            if decl.node_count < 0:
                raise ParseError("node count must be nonnegative", lineno)
        elif keyword == "edge":
            if len(args) != 4 or args[2] != "p":
                raise ParseError("expected 'edge <u> <v> p <num>/<den>'", lineno)
            u, v = _node(decl, args[0], lineno), _node(decl, args[1], lineno)
            if u == v:
                raise ParseError(f"self-loop on node {args[0]}", lineno)
            key = (min(u, v), max(u, v))
            if key in decl.edges:
                raise ParseError(f"duplicate edge {args[0]} {args[1]}", lineno)
            try:
                p = probability(args[3])
            except InstanceError as exc:
                raise ParseError(str(exc), lineno) from None
            decl.edges.append(key)
            decl.probabilities.append(p)
        elif keyword == "terminals":
            if not args:
                raise ParseError("expected 'terminals <id> ...' or 'terminals all'", lineno)
            if decl.terminals is not None:
                raise ParseError("repeated 'terminals' declaration", lineno)
            decl.terminals = "all" if args == ["all"] else [_node(decl, a, lineno) for a in args]
            decl.terminal_line = lineno
        elif keyword == "diameter":
            if len(args) != 1:
                raise ParseError("expected 'diameter <d>'", lineno)
            if decl.diameter is not None:
                raise ParseError("repeated 'diameter' declaration", lineno)
            decl.diameter = _int(args[0], lineno, "diameter")
            if decl.diameter < 1:
                raise ParseError("diameter must be positive", lineno)
        else:
            raise ParseError(f"unknown declaration {keyword!r}", lineno)
    if decl.node_count is None:
        raise ParseError("missing 'nodes <n>' declaration")
    if len(decl.names) > decl.node_count:
        raise ParseError(f"{len(decl.names)} named nodes exceed 'nodes {decl.node_count}'")
    for u, v in decl.edges:
        if max(u, v) >= decl.node_count:
            raise ParseError(f"edge ({u}, {v}) has an endpoint out of range")
    return decl


def _graph_of(decl: _Declarations) -> Graph:
    names = None
    if decl.names:
        ordered = sorted(decl.names, key=decl.names.get)
        names = tuple(ordered) + tuple(str(i) for i in range(len(ordered), decl.node_count))
    return Graph(decl.node_count, tuple(decl.edges), names)


def parse_graph(text: str | TextIO) -> Graph:
    """Parse only the graph part of an instance file."""
    return _graph_of(_scan(text))


def parse_instance(text: str | TextIO, terminals: Iterable | str | None = None,
                   diameter: int | None = None) -> NetworkInstance:
    """Parse an instance file.

    ``terminals`` (an iterable of ids/names, or ``"all"``) and ``diameter``
    override the file's declarations when given.
    """
    decl = _scan(text)
    graph = _graph_of(decl)
    if terminals is None:
        if decl.terminals is None:
            raise ParseError("missing 'terminals' declaration")
        for t in decl.terminals if decl.terminals != "all" else ():
            if not 0 <= t < graph.node_count:
                raise ParseError(f"terminal {t} out of range", decl.terminal_line)
        terminals = decl.terminals
    if terminals == "all":
        ids = frozenset(range(graph.node_count))
    else:
        ids = frozenset(graph.node_id(t) for t in terminals)
    if diameter is None:
        if decl.diameter is None:
            raise ParseError("missing 'diameter' declaration")
        diameter = decl.diameter
    return NetworkInstance(graph, ids, diameter, tuple(decl.probabilities))


def _format_p(p: Fraction) -> str:
    return f"{p.numerator}/{p.denominator}"


def format_instance(instance: NetworkInstance, labels: dict[str, int] | None = None,
                    header: str | None = None) -> str:
    """Serialize an instance; ``labels`` become ``# role`` comment lines."""
    graph = instance.graph
    lines = []
    if header:
        lines.append(f"# {header}")
    if labels:
        for role, node in labels.items():
            lines.append(f"# role {role} = {node}")
    lines.append(f"nodes {graph.node_count}")
    for (u, v), p in zip(graph.edges, instance.probabilities):
        lines.append(f"edge {u} {v} p {_format_p(p)}")
    if len(instance.terminals) == graph.node_count:
        lines.append("terminals all")
    else:
        lines.append("terminals " + " ".join(str(t) for t in sorted(instance.terminals)))
    lines.append(f"diameter {instance.diameter}")
    return "\n".join(lines) + "\n"
