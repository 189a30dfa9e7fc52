import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import TRI_TEXT
from dcrel import (
    EdgeStateMask,
    Graph,
    InstanceError,
    NetworkInstance,
    ParseError,
    StateClass,
    classify_state,
    format_instance,
    parse_graph,
    parse_instance,
    structure_phi,
)


def test_parse_triangle():
    inst = parse_instance(TRI_TEXT)
    assert inst.graph.edge_count == 3
    assert len(inst.terminals) == 2
    assert inst.graph.edges == ((0, 1), (0, 2), (1, 2))
    assert inst.probabilities == (Fraction(1, 2),) * 3
    assert inst.diameter == 2


@pytest.mark.parametrize("line,message", [
    ("edge 0 0 p 1/2", "self-loop"),
    ("edge 0 1 p 3/2", "out of range"),
    ("edge 0 1 p 0.5", "exact rational"),
    ("edge 1 0 p 1/2", "duplicate"),
    ("edge 0 1", "expected"),
    ("frobnicate 3", "unknown"),
])
def test_parse_errors_carry_line(line, message):
    text = "nodes 3\nedge 0 1 p 1/2\n" if "duplicate" in message else "nodes 3\n\n"
    text += line + "\nterminals 0 1\ndiameter 2\n"
    with pytest.raises(ParseError, match=message) as info:
        parse_instance(text)
    assert info.value.line == 3


def test_terminal_out_of_range():
    with pytest.raises(ParseError, match="terminal 7 out of range"):
        parse_instance("nodes 3\nedge 0 1 p 1\nterminals 0 7\ndiameter 2\n")


def test_edge_endpoint_out_of_range():
    with pytest.raises(ParseError, match="out of range"):
        parse_instance("nodes 2\nedge 0 5 p 1\nterminals all\ndiameter 1\n")


def test_single_terminal_rejected():
    with pytest.raises(InstanceError):
        parse_instance("nodes 2\nedge 0 1 p 1\nterminals 0\ndiameter 1\n")


def test_named_nodes_and_overrides():
    text = "nodes 3\nedge hub x p 1\nedge hub y p 1/3\nterminals x y\ndiameter 2\n"
    inst = parse_instance(text)
    assert inst.graph.names == ("hub", "x", "y")
    assert inst.terminals == {1, 2}
    other = parse_instance(text, terminals="all", diameter=1)
    assert other.terminals == {0, 1, 2} and other.diameter == 1
    assert parse_instance(text, terminals=["hub", "y"]).terminals == {0, 2}


def test_format_round_trip():
    inst = parse_instance(TRI_TEXT)
    again = parse_instance(format_instance(inst, {"s": 0}))
    assert again == inst


def test_graph_invariants():
    with pytest.raises(InstanceError):
        Graph(2, ((0, 1), (1, 0)))
    with pytest.raises(InstanceError):
        Graph(2, ((0, 2),))
    with pytest.raises(InstanceError):
        NetworkInstance.uniform(Graph(2, ((0, 1),)), {0, 1}, 0)


def test_mask_length_checked(tri_k2):
    with pytest.raises(InstanceError):
        structure_phi(tri_k2, EdgeStateMask(0b1, 2))
    with pytest.raises(InstanceError):
        structure_phi(tri_k2, 0b1000)


def test_phi_examples(triangle, tri_k2):
    assert structure_phi(tri_k2, EdgeStateMask.from_bits([1, 1, 1])) == 1
    assert structure_phi(tri_k2, EdgeStateMask.from_edges(triangle, [(0, 2)])) == 0
    d1 = NetworkInstance.uniform(triangle, {0, 1}, 1)
    assert structure_phi(d1, EdgeStateMask.from_edges(triangle, [(0, 2), (1, 2)])) == 0
    assert structure_phi(tri_k2, EdgeStateMask.from_edges(triangle, [(0, 2), (1, 2)])) == 1


def test_classify_examples(triangle, tri_k2):
    def cls(*edges):
        return classify_state(tri_k2, EdgeStateMask.from_edges(triangle, edges))

    assert cls((0, 1)) is StateClass.MINPATH
    assert cls((0, 1), (0, 2)) is StateClass.NON_MINIMAL_PATHSET
    assert cls((0, 2)) is StateClass.MINCUT
    assert cls() is StateClass.NON_MAXIMAL_CUTSET
    assert cls((0, 1)).is_pathset and cls((0, 2)).is_cutset


graphs = st.integers(2, 6).flatmap(
    lambda n: st.lists(st.sampled_from(list(itertools.combinations(range(n), 2))),
                       unique=True, max_size=12).map(lambda es: Graph(n, tuple(es))))


@st.composite
def instances(draw, max_d=None):
    g = draw(graphs)
    terms = draw(st.sets(st.integers(0, g.node_count - 1), min_size=2))
    d = draw(st.integers(1, max_d or g.node_count))
    return NetworkInstance.uniform(g, terms, d)


@settings(max_examples=60, deadline=None)
@given(instances())
def test_phi_matches_networkx(inst):
    for bits in range(1 << inst.graph.edge_count):
        assert structure_phi(inst, bits) == oracles.phi(inst.graph, bits, inst.terminals,
                                                        inst.diameter)
        if bits > 256:
            break


@settings(max_examples=40, deadline=None)
@given(instances())
def test_coherence_exhaustive(inst):
    m = inst.graph.edge_count
    table = [structure_phi(inst, x) for x in range(1 << m)]
    for x in range(1 << m):
        for i in range(m):
            assert table[x] <= table[x | (1 << i)]


@settings(max_examples=40, deadline=None)
@given(graphs, st.data())
def test_large_diameter_is_plain_connectivity(g, data):
    terms = data.draw(st.sets(st.integers(0, g.node_count - 1), min_size=2))
    inst = NetworkInstance.uniform(g, terms, max(1, g.node_count - 1))
    for bits in range(min(1 << g.edge_count, 512)):
        assert structure_phi(inst, bits) == oracles.connected(g, bits, terms)


@settings(max_examples=40, deadline=None)
@given(instances(), st.randoms())
def test_terminal_order_irrelevant(inst, rnd):
    from dcrel.graph import connected_within

    order = sorted(inst.terminals)
    rnd.shuffle(order)
    for bits in range(min(1 << inst.graph.edge_count, 256)):
        adj = inst.graph.adjacency(bits)
        assert connected_within(adj, order, inst.terminal_mask, inst.diameter) == bool(
            structure_phi(inst, bits))


@settings(max_examples=40, deadline=None)
@given(instances(), st.data())
def test_classification_consistent(inst, data):
    m = inst.graph.edge_count
    bits = data.draw(st.integers(0, (1 << m) - 1))
    cls = classify_state(inst, bits)
    assert cls.is_pathset == bool(structure_phi(inst, bits))
    if cls is StateClass.MINPATH:
        assert all(not structure_phi(inst, bits & ~(1 << i)) for i in range(m) if bits >> i & 1)
    if cls is StateClass.MINCUT:
        assert all(structure_phi(inst, bits | (1 << i)) for i in range(m) if not bits >> i & 1)


def test_parse_graph_ignores_instance_fields():
    g = parse_graph("nodes 4\nedge 0 1 p 1\nedge 1 2 p 1/2\n")
    assert g.node_count == 4 and g.edges == ((0, 1), (1, 2))
