import itertools
from fractions import Fraction

import pytest

import oracles
from dcrel import (
    Graph,
    InstanceError,
    NetworkInstance,
    reliability_d1,
    reliability_enumerate,
    reliability_k2_d2,
)


def test_d1_examples(triangle):
    assert reliability_d1(NetworkInstance.uniform(triangle, None, 1)) == Fraction(1, 8)
    path = Graph(3, ((0, 2), (1, 2)))
    assert reliability_d1(NetworkInstance.uniform(path, {0, 1}, 1)) == 0
    assert reliability_d1(NetworkInstance.uniform(Graph(2, ((0, 1),)), {0, 1}, 1, 1)) == 1


def test_k2_d2_examples(tri_k2):
    assert reliability_k2_d2(tri_k2) == 1 - Fraction(1, 2) * (1 - Fraction(1, 4))
    assert reliability_k2_d2(tri_k2.with_probability(0, 1)) == 1
    far = Graph(4, ((0, 2), (1, 3)))
    assert reliability_k2_d2(NetworkInstance.uniform(far, {0, 1}, 2)) == 0


def test_wrong_parameters(tri_k2, triangle):
    with pytest.raises(InstanceError):
        reliability_d1(tri_k2)
    with pytest.raises(InstanceError):
        reliability_k2_d2(NetworkInstance.uniform(triangle, None, 2))


def test_d1_matches_enumeration():
    rng = oracles.seeded(1)
    for _ in range(100):
        inst = oracles.random_instance(rng, d=1)
        assert reliability_d1(inst) == reliability_enumerate(inst)


def test_k2_d2_matches_enumeration_small_exhaustive():
    rng = oracles.seeded(3)
    for n in (2, 3, 4):
        for g in oracles.all_graphs(n):
            probs = tuple(oracles.random_probability(rng) for _ in g.edges)
            for pair in itertools.combinations(range(n), 2):
                inst = NetworkInstance(g, frozenset(pair), 2, probs)
                assert reliability_k2_d2(inst) == reliability_enumerate(inst)


def test_closed_forms_never_touch_the_structure_function(monkeypatch, tri_k2, triangle):
    def boom(*args, **kwargs):
        raise AssertionError("state enumeration in a closed form")

    import dcrel.exact
    import dcrel.graph

    monkeypatch.setattr(dcrel.exact, "connected_within", boom)
    monkeypatch.setattr(dcrel.graph, "connected_within", boom)
    monkeypatch.setattr(dcrel.graph, "bounded_reach", boom)
    monkeypatch.setattr(dcrel.graph.Graph, "adjacency", boom)
    assert reliability_k2_d2(tri_k2) == Fraction(5, 8)
    assert reliability_d1(NetworkInstance.uniform(triangle, None, 1)) == Fraction(1, 8)
