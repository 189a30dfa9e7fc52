"""Polynomial special cases: diameter 1, and two terminals with diameter 2."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from dcrel.errors import InstanceError
from dcrel.graph import NetworkInstance

__all__ = ["reliability_d1", "reliability_k2_d2"]


def _edge_probabilities(instance: NetworkInstance) -> dict[tuple[int, int], Fraction]:
    return dict(zip(instance.graph.edges, instance.probabilities))


def _p(table, u: int, v: int) -> Fraction:
    # absent edges operate with probability 0
    return table.get((min(u, v), max(u, v)), Fraction(0))


def reliability_d1(instance: NetworkInstance) -> Fraction:
    """Every terminal pair needs its own direct link: product of p(uv) over pairs."""
    if instance.diameter != 1:
        raise InstanceError(f"reliability_d1 needs diameter 1, got {instance.diameter}")
    table = _edge_probabilities(instance)
    result = Fraction(1)
    for u, v in combinations(sorted(instance.terminals), 2):
        result *= _p(table, u, v)
        if not result:
            break
    return result


def reliability_k2_d2(instance: NetworkInstance) -> Fraction:
    """Two terminals u, v within two hops.

    They fail only if the direct link is down and every two-hop route u-w-v
    through another node w is broken: 1 - (1 - p(uv)) * prod_w (1 - p(uw) p(wv)).
    """
    if len(instance.terminals) != 2 or instance.diameter != 2:
        raise InstanceError("reliability_k2_d2 needs exactly two terminals and diameter 2")
    u, v = sorted(instance.terminals)
    table = _edge_probabilities(instance)
    failure = 1 - _p(table, u, v)
    for w in range(instance.graph.node_count):
        if w != u and w != v:
            failure *= 1 - _p(table, u, w) * _p(table, w, v)
    return 1 - failure
