"""Splitting unitary evaluations across bridges."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graph import InadmissibleError, SpinNetwork, check_admissible, find_bridges, relabel
from .numbers import Radical, factorial


@dataclass(frozen=True)
class BridgeReduction:
    """``unitary(original) = factor * unitary(network)``; ``network`` is None when the value is 0."""

    network: SpinNetwork | None
    factor: Radical
    erased_vertices: int = 0

    @property
    def zero(self) -> bool:
        return self.network is None


def _erase_bridge(net: SpinNetwork, e0: int) -> tuple[SpinNetwork, Fraction]:
    """Remove a zero-decorated bridge and both endpoints; returns the new network and delta^2."""
    rot = dict(net.rotation)
    edges = dict(net.edges)
    dec = dict(net.decoration)
    triv = list(net.trivial_components)
    delta_sq = Fraction(1)
    next_edge = max(edges) + 1
    for h0 in net.edges[e0]:
        v = net.half_edge_vertex[h0]
        g1, g2 = [h for h in net.rotation[v] if h != h0]
        e1, e2 = net.half_edge_edge[g1], net.half_edge_edge[g2]
        a = dec[e1]
        if e1 == e2:
            # loop vertex: the loop closes into a vertex-less circle
            triv.append(a)
            delta_sq /= factorial(a) ** 2 * (a + 1)
            del edges[e1], dec[e1]
        else:
            o1, o2 = net.opposite[g1], net.opposite[g2]
            delta_sq /= a + 1
            del edges[e1], dec[e1], edges[e2], dec[e2]
            edges[next_edge] = (o1, o2)
            dec[next_edge] = a
            next_edge += 1
        del rot[v]
    del edges[e0], dec[e0]
    return relabel(rot, edges, dec, triv), delta_sq


def bridge_reduce(net: SpinNetwork) -> BridgeReduction:
    """Repeatedly cut bridges.

    A bridge with nonzero decoration forces the value 0.  A zero bridge is
    erased together with its endpoints, the remaining edge pairs being fused;
    each endpoint contributes ``1/(a! sqrt(a+1))`` if it carries a loop of
    decoration a, else ``1/sqrt(a+1)``.
    """
    report = check_admissible(net)
    if not report:
        raise InadmissibleError(f"inadmissible network: {report.violations}")
    delta_sq = Fraction(1)
    erased = 0
    while True:
        bridges = find_bridges(net)
        if not bridges:
            return BridgeReduction(net, Radical.sqrt(delta_sq), erased)
        if any(net.decoration[e] for e in bridges):
            return BridgeReduction(None, Radical.zero(), erased)
        net, d = _erase_bridge(net, bridges[0])
        delta_sq *= d
        erased += 2
