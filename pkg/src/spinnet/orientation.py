"""Smooth orientations (no sources, no sinks), gate signages and the V_pi / V_iota split."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Mapping

from .graph import SpinNetwork, connected_components


@dataclass(frozen=True)
class SmoothOrientation:
    """Edge id -> (tail half-edge, head half-edge)."""

    direction: Mapping[int, tuple[int, int]]

    def tails(self) -> set[int]:
        return {t for t, _ in self.direction.values()}


@dataclass(frozen=True)
class GateSignage:
    """Vertex id -> ordered pair of its two same-direction half-edges."""

    order: Mapping[int, tuple[int, int]]


@dataclass(frozen=True)
class VertexPartition:
    v_pi: frozenset[int]
    v_iota: frozenset[int]


def degree_pair(net: SpinNetwork, o: SmoothOrientation, v: int) -> tuple[int, int]:
    """(indegree, outdegree) of ``v`` counted over half-edges."""
    tails = o.tails()
    out = sum(1 for h in net.rotation[v] if h in tails)
    return 3 - out, out


def validate_smooth(net: SpinNetwork, o: SmoothOrientation) -> bool:
    if set(o.direction) != set(net.edges):
        return False
    for e, (t, h) in o.direction.items():
        if {t, h} != set(net.edges[e]):
            return False
    return all(degree_pair(net, o, v) in ((1, 2), (2, 1)) for v in net.vertices)


def _spanning_tree(net: SpinNetwork, comp: frozenset[int]) -> dict[int, list[tuple[int, int]]]:
    """BFS tree from the smallest vertex; returns tree adjacency (vertex -> [(edge, nbr)])."""
    start = min(comp)
    tree: dict[int, list[tuple[int, int]]] = {v: [] for v in comp}
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for h in sorted(net.rotation[v]):
            w = net.half_edge_vertex[net.opposite[h]]
            if w not in seen:
                seen.add(w)
                e = net.half_edge_edge[h]
                tree[v].append((e, w))
                tree[w].append((e, v))
                queue.append(w)
    return tree


def _orient_from(net: SpinNetwork, e: int, v: int) -> tuple[int, int]:
    """Direction of edge ``e`` leaving vertex ``v``."""
    h1, h2 = net.edges[e]
    return (h1, h2) if net.half_edge_vertex[h1] == v else (h2, h1)


def _orient_component(net: SpinNetwork, comp: frozenset[int], direction: dict):
    tree = _spanning_tree(net, comp)
    root = min(v for v, nbrs in tree.items() if len(nbrs) == 1)
    # tree edges point toward the root
    seen = {root}
    queue = deque([root])
    tree_edges = set()
    while queue:
        v = queue.popleft()
        for e, w in tree[v]:
            if w not in seen:
                seen.add(w)
                direction[e] = _orient_from(net, e, w)
                tree_edges.add(e)
                queue.append(w)

    # the remaining edges have degree <= 2 at every vertex: paths and cycles
    cotree: dict[int, list[int]] = {v: [] for v in comp}
    for v in comp:
        for h in net.rotation[v]:
            if net.half_edge_edge[h] not in tree_edges:
                cotree[v].append(h)

    used: set[int] = set()

    def walk(v: int, h: int):
        while True:
            e = net.half_edge_edge[h]
            used.add(e)
            head = net.opposite[h]
            direction[e] = (h, head)
            v = net.half_edge_vertex[head]
            nxt = [g for g in cotree[v] if g != head and net.half_edge_edge[g] not in used]
            if not nxt:
                return
            h = min(nxt)

    for v in sorted(comp):
        if len(cotree[v]) == 1 and net.half_edge_edge[cotree[v][0]] not in used:
            walk(v, cotree[v][0])
    for v in sorted(comp):
        free = [h for h in cotree[v] if net.half_edge_edge[h] not in used]
        if free:
            walk(v, min(free))


def find_smooth_orientation(net: SpinNetwork) -> SmoothOrientation:
    """Spanning-tree construction, applied to each connected component.

    Tree edges point toward a leaf root; the leftover edges form disjoint paths
    and cycles, each oriented coherently.  A loop runs from its lower half-edge.
    """
    direction: dict[int, tuple[int, int]] = {}
    for comp in connected_components(net):
        _orient_component(net, comp, direction)
    return SmoothOrientation(direction)


def _gate(net: SpinNetwork, o: SmoothOrientation, v: int) -> tuple[list[int], int]:
    tails = o.tails()
    rot = net.rotation[v]
    outs = [h for h in rot if h in tails]
    ins = [h for h in rot if h not in tails]
    if len(ins) == 2:
        return ins, outs[0]
    if len(outs) == 2:
        return outs, ins[0]
    raise ValueError(f"vertex {v} is not smooth")


def canonical_gate_signage(net: SpinNetwork, o: SmoothOrientation) -> GateSignage:
    """Order each gate (x, y) so that y immediately follows x counterclockwise."""
    order = {}
    for v in net.vertices:
        (x, y), _ = _gate(net, o, v)
        rot = net.rotation[v]
        if rot[(rot.index(x) + 1) % 3] != y:
            x, y = y, x
        order[v] = (x, y)
    return GateSignage(order)


def arbitrary_gate_signage(net: SpinNetwork, o: SmoothOrientation) -> GateSignage:
    """Order each gate as its half-edges appear in the stored rotation triple."""
    return GateSignage({v: tuple(_gate(net, o, v)[0]) for v in net.vertices})


def edge_ordered_gate_signage(net: SpinNetwork, o: SmoothOrientation) -> GateSignage:
    """Order each gate by edge id (half-edge id for a loop).

    Two vertices sharing the same gate edges then list them in the same order,
    which makes the theta value a sum of squares.
    """
    order = {}
    for v in net.vertices:
        gate, _ = _gate(net, o, v)
        order[v] = tuple(sorted(gate, key=lambda h: (net.half_edge_edge[h], h)))
    return GateSignage(order)


def classify_vertices(net: SpinNetwork, o: SmoothOrientation) -> VertexPartition:
    pi, iota = set(), set()
    for v in net.vertices:
        ind, _ = degree_pair(net, o, v)
        (pi if ind == 2 else iota).add(v)
    return VertexPartition(frozenset(pi), frozenset(iota))
