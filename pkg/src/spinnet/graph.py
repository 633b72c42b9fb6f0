"""Decorated cubic ribbon graphs.

A network is stored as a rotation system on half-edges: every vertex carries a
counterclockwise triple of half-edge ids, every edge a pair of half-edge ids.
Decorations are strand counts (twice the spin).  Vertex-less circles are kept
in ``trivial_components`` rather than faked as graph elements.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence


class NetworkError(ValueError):
    """Structurally invalid or inadmissible network data."""


class InadmissibleError(NetworkError):
    """Decorations violate parity or the triangle inequality somewhere."""


class ResourceLimitError(RuntimeError):
    """Evaluation would exceed a configured cost guard."""


def triad_halves(a: int, b: int, c: int) -> tuple[int, int, int]:
    """Strand counts ``((a+b-c)/2, (a+c-b)/2, (b+c-a)/2)`` between leg pairs ab, ac, bc."""
    return (a + b - c) // 2, (a + c - b) // 2, (b + c - a) // 2


def triad_violation(a: int, b: int, c: int) -> str | None:
    if (a + b + c) % 2:
        return "parity"
    if not (abs(a - b) <= c <= a + b):
        return "triangle"
    return None


def is_admissible_triple(a: int, b: int, c: int) -> bool:
    return triad_violation(a, b, c) is None


@dataclass(frozen=True)
class AdmissibilityReport:
    admissible: bool
    violations: tuple[tuple[int, tuple[int, int, int], str], ...] = ()

    def __bool__(self):
        return self.admissible


@dataclass(frozen=True, eq=True)
class SpinNetwork:
    """Cubic ribbon graph plus edge decorations.

    Treat instances as immutable; every operation here returns a new network.
    """

    rotation: Mapping[int, tuple[int, int, int]]
    edges: Mapping[int, tuple[int, int]]
    decoration: Mapping[int, int]
    trivial_components: tuple[int, ...] = field(default=())

    @cached_property
    def half_edge_vertex(self) -> dict[int, int]:
        return {h: v for v, rot in self.rotation.items() for h in rot}

    @cached_property
    def half_edge_edge(self) -> dict[int, int]:
        return {h: e for e, pair in self.edges.items() for h in pair}

    @cached_property
    def opposite(self) -> dict[int, int]:
        """Half-edge -> the other half-edge of its edge."""
        out = {}
        for h1, h2 in self.edges.values():
            out[h1] = h2
            out[h2] = h1
        return out

    @property
    def vertices(self) -> list[int]:
        return sorted(self.rotation)

    @property
    def edge_ids(self) -> list[int]:
        return sorted(self.edges)

    def gamma(self, h: int) -> int:
        """Decoration of the edge carrying half-edge ``h``."""
        return self.decoration[self.half_edge_edge[h]]

    def vertex_decorations(self, v: int) -> tuple[int, int, int]:
        return tuple(self.gamma(h) for h in self.rotation[v])

    def endpoints(self, e: int) -> tuple[int, int]:
        h1, h2 = self.edges[e]
        return self.half_edge_vertex[h1], self.half_edge_vertex[h2]

    def is_loop(self, e: int) -> bool:
        u, v = self.endpoints(e)
        return u == v

    def loop_vertices(self) -> set[int]:
        return {self.endpoints(e)[0] for e in self.edges if self.is_loop(e)}

    def has_loops(self) -> bool:
        return any(self.is_loop(e) for e in self.edges)

    def __hash__(self):
        return hash(
            (
                tuple(sorted(self.rotation.items())),
                tuple(sorted(self.edges.items())),
                tuple(sorted(self.decoration.items())),
                self.trivial_components,
            )
        )


def build_network(
    rotation: Mapping[int, Sequence[int]] | Iterable[tuple[int, Sequence[int]]],
    edges: Mapping[int, Sequence[int]] | Iterable[tuple[int, Sequence[int]]],
    decoration: Mapping[int, int] | None = None,
    trivial_components: Iterable[int] = (),
    default: int = 0,
) -> SpinNetwork:
    """Validate raw rotation/edge data and return a :class:`SpinNetwork`.

    Edges missing from ``decoration`` get ``default``.
    """
    rot = dict(rotation.items() if isinstance(rotation, Mapping) else rotation)
    edg = dict(edges.items() if isinstance(edges, Mapping) else edges)
    rot = {int(v): tuple(int(h) for h in hs) for v, hs in rot.items()}
    edg = {int(e): tuple(int(h) for h in hs) for e, hs in edg.items()}

    for v, hs in rot.items():
        if len(hs) != 3:
            raise NetworkError(f"vertex {v} is not trivalent (rotation {hs})")
    for e, hs in edg.items():
        if len(hs) != 2:
            raise NetworkError(f"edge {e} must have exactly two half-edges")
        if hs[0] == hs[1]:
            raise NetworkError(f"edge {e} uses half-edge {hs[0]} twice")

    seen_v: dict[int, int] = {}
    for v, hs in rot.items():
        for h in hs:
            if h in seen_v:
                raise NetworkError(f"half-edge {h} appears in two rotations ({seen_v[h]}, {v})")
            seen_v[h] = v
    seen_e: dict[int, int] = {}
    for e, hs in edg.items():
        for h in hs:
            if h in seen_e:
                raise NetworkError(f"half-edge {h} appears in two edges ({seen_e[h]}, {e})")
            seen_e[h] = e
    dangling = set(seen_v) ^ set(seen_e)
    if dangling:
        raise NetworkError(f"dangling half-edges {sorted(dangling)}")

    for name, ids in (("vertex", rot), ("edge", edg), ("half-edge", seen_v)):
        if any(i < 0 for i in ids):
            raise NetworkError(f"negative {name} id")
        if sorted(ids) != list(range(len(ids))):
            raise NetworkError(f"{name} ids must be dense 0..{len(ids) - 1}")

    dec = {e: default for e in edg}
    for e, val in (decoration or {}).items():
        e = int(e)
        if e not in edg:
            raise NetworkError(f"decoration given for unknown edge {e}")
        val = int(val)
        if val < 0:
            raise NetworkError(f"negative decoration on edge {e}")
        dec[e] = val
    triv = tuple(int(a) for a in trivial_components)
    if any(a < 0 for a in triv):
        raise NetworkError("negative trivial component decoration")
    return SpinNetwork(rot, edg, dec, triv)


def check_admissible(net: SpinNetwork) -> AdmissibilityReport:
    violations = []
    for v in net.vertices:
        triple = net.vertex_decorations(v)
        reason = triad_violation(*triple)
        if reason:
            violations.append((v, triple, reason))
    return AdmissibilityReport(not violations, tuple(violations))


def with_decoration(net: SpinNetwork, decoration: Mapping[int, int] | Sequence[int]) -> SpinNetwork:
    """Same ribbon graph, new edge decorations (sequence is indexed by edge id)."""
    if not isinstance(decoration, Mapping):
        decoration = dict(enumerate(decoration))
    return build_network(net.rotation, net.edges, decoration, net.trivial_components)


def scale_decoration(net: SpinNetwork, n: int) -> SpinNetwork:
    if n < 0:
        raise ValueError("dilation factor must be nonnegative")
    return SpinNetwork(
        net.rotation,
        net.edges,
        {e: n * a for e, a in net.decoration.items()},
        tuple(n * a for a in net.trivial_components),
    )


def flip_cyclic_order(net: SpinNetwork, v: int) -> SpinNetwork:
    if v not in net.rotation:
        raise NetworkError(f"unknown vertex {v}")
    rot = dict(net.rotation)
    h1, h2, h3 = rot[v]
    rot[v] = (h1, h3, h2)
    return SpinNetwork(rot, net.edges, net.decoration, net.trivial_components)


def disjoint_union(*nets: SpinNetwork) -> SpinNetwork:
    rot, edg, dec, triv = {}, {}, {}, []
    voff = eoff = hoff = 0
    for net in nets:
        for v, hs in net.rotation.items():
            rot[v + voff] = tuple(h + hoff for h in hs)
        for e, hs in net.edges.items():
            edg[e + eoff] = tuple(h + hoff for h in hs)
            dec[e + eoff] = net.decoration[e]
        triv.extend(net.trivial_components)
        voff += len(net.rotation)
        eoff += len(net.edges)
        hoff += 2 * len(net.edges)
    return build_network(rot, edg, dec, triv)


# -- structure ---------------------------------------------------------------


def _neighbors(net: SpinNetwork) -> dict[int, list[tuple[int, int]]]:
    """Vertex -> list of (edge, other endpoint), one entry per half-edge."""
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in net.rotation}
    for v, hs in net.rotation.items():
        for h in hs:
            adj[v].append((net.half_edge_edge[h], net.half_edge_vertex[net.opposite[h]]))
    return adj


def connected_components(net: SpinNetwork) -> list[frozenset[int]]:
    """Vertex sets of the non-trivial components, ordered by smallest vertex id.

    Trivial components are not listed here; see ``net.trivial_components``.
    """
    adj = _neighbors(net)
    seen: set[int] = set()
    comps = []
    for start in net.vertices:
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        seen.add(start)
        while stack:
            v = stack.pop()
            for _, w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    comp.add(w)
                    stack.append(w)
        comps.append(frozenset(comp))
    return comps


def find_bridges(net: SpinNetwork) -> list[int]:
    """Edge ids whose removal disconnects their component (iterative Tarjan)."""
    adj = _neighbors(net)
    order: dict[int, int] = {}
    low: dict[int, int] = {}
    bridges = []
    counter = 0
    for root in net.vertices:
        if root in order:
            continue
        order[root] = low[root] = counter
        counter += 1
        # frames: (vertex, edge used to arrive, iterator over incidences)
        stack = [(root, None, iter(adj[root]))]
        while stack:
            v, via, it = stack[-1]
            advanced = False
            for e, w in it:
                if e == via:
                    continue
                if w in order:
                    low[v] = min(low[v], order[w])
                else:
                    order[w] = low[w] = counter
                    counter += 1
                    stack.append((w, e, iter(adj[w])))
                    advanced = True
                    break
            if not advanced:
                stack.pop()
                if stack:
                    parent = stack[-1][0]
                    low[parent] = min(low[parent], low[v])
                    if low[v] > order[parent]:
                        bridges.append(via)
    return sorted(bridges)


def relabel(
    rotation: Mapping[int, Sequence[int]],
    edges: Mapping[int, Sequence[int]],
    decoration: Mapping[int, int],
    trivial_components: Iterable[int] = (),
) -> SpinNetwork:
    """Build a network from sparse ids, compacting them in sorted order."""
    vmap = {v: i for i, v in enumerate(sorted(rotation))}
    emap = {e: i for i, e in enumerate(sorted(edges))}
    hs = sorted(h for pair in edges.values() for h in pair)
    hmap = {h: i for i, h in enumerate(hs)}
    return build_network(
        {vmap[v]: tuple(hmap[h] for h in rot) for v, rot in rotation.items()},
        {emap[e]: tuple(hmap[h] for h in pair) for e, pair in edges.items()},
        {emap[e]: a for e, a in decoration.items()},
        trivial_components,
    )


def split_components(net: SpinNetwork) -> list[SpinNetwork]:
    """One network per connected component; each trivial component on its own."""
    out = []
    for comp in connected_components(net):
        rot = {v: net.rotation[v] for v in comp}
        es = {net.half_edge_edge[h] for v in comp for h in net.rotation[v]}
        out.append(
            relabel(rot, {e: net.edges[e] for e in es}, {e: net.decoration[e] for e in es})
        )
    for a in net.trivial_components:
        out.append(build_network({}, {}, {}, (a,)))
    return out


# -- generators --------------------------------------------------------------


def _planar_rotation(pos: Sequence[tuple[float, float]], ends: Sequence[tuple[int, int]]):
    """Counterclockwise rotation from a straight-line drawing; edge e uses half-edges 2e, 2e+1."""
    around: dict[int, list[tuple[float, int]]] = {v: [] for v in range(len(pos))}
    for e, (u, v) in enumerate(ends):
        for h, (x, y) in ((2 * e, (u, v)), (2 * e + 1, (v, u))):
            dx, dy = pos[y][0] - pos[x][0], pos[y][1] - pos[x][1]
            around[x].append((math.atan2(dy, dx), h))
    return {v: tuple(h for _, h in sorted(items)) for v, items in around.items()}


def _edge_pairs(m: int) -> dict[int, tuple[int, int]]:
    return {e: (2 * e, 2 * e + 1) for e in range(m)}


def _decor(m: int, gamma, name: str) -> dict[int, int]:
    if gamma is None:
        gamma = 2
    if isinstance(gamma, int):
        return {e: gamma for e in range(m)}
    gamma = list(gamma)
    if len(gamma) != m:
        raise ValueError(f"{name} needs {m} decorations, got {len(gamma)}")
    return dict(enumerate(gamma))


def theta(a: int = 2, b: int = 2, c: int = 2) -> SpinNetwork:
    """Planar theta graph; edges 0, 1, 2 carry a, b, c."""
    # drawn with vertex 0 on the left, edges top/middle/bottom
    rot = {0: (4, 2, 0), 1: (1, 3, 5)}
    return build_network(rot, _edge_pairs(3), {0: a, 1: b, 2: c})


def tetrahedron(gamma=None) -> SpinNetwork:
    """Planar K4 with edges ordered (a, b, c, d, e, f) as in a 6-j symbol.

    Vertex triads are (a,b,c), (a,e,f), (d,b,f), (d,e,c).
    """
    ends = [(0, 1), (0, 2), (0, 3), (2, 3), (1, 3), (1, 2)]
    pos = [(0.0, 0.0)] + [
        (math.cos(math.radians(t)), math.sin(math.radians(t))) for t in (90, 210, 330)
    ]
    return build_network(_planar_rotation(pos, ends), _edge_pairs(6), _decor(6, gamma, "tetrahedron"))


def drum(s: int, circle=None, rungs=None) -> SpinNetwork:
    """Two concentric s-cycles joined by s rungs, drawn in the plane.

    Edge i (0 <= i < s) is the outer arc from u_i to u_{i+1}, edge s+i the inner
    arc from w_i to w_{i+1}, edge 2s+i the rung u_i -- w_i.  Outer and inner arc
    i both carry ``circle[i]``; rung i carries ``rungs[i]``.  Defaults are 2.
    """
    if s < 1:
        raise ValueError("drum needs s >= 1")
    circle = [2] * s if circle is None else ([circle] * s if isinstance(circle, int) else list(circle))
    rungs = [2] * s if rungs is None else ([rungs] * s if isinstance(rungs, int) else list(rungs))
    if len(circle) != s or len(rungs) != s:
        raise ValueError("drum decorations must have length s")
    rot = {}
    for i in range(s):
        prev = (i - 1) % s
        rot[i] = (2 * i, 2 * (2 * s + i), 2 * prev + 1)
        rot[s + i] = (2 * (2 * s + i) + 1, 2 * (s + i), 2 * (s + prev) + 1)
    dec = {}
    for i in range(s):
        dec[i] = dec[s + i] = circle[i]
        dec[2 * s + i] = rungs[i]
    return build_network(rot, _edge_pairs(3 * s), dec)


def prism(gamma=None) -> SpinNetwork:
    """Triangular prism (the drum with s = 3), uniform or per-edge decoration."""
    net = drum(3)
    return with_decoration(net, _decor(9, gamma, "prism"))


def dumbbell(a: int = 2, b: int = 2, c: int = 0) -> SpinNetwork:
    """Loop a at vertex 0, loop b at vertex 1, bridge c between them (edges 0, 1, 2)."""
    return build_network({0: (0, 1, 4), 1: (2, 3, 5)}, _edge_pairs(3), {0: a, 1: b, 2: c})


def k33(gamma=None) -> SpinNetwork:
    """K_{3,3}; edge 3i+j joins vertex i to vertex 3+j."""
    rot = {i: (6 * i, 6 * i + 2, 6 * i + 4) for i in range(3)}
    for j in range(3):
        rot[3 + j] = tuple(2 * (3 * i + j) + 1 for i in range(3))
    return build_network(rot, _edge_pairs(9), _decor(9, gamma, "k33"))


def trivial(a: int) -> SpinNetwork:
    return build_network({}, {}, {}, (a,))


def cycle_pair(a: int = 2, b: int = 2) -> SpinNetwork:
    """Two disjoint vertex-less circles decorated a and b."""
    return build_network({}, {}, {}, (a, b))


def random_cubic(n_vertices: int, seed: int | random.Random = 0, gamma: int = 0) -> SpinNetwork:
    """Random cubic ribbon graph by uniform half-edge pairing and random rotations.

    Loops, multi-edges and disconnected results are all possible.
    """
    if n_vertices <= 0 or n_vertices % 2:
        raise ValueError("a cubic graph needs a positive even number of vertices")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    halves = list(range(3 * n_vertices))
    rng.shuffle(halves)
    edges = {e: (halves[2 * e], halves[2 * e + 1]) for e in range(len(halves) // 2)}
    rot = {}
    for v in range(n_vertices):
        hs = [3 * v, 3 * v + 1, 3 * v + 2]
        if rng.random() < 0.5:
            hs[1], hs[2] = hs[2], hs[1]
        rot[v] = tuple(hs)
    return build_network(rot, edges, {e: gamma for e in edges})


FAMILIES = {
    "theta": theta,
    "tetrahedron": tetrahedron,
    "drum": drum,
    "prism": prism,
    "dumbbell": dumbbell,
    "k33": k33,
    "trivial": trivial,
    "cycle_pair": cycle_pair,
    "random": random_cubic,
}


def generate(family: str, **params) -> SpinNetwork:
    try:
        maker = FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}") from None
    try:
        return maker(**params)
    except TypeError as exc:
        raise ValueError(f"bad parameters for {family}: {exc}") from None
