import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinnet.cg import cg_evaluate, cg_network
from spinnet.graph import drum, dumbbell, is_admissible_triple, k33, prism, random_cubic, tetrahedron, theta
from spinnet.orientation import (
    GateSignage,
    SmoothOrientation,
    arbitrary_gate_signage,
    canonical_gate_signage,
    classify_vertices,
    degree_pair,
    edge_ordered_gate_signage,
    find_smooth_orientation,
    validate_smooth,
)

NAMED = [theta(), tetrahedron(), drum(2), drum(5), prism(), k33(), dumbbell()]


@pytest.mark.parametrize("net", NAMED)
def test_named_graphs_orient(net):
    o = find_smooth_orientation(net)
    assert validate_smooth(net, o)
    part = classify_vertices(net, o)
    assert len(part.v_pi) == len(part.v_iota)
    assert part.v_pi | part.v_iota == set(net.vertices)


def test_degree_pairs():
    net = theta()
    o = find_smooth_orientation(net)
    assert sorted(degree_pair(net, o, v) for v in net.vertices) == [(1, 2), (2, 1)]


def test_rejects_source():
    net = theta()
    # every edge leaves vertex 0: a source
    bad = SmoothOrientation({e: (min(hs), max(hs)) if net.half_edge_vertex[min(hs)] == 0 else (max(hs), min(hs))
                             for e, hs in net.edges.items()})
    assert not validate_smooth(net, bad)


def test_rejects_incomplete():
    net = theta()
    o = find_smooth_orientation(net)
    partial = SmoothOrientation({e: d for e, d in o.direction.items() if e != 0})
    assert not validate_smooth(net, partial)


def test_canonical_gates_follow_rotation():
    for net in NAMED:
        o = find_smooth_orientation(net)
        for v, (x, y) in canonical_gate_signage(net, o).order.items():
            rot = net.rotation[v]
            assert rot[(rot.index(x) + 1) % 3] == y


def test_orientation_is_deterministic():
    net = random_cubic(10, 3)
    assert find_smooth_orientation(net) == find_smooth_orientation(net)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 6), st.integers(0, 10**6))
def test_random_graphs_orient(half, seed):
    net = random_cubic(2 * half, seed)
    o = find_smooth_orientation(net)
    assert validate_smooth(net, o)
    part = classify_vertices(net, o)
    assert len(part.v_pi) == len(part.v_iota) == half


def _flip(gates: GateSignage, v: int) -> GateSignage:
    order = dict(gates.order)
    order[v] = order[v][::-1]
    return GateSignage(order)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=6, max_size=6), st.integers(0, 3))
def test_gate_flip_changes_only_sign(values, v):
    net = tetrahedron(values)
    triads = [net.vertex_decorations(u) for u in net.vertices]
    if not all(is_admissible_triple(*t) for t in triads):
        return
    o = find_smooth_orientation(net)
    gates = arbitrary_gate_signage(net, o)
    base = cg_evaluate(cg_network(net, o, gates))
    flipped = cg_evaluate(cg_network(net, o, _flip(gates, v)))
    x, y = gates.order[v]
    nab = (net.gamma(x) + net.gamma(y) - sum(net.gamma(h) for h in net.rotation[v] if h not in (x, y))) // 2
    assert flipped == (-1) ** nab * base


def test_edge_ordered_gates_are_valid():
    for net in NAMED:
        o = find_smooth_orientation(net)
        gates = edge_ordered_gate_signage(net, o)
        canon = canonical_gate_signage(net, o)
        assert all(set(gates.order[v]) == set(canon.order[v]) for v in net.vertices)
