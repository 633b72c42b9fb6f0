import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinnet.graph import (
    NetworkError,
    build_network,
    check_admissible,
    connected_components,
    cycle_pair,
    disjoint_union,
    drum,
    dumbbell,
    find_bridges,
    flip_cyclic_order,
    generate,
    is_admissible_triple,
    k33,
    prism,
    random_cubic,
    scale_decoration,
    split_components,
    tetrahedron,
    theta,
    triad_halves,
    trivial,
    with_decoration,
)

cubic_graphs = st.builds(
    random_cubic, st.integers(1, 6).map(lambda k: 2 * k), st.integers(0, 10**6)
)


def test_admissible_triples():
    assert is_admissible_triple(2, 2, 2)
    assert is_admissible_triple(0, 3, 3)
    assert not is_admissible_triple(1, 1, 1)  # odd total
    assert not is_admissible_triple(4, 1, 1)  # triangle inequality
    assert not is_admissible_triple(-2, 1, 1)
    assert triad_halves(3, 3, 2) == (2, 1, 1)


def test_check_admissible_reports_vertices():
    report = check_admissible(theta(1, 1, 1))
    assert not report
    assert {v for v, _, _ in report.violations} == {0, 1}
    assert check_admissible(theta(2, 2, 2))


def test_loop_counts_twice():
    # vertex triple (a, a, c) for a loop: c must be even and at most 2a
    assert check_admissible(dumbbell(1, 1, 2))
    assert not check_admissible(dumbbell(1, 1, 3))
    assert not check_admissible(dumbbell(1, 2, 4))


@pytest.mark.parametrize(
    "rotation, edges, message",
    [
        ({0: (0, 1)}, {0: (0, 1)}, "trivalent"),
        ({0: (0, 1, 2), 1: (3, 4, 5)}, {0: (0, 1), 1: (2, 3)}, "dangling"),
        ({0: (0, 1, 2), 1: (2, 3, 4)}, {0: (0, 1), 1: (2, 3)}, "two rotations"),
        ({0: (0, 1, 2), 1: (3, 4, 5)}, {0: (0, 3), 1: (1, 4), 3: (2, 5)}, "dense"),
    ],
)
def test_build_rejects_bad_structure(rotation, edges, message):
    with pytest.raises(NetworkError, match=message):
        build_network(rotation, edges)


def test_negative_decoration_rejected():
    with pytest.raises(NetworkError):
        build_network({0: (4, 2, 0), 1: (1, 3, 5)}, {0: (0, 1), 1: (2, 3), 2: (4, 5)}, {0: -1})


def test_generators_are_cubic_and_sized():
    for net, nv, ne in [
        (theta(), 2, 3),
        (tetrahedron(), 4, 6),
        (drum(4), 8, 12),
        (prism(), 6, 9),
        (k33(), 6, 9),
        (dumbbell(), 2, 3),
    ]:
        assert len(net.vertices) == nv and len(net.edge_ids) == ne
        assert all(len(net.rotation[v]) == 3 for v in net.vertices)
    assert trivial(3).trivial_components == (3,)
    assert cycle_pair(2, 4).trivial_components == (2, 4)


def test_tetrahedron_triads():
    net = tetrahedron([1, 2, 3, 4, 5, 6])
    triads = sorted(tuple(sorted(net.vertex_decorations(v))) for v in net.vertices)
    expected = sorted(tuple(sorted(t)) for t in [(1, 2, 3), (1, 5, 6), (4, 2, 6), (4, 5, 3)])
    assert triads == expected


def test_drum_decorations():
    net = drum(3, circle=[2, 4, 6], rungs=[0, 2, 4])
    assert [net.decoration[e] for e in range(9)] == [2, 4, 6, 2, 4, 6, 0, 2, 4]


def test_generate_dispatch():
    assert generate("theta", a=3, b=3, c=2).decoration == {0: 3, 1: 3, 2: 2}
    with pytest.raises(ValueError, match="unknown family"):
        generate("moebius")
    with pytest.raises(ValueError, match="bad parameters"):
        generate("theta", q=1)


def test_bridges_and_components():
    assert find_bridges(dumbbell()) == [2]
    assert find_bridges(theta()) == []
    assert find_bridges(tetrahedron()) == []
    net = disjoint_union(theta(), tetrahedron(), trivial(2))
    assert len(connected_components(net)) == 2
    parts = split_components(net)
    assert [len(p.vertices) for p in parts] == [2, 4, 0]
    assert parts[2].trivial_components == (2,)


def test_scale_and_redecorate():
    net = scale_decoration(theta(1, 1, 2), 3)
    assert net.decoration == {0: 3, 1: 3, 2: 6}
    assert with_decoration(theta(), [0, 2, 2]).decoration == {0: 0, 1: 2, 2: 2}


def test_loop_queries():
    net = dumbbell()
    assert net.is_loop(0) and net.is_loop(1) and not net.is_loop(2)
    assert net.loop_vertices() == {0, 1}
    assert not theta().has_loops()


@settings(max_examples=60, deadline=None)
@given(cubic_graphs, st.data())
def test_flip_is_an_involution(net, data):
    v = data.draw(st.sampled_from(net.vertices))
    assert flip_cyclic_order(flip_cyclic_order(net, v), v) == net


@settings(max_examples=60, deadline=None)
@given(cubic_graphs)
def test_random_cubic_is_valid(net):
    rebuilt = build_network(net.rotation, net.edges, net.decoration)
    assert rebuilt == net
    assert sum(len(c) for c in connected_components(net)) == len(net.vertices)


@settings(max_examples=60, deadline=None)
@given(cubic_graphs)
def test_bridges_disconnect(net):
    for e in find_bridges(net):
        assert not net.is_loop(e)
        u, w = net.endpoints(e)
        adj = {v: set() for v in net.rotation}
        for f, (x, y) in net.edges.items():
            if f != e:
                a, b = net.half_edge_vertex[x], net.half_edge_vertex[y]
                adj[a].add(b)
                adj[b].add(a)
        seen, stack = {u}, [u]
        while stack:
            for nb in adj[stack.pop()]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        assert w not in seen


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 8), st.integers(0, 8), st.integers(0, 8), st.integers(1, 4))
def test_dilation_preserves_admissibility(a, b, c, n):
    net = theta(a, b, c)
    if check_admissible(net):
        assert check_admissible(scale_decoration(net, n))
    if check_admissible(scale_decoration(net, 2)) and not check_admissible(net):
        # doubling can only repair parity
        assert (a + b + c) % 2 == 1
