import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import frozen_network
from spinnet.closed_forms import sign_flip_factor, trivial_eval
from spinnet.graph import (
    InadmissibleError,
    ResourceLimitError,
    disjoint_union,
    dumbbell,
    flip_cyclic_order,
    tetrahedron,
    theta,
    trivial,
    triad_halves,
    with_decoration,
)
from spinnet.penrose import penrose_cost, penrose_evaluate, state_limit, vertex_factorials, vertex_matching


def test_theta_222():
    assert penrose_evaluate(theta(2, 2, 2)).value == -24


@pytest.mark.parametrize("name", ["theta", "theta_flipped", "dumbbell", "tetrahedron"])
def test_matches_bruteforce_oracle(frozen, name):
    for values, expected in frozen["penrose"][name]:
        net = frozen_network(frozen, name, values)
        assert penrose_evaluate(net).value == expected, values


def test_circles(frozen):
    for a, expected in enumerate(frozen["circle"]):
        assert penrose_evaluate(trivial(a)).value == expected == trivial_eval(a)


def test_disjoint_union_multiplies():
    net = disjoint_union(theta(2, 2, 2), tetrahedron(2), trivial(3))
    assert penrose_evaluate(net).value == -24 * 96 * trivial_eval(3)


def test_nonzero_bridge_vanishes():
    assert penrose_evaluate(dumbbell(2, 2, 2)).value == 0
    assert penrose_evaluate(dumbbell(3, 1, 2)).value == 0


def test_inadmissible_raises():
    with pytest.raises(InadmissibleError):
        penrose_evaluate(theta(1, 1, 1))


def test_state_guard(monkeypatch):
    net = tetrahedron(4)
    assert penrose_cost(net) == 24**6
    with pytest.raises(ResourceLimitError):
        penrose_evaluate(net)
    monkeypatch.setenv("SPINNET_STATE_LIMIT", "5")
    assert state_limit() == 5
    with pytest.raises(ResourceLimitError):
        penrose_evaluate(theta(2, 2, 2))


def test_threads_do_not_change_result():
    net = tetrahedron([3, 3, 2, 3, 3, 2])
    assert penrose_evaluate(net, threads=1).value == penrose_evaluate(net, threads=4).value


def test_vertex_factorials():
    assert vertex_factorials(theta(3, 3, 2)) == (2 * 1 * 1) ** 2


@pytest.mark.parametrize("a, b, c", [(2, 2, 2), (3, 2, 1), (4, 2, 2), (0, 3, 3), (5, 4, 3)])
def test_vertex_matching_counts(a, b, c):
    pairs = vertex_matching(a, b, c)
    slots = [s for p in pairs for s in p]
    assert sorted(slots) == sorted([(0, i) for i in range(a)] + [(1, i) for i in range(b)] + [(2, i) for i in range(c)])
    nab, nac, nbc = triad_halves(a, b, c)
    kinds = [tuple(sorted((x[0], y[0]))) for x, y in pairs]
    assert kinds.count((0, 1)) == nab and kinds.count((0, 2)) == nac and kinds.count((1, 2)) == nbc


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 6), st.integers(0, 6), st.integers(0, 6))
def test_vertex_matching_is_noncrossing(a, b, c):
    if (a + b + c) % 2 or a > b + c or b > a + c or c > a + b:
        return
    offset = (0, a, a + b)
    pairs = [tuple(sorted((offset[x[0]] + x[1], offset[y[0]] + y[1]))) for x, y in vertex_matching(a, b, c)]
    for (p, q), (r, s) in itertools.combinations(pairs, 2):
        assert not (p < r < q < s or r < p < s < q)


def _flip_expected(net, v):
    return sign_flip_factor(*net.vertex_decorations(v))


@pytest.mark.parametrize("v", [0, 1])
def test_flip_sign_theta(v):
    for values in itertools.product(range(4), repeat=3):
        net = theta(*values)
        try:
            before = penrose_evaluate(net).value
        except InadmissibleError:
            continue
        after = penrose_evaluate(flip_cyclic_order(net, v)).value
        assert after == _flip_expected(net, v) * before


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=6, max_size=6), st.integers(0, 3))
def test_flip_sign_tetrahedron(values, v):
    net = with_decoration(tetrahedron(), values)
    try:
        before = penrose_evaluate(net).value
    except InadmissibleError:
        return
    after = penrose_evaluate(flip_cyclic_order(net, v)).value
    assert after == _flip_expected(net, v) * before
