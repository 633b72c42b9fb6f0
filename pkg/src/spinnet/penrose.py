"""Penrose state sum over per-edge strand permutations.

Each edge with decoration a carries a parallel strands and a permutation;
vertices join strands by the unique planar matching.  A state is weighted by
the product of permutation signs times (-2) per closed curve.

Strand slots: at a vertex with rotation (h1, h2, h3) the slots run
counterclockwise around the vertex disc, bundle h1 first.  Slot i (0-based) of
half-edge h travels along its band and arrives at slot ``a - 1 - sigma(i)`` of
the opposite half-edge.
"""

from __future__ import annotations

import itertools
import math
import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .graph import InadmissibleError, ResourceLimitError, SpinNetwork, check_admissible, split_components, triad_halves, triad_violation
from .numbers import factorial

DEFAULT_STATE_LIMIT = 10**6
CHUNK = 1 << 14


def state_limit() -> int:
    env = os.environ.get("SPINNET_STATE_LIMIT")
    return int(env) if env else DEFAULT_STATE_LIMIT


@dataclass(frozen=True)
class StateSumResult:
    value: Fraction
    states_visited: int


def vertex_matching(a: int, b: int, c: int) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Non-crossing matching of the slots around a vertex with bundles (a, b, c).

    Slots are ``(bundle, index)`` with bundle in 0..2 in counterclockwise order
    and index in 0..size-1.  Between consecutive bundles x, y the last slots of x
    pair with the first slots of y, nested around their common corner.
    """
    reason = triad_violation(a, b, c)
    if reason:
        raise ValueError(f"inadmissible triple {(a, b, c)} ({reason})")
    sizes = (a, b, c)
    nab, nac, nbc = triad_halves(a, b, c)
    corner = {0: nab, 1: nbc, 2: nac}  # strands between bundle i and bundle i+1
    pairs = []
    for i in range(3):
        j = (i + 1) % 3
        for t in range(corner[i]):
            pairs.append(((i, sizes[i] - 1 - t), (j, t)))
    return pairs


def _slot_layout(net: SpinNetwork):
    """Global slot numbering and the fixed vertex involution over all slots."""
    base = {}
    n = 0
    for e in net.edge_ids:
        for h in net.edges[e]:
            base[h] = n
            n += net.decoration[e]
    vmatch = np.empty(n, dtype=np.int64)
    for v in net.vertices:
        rot = net.rotation[v]
        sizes = [net.gamma(h) for h in rot]
        for (bi, i), (bj, j) in vertex_matching(*sizes):
            x, y = base[rot[bi]] + i, base[rot[bj]] + j
            vmatch[x], vmatch[y] = y, x
    return base, vmatch, n


@lru_cache(maxsize=None)
def _perm_table(a: int):
    """All permutations of range(a) in lexicographic order, with signs."""
    perms = np.array(list(itertools.permutations(range(a))), dtype=np.int64).reshape(math.factorial(a), a)
    signs = np.array([_perm_sign(p) for p in perms], dtype=np.int64)
    return perms, signs


def _perm_sign(p) -> int:
    seen = [False] * len(p)
    sign = 1
    for i in range(len(p)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = p[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


def _count_cycles(perm: np.ndarray) -> np.ndarray:
    """Cycle counts of a batch of permutations (rows), by pointer doubling."""
    rows, n = perm.shape
    if n == 0:
        return np.zeros(rows, dtype=np.int64)
    # flat indices into the (rows, n) block keep every gather one-dimensional
    offset = (np.arange(rows, dtype=np.int32) * n)[:, None]
    ptr = (perm.astype(np.int32) + offset).ravel()
    label = np.tile(np.arange(n, dtype=np.int32), rows)
    for _ in range(max(1, math.ceil(math.log2(n))) + 1):
        np.minimum(label, label[ptr], out=label)
        ptr = ptr[ptr]
    return (label.reshape(rows, n) == np.arange(n)).sum(axis=1)


def _component_tally(net: SpinNetwork, threads: int = 1) -> tuple[int, int]:
    """Exact state sum and number of states for one connected component."""
    edges = [e for e in net.edge_ids if net.decoration[e] > 1]
    base, vmatch, n = _slot_layout(net)
    # fixed band connections for edges with at most one strand
    fixed_band = np.arange(n, dtype=np.int64)
    for e in net.edge_ids:
        if net.decoration[e] == 1:
            h1, h2 = net.edges[e]
            fixed_band[base[h1]], fixed_band[base[h2]] = base[h2], base[h1]
    tables = [_perm_table(net.decoration[e]) for e in edges]
    radices = [len(t[1]) for t in tables]
    total_states = math.prod(radices)

    def run(start: int, stop: int) -> Counter:
        idx = np.arange(start, stop, dtype=np.int64)
        band = np.broadcast_to(fixed_band, (len(idx), n)).copy()
        sign = np.ones(len(idx), dtype=np.int64)
        rem = idx
        for e, (perms, signs), r in zip(reversed(edges), reversed(tables), reversed(radices)):
            choice = rem % r
            rem = rem // r
            a = net.decoration[e]
            h1, h2 = net.edges[e]
            sigma = perms[choice]
            src = base[h1] + np.arange(a)
            dst = base[h2] + (a - 1 - sigma)
            rows = np.arange(len(idx))[:, None]
            band[rows, src] = dst
            band[rows, dst] = src
            sign *= signs[choice]
        # a closed curve alternates band and vertex connections
        curves = _count_cycles(vmatch[band]) // 2
        counts = np.bincount(2 * curves + (sign < 0))
        return Counter({(-1 if key % 2 else 1, key // 2): int(c) for key, c in enumerate(counts) if c})

    bounds = list(range(0, total_states, CHUNK)) + [total_states]
    spans = list(zip(bounds[:-1], bounds[1:]))
    tally = Counter()
    if threads > 1 and len(spans) > 1:
        with ThreadPoolExecutor(threads) as pool:
            for part in pool.map(lambda s: run(*s), spans):
                tally.update(part)
    else:
        for s in spans:
            tally.update(run(*s))
    value = sum(sgn * cnt * (-2) ** k for (sgn, k), cnt in tally.items())
    return value, total_states


def _trivial_tally(a: int) -> tuple[int, int]:
    """State sum of a vertex-less circle: one permutation, curves = its cycles."""
    perms, signs = _perm_table(a)
    if a == 0:
        return 1, 1
    cycles = _count_cycles(perms)
    tally = Counter(zip(signs.tolist(), cycles.tolist()))
    return sum(s * c * (-2) ** k for (s, k), c in tally.items()), len(signs)


def penrose_cost(net: SpinNetwork) -> int:
    """Largest per-component state count (the guard is applied per component)."""
    costs = [math.prod(factorial(a) for a in comp.decoration.values()) for comp in split_components(net)
             if comp.rotation]
    costs += [factorial(a) for a in net.trivial_components]
    return max(costs, default=1)


def penrose_evaluate(net: SpinNetwork, limit: int | None = None, threads: int = 1) -> StateSumResult:
    """Exact Penrose evaluation, factorized over connected components."""
    report = check_admissible(net)
    if not report:
        raise InadmissibleError(f"inadmissible network: {report.violations}")
    limit = state_limit() if limit is None else limit
    cost = penrose_cost(net)
    if cost > limit:
        raise ResourceLimitError(f"state sum needs {cost} states per component, limit {limit}")
    value, visited = 1, 0
    for comp in split_components(net):
        if comp.rotation:
            v, n = _component_tally(comp, threads)
        else:
            v, n = _trivial_tally(comp.trivial_components[0])
        value *= v
        visited += n
        if value == 0:
            break
    return StateSumResult(Fraction(value), visited)


def vertex_factorials(net: SpinNetwork) -> int:
    """Product over vertices of x! y! z! for the three strand-group sizes."""
    out = 1
    for v in net.vertices:
        for k in triad_halves(*net.vertex_decorations(v)):
            out *= factorial(k)
    return out


def standard_evaluate_from_penrose(net: SpinNetwork, limit: int | None = None, threads: int = 1) -> Fraction:
    return penrose_evaluate(net, limit, threads).value / vertex_factorials(net)
