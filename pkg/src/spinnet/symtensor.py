"""Symmetric tensors in the compressed basis and their contraction.

An axis of weight ``a`` stands for a completely symmetric rank-``a`` tensor over
C^2.  Its ``a + 1`` slots are indexed by ``p``, the number of microscopic indices
equal to 2.  Summing over the ``binom(a, p)`` microscopic tuples of class ``p``
gives the edge metric ``binom(a, p)``.

Storage is sparse: vertex tensors vanish off a weight-conservation hyperplane,
so dictionaries keep contractions at decoration ~50 affordable.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from .graph import ResourceLimitError, triad_halves, triad_violation
from .numbers import binom, factorial

Label = Hashable
Metric = Callable[[int, int], object]


def binom_metric(a: int, p: int) -> int:
    return binom(a, p)


def float_metric(a: int, p: int) -> float:
    return float(binom(a, p))


class SymTensor:
    """Sparse tensor with labeled axes; ``axes`` is a tuple of ``(label, weight)``.

    Zero entries are simply absent from ``data``.
    """

    __slots__ = ("axes", "data")

    def __init__(self, axes: Iterable[tuple[Label, int]], data: dict[tuple[int, ...], object]):
        self.axes = tuple((lab, int(a)) for lab, a in axes)
        labels = [lab for lab, _ in self.axes]
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate axis labels {labels}")
        self.data = {k: v for k, v in data.items() if v != 0}

    @property
    def labels(self) -> list[Label]:
        return [lab for lab, _ in self.axes]

    @property
    def weights(self) -> list[int]:
        return [a for _, a in self.axes]

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(a + 1 for _, a in self.axes)

    def __getitem__(self, idx) -> object:
        if not isinstance(idx, tuple):
            idx = (idx,)
        return self.data.get(idx, 0)

    def __len__(self):
        return len(self.data)

    def __eq__(self, other):
        if not isinstance(other, SymTensor):
            return NotImplemented
        if sorted(self.axes, key=repr) != sorted(other.axes, key=repr):
            return False
        return self.data == other.transpose(self.labels).data

    def __repr__(self):
        return f"SymTensor(axes={self.axes}, nnz={len(self.data)})"

    def scalar(self):
        if self.axes:
            raise ValueError("tensor still has open axes")
        return self.data.get((), 0)

    def transpose(self, labels: Sequence[Label]) -> "SymTensor":
        pos = [self.labels.index(lab) for lab in labels]
        if len(pos) != len(self.axes):
            raise ValueError("transpose needs every label exactly once")
        axes = [self.axes[i] for i in pos]
        return SymTensor(axes, {tuple(k[i] for i in pos): v for k, v in self.data.items()})

    def relabel(self, mapping: dict) -> "SymTensor":
        return SymTensor([(mapping.get(lab, lab), a) for lab, a in self.axes], self.data)

    def map(self, fn: Callable[[object], object]) -> "SymTensor":
        return SymTensor(self.axes, {k: fn(v) for k, v in self.data.items()})

    def scale(self, c) -> "SymTensor":
        return self.map(lambda v: v * c)

    def to_dense(self) -> np.ndarray:
        """Dense object array (exact entries), indexed by multiplicities."""
        out = np.zeros(self.shape, dtype=object)
        for k, v in self.data.items():
            out[k] = v
        return out

    @classmethod
    def from_dense(cls, axes, array) -> "SymTensor":
        arr = np.asarray(array, dtype=object)
        data = {tuple(int(i) for i in idx): arr[idx] for idx in np.ndindex(arr.shape)}
        return cls(axes, data)

    def norm_squared(self, metric: Metric = binom_metric):
        """Self-contraction with the edge metric on every axis."""
        total = 0
        for k, v in self.data.items():
            w = 1
            for (_, a), p in zip(self.axes, k):
                w *= metric(a, p)
            total += v * v * w
        return total


def identity(a: int, labels: tuple[Label, Label] = ("in", "out")) -> SymTensor:
    """Identity map on H_a in the compressed basis: entries ``1/binom(a, p)`` on the diagonal."""
    return SymTensor([(labels[0], a), (labels[1], a)], {(p, p): Fraction(1, binom(a, p)) for p in range(a + 1)})


# -- vertex tensors ----------------------------------------------------------


@lru_cache(maxsize=None)
def vertex_numerators(a: int, b: int, c: int) -> dict[tuple[int, int, int], int]:
    """Integer numerators S(p, q, r) of the symmetrized delta/epsilon vertex.

    Legs a and b form the gate (ordered), c is the stem.  The (a+b-c)/2 epsilon
    strands join a to b; delta strands join a and b to c.  An epsilon with value
    2 at its a-end contributes a sign -1.  The microscopic component is
    ``S / (binom(a,p) binom(b,q) binom(c,r))``.
    """
    reason = triad_violation(a, b, c)
    if reason:
        raise ValueError(f"inadmissible triple {(a, b, c)} ({reason})")
    nab, nac, nbc = triad_halves(a, b, c)
    out = {}
    for p in range(a + 1):
        for q in range(b + 1):
            r = p + q - nab
            if not 0 <= r <= c:
                continue
            total = 0
            for m in range(max(0, p - nac, nab - q), min(nab, p, nab - q + nbc) + 1):
                term = binom(nab, m) * binom(nac, p - m) * binom(nbc, q - nab + m)
                total += -term if m % 2 else term
            if total:
                out[(p, q, r)] = total
    return out


def epsilon_count(a: int, b: int, c: int) -> int:
    """Number of epsilon strands at a vertex with gate legs a, b and stem c."""
    return triad_halves(a, b, c)[0]


@lru_cache(maxsize=None)
def _vertex_fraction_data(a: int, b: int, c: int):
    return {
        (p, q, r): Fraction(s, binom(a, p) * binom(b, q) * binom(c, r))
        for (p, q, r), s in vertex_numerators(a, b, c).items()
    }


def vertex_tensor(a: int, b: int, c: int, gate_order: bool = True, labels=("a", "b", "c")) -> SymTensor:
    """Vertex tensor with gate legs (a, b) and stem c, axes labeled ``labels``.

    ``gate_order=False`` means the gate is read as (b, a); the tensor keeps its
    axis layout and picks up the sign ``(-1)^((a+b-c)/2)``.
    """
    data = _vertex_fraction_data(a, b, c)
    if not gate_order and epsilon_count(a, b, c) % 2:
        data = {k: -v for k, v in data.items()}
    return SymTensor(zip(labels, (a, b, c)), data)


# -- contraction -------------------------------------------------------------


def _merge(A: SymTensor, B: SymTensor | None, pairs, metric: Metric) -> SymTensor:
    """Contract axis pairs of A with B (or of A with itself if B is None)."""
    if B is None:
        pos = {lab: i for i, lab in enumerate(A.labels)}
        ip = [(pos[x], pos[y], w) for x, y, w in pairs]
        drop = {i for i, j, _ in ip} | {j for _, j, _ in ip}
        keep = [i for i in range(len(A.axes)) if i not in drop]
        out: dict = defaultdict(int)
        for k, v in A.data.items():
            w = 1
            for i, j, a in ip:
                if k[i] != k[j]:
                    break
                w *= metric(a, k[i])
            else:
                out[tuple(k[i] for i in keep)] += v * w
        return SymTensor([A.axes[i] for i in keep], out)

    pa = {lab: i for i, lab in enumerate(A.labels)}
    pb = {lab: i for i, lab in enumerate(B.labels)}
    sa = [pa[x] for x, _, _ in pairs]
    sb = [pb[y] for _, y, _ in pairs]
    ws = [w for _, _, w in pairs]
    ka = [i for i in range(len(A.axes)) if i not in sa]
    kb = [i for i in range(len(B.axes)) if i not in sb]
    groups = defaultdict(list)
    for k, v in B.data.items():
        groups[tuple(k[i] for i in sb)].append((tuple(k[i] for i in kb), v))
    out = defaultdict(int)
    for k, v in A.data.items():
        key = tuple(k[i] for i in sa)
        group = groups.get(key)
        if not group:
            continue
        w = v
        for a, p in zip(ws, key):
            w *= metric(a, p)
        rest = tuple(k[i] for i in ka)
        for restb, vb in group:
            out[rest + restb] += w * vb
    return SymTensor([A.axes[i] for i in ka] + [B.axes[i] for i in kb], out)


def plan_contraction(shapes: Sequence[Sequence[tuple[Label, int]]], edges: Sequence[tuple]) -> list[tuple[int, int]]:
    """Greedy pairwise merge order.

    ``shapes[i]`` lists the axes of tensor i; ``edges`` lists
    ``((i, label), (j, label))`` contractions.  Returns merges ``(x, y)`` of node
    ids; merge number t creates node ``len(shapes) + t``.  Each step picks the
    merge with the smallest dense size of the resulting open axes, ties broken
    by the lowest edge index joining the pair.  Disconnected pieces are merged
    last as outer products.
    """
    nodes = {i: {(i, lab): a for lab, a in shape} for i, shape in enumerate(shapes)}
    owner = {(i, lab): i for i, shape in enumerate(shapes) for lab, _ in shape}
    edge_keys = [(tuple(x), tuple(y)) for x, y in edges]
    contracted = {k for pair in edge_keys for k in pair}
    plan = []
    nxt = len(shapes)
    while len(nodes) > 1:
        best = None
        candidates = {}
        for eid, (x, y) in enumerate(edge_keys):
            u, v = owner[x], owner[y]
            if u != v:
                pair = (min(u, v), max(u, v))
                candidates.setdefault(pair, eid)
        if not candidates:
            ids = sorted(nodes)
            candidates = {(ids[0], ids[1]): len(edge_keys)}
        for (u, v), eid in candidates.items():
            open_axes = [a for k, a in itertools.chain(nodes[u].items(), nodes[v].items())
                         if k not in contracted or owner[_partner(edge_keys, k)] not in (u, v)]
            size = math.prod(a + 1 for a in open_axes)
            key = (size, eid)
            if best is None or key < best[0]:
                best = (key, u, v)
        _, u, v = best
        merged = {**nodes.pop(u), **nodes.pop(v)}
        for k in merged:
            owner[k] = nxt
        nodes[nxt] = merged
        plan.append((u, v))
        nxt += 1
    return plan


def _partner(edge_keys, k):
    for x, y in edge_keys:
        if x == k:
            return y
        if y == k:
            return x
    raise KeyError(k)


def contract(
    tensors: Sequence[SymTensor],
    edges: Sequence[tuple],
    metric: Metric = binom_metric,
    plan: Sequence[tuple[int, int]] | None = None,
    max_entries: int | None = None,
):
    """Contract ``tensors`` along ``edges``, each ``((i, label), (j, label))``.

    Every edge sums ``metric(a, p) * X[..p..] * Y[..p..]`` over its weight-``a``
    axis pair.  Returns a scalar when nothing stays open, else a SymTensor whose
    axes keep their original labels.  ``max_entries`` bounds the number of
    nonzero entries of any intermediate tensor.
    """
    shapes = [t.axes for t in tensors]
    tensors = [t.relabel({lab: (i, lab) for lab in t.labels}) for i, t in enumerate(tensors)]
    weight = {}
    for t in tensors:
        weight.update(dict(t.axes))
    edge_keys = []
    for x, y in edges:
        x, y = tuple(x), tuple(y)
        if x not in weight or y not in weight:
            raise ValueError(f"contraction edge {x}-{y} refers to a missing axis")
        if weight[x] != weight[y]:
            raise ValueError(f"axis mismatch on edge {x}-{y}: {weight[x]} vs {weight[y]}")
        edge_keys.append((x, y))
    partner = {}
    for x, y in edge_keys:
        if x in partner or y in partner:
            raise ValueError("an axis appears in two contraction edges")
        partner[x], partner[y] = y, x

    if plan is None:
        plan = plan_contraction(shapes, edge_keys)
    nodes = dict(enumerate(tensors))
    nxt = len(tensors)

    def self_pairs(t):
        labs = set(t.labels)
        done, pairs = set(), []
        for lab in t.labels:
            other = partner.get(lab)
            if other in labs and lab not in done:
                done |= {lab, other}
                pairs.append((lab, other, weight[lab]))
        return pairs

    for i, t in list(nodes.items()):
        sp = self_pairs(t)
        if sp:
            nodes[i] = _merge(t, None, sp, metric)
    for u, v in plan:
        A, B = nodes.pop(u), nodes.pop(v)
        bl = set(B.labels)
        pairs = [(lab, partner[lab], weight[lab]) for lab in A.labels if partner.get(lab) in bl]
        merged = _merge(A, B, pairs, metric)
        if max_entries is not None and len(merged) > max_entries:
            raise ResourceLimitError(f"intermediate tensor exceeds {max_entries} entries")
        sp = self_pairs(merged)
        if sp:
            merged = _merge(merged, None, sp, metric)
        nodes[nxt] = merged
        nxt += 1
    (result,) = nodes.values()
    if not result.axes:
        return result.data.get((), 0)
    labels = [lab[1] for lab in result.labels]
    if len(set(labels)) != len(labels):
        raise ValueError("open axes of different tensors share a label")
    return result.relabel({lab: lab[1] for lab in result.labels})


# -- microscopic oracle ------------------------------------------------------

MICRO_WIRE_LIMIT = 40


class MicroDiagram:
    """Network of microscopic wires (values 1, 2) joined by deltas, epsilons and symmetrizers.

    A symmetrizer on ``a`` wires in and ``a`` wires out is the average of the
    ``a!`` permutation maps.  ``legs`` name groups of open wires that become the
    axes of the compressed result.
    """

    def __init__(self):
        self.atoms: list[tuple[str, tuple[int, ...]]] = []
        self.legs: list[tuple[Label, tuple[int, ...]]] = []
        self.n_wires = 0

    def wires(self, k: int) -> list[int]:
        out = list(range(self.n_wires, self.n_wires + k))
        self.n_wires += k
        return out

    def delta(self, u: int, v: int):
        self.atoms.append(("delta", (u, v)))

    def epsilon(self, u: int, v: int):
        """epsilon with first index on ``u``: (1,2) -> +1, (2,1) -> -1."""
        self.atoms.append(("eps", (u, v)))

    def symmetrizer(self, ins: Sequence[int], outs: Sequence[int]):
        if len(ins) != len(outs):
            raise ValueError("symmetrizer needs as many inputs as outputs")
        self.atoms.append(("sym", tuple(ins) + tuple(outs)))

    def leg(self, label: Label, wires: Sequence[int]):
        self.legs.append((label, tuple(wires)))


@lru_cache(maxsize=None)
def _sym_array(a: int) -> np.ndarray:
    """a! times the symmetrizer, as an integer array over 2a binary indices."""
    arr = np.zeros((2,) * (2 * a), dtype=np.int64)
    for perm in itertools.permutations(range(a)):
        for ins in itertools.product((0, 1), repeat=a):
            outs = tuple(ins[perm[i]] for i in range(a))
            arr[ins + outs] += 1
    return arr


_DELTA = np.eye(2, dtype=np.int64)
_EPS = np.array([[0, 1], [-1, 0]], dtype=np.int64)


def micro_contract(diagram: MicroDiagram):
    """Brute-force value of a microscopic diagram.

    Returns a Fraction for closed diagrams, else a SymTensor over ``diagram.legs``
    read at the representative index tuple with the first ``p`` wires equal to 2.
    """
    if diagram.n_wires > MICRO_WIRE_LIMIT:
        raise ValueError(f"microscopic diagram too large ({diagram.n_wires} wires)")
    operands, denom = [], 1
    for kind, ws in diagram.atoms:
        if kind == "delta":
            operands += [_DELTA, list(ws)]
        elif kind == "eps":
            operands += [_EPS, list(ws)]
        else:
            a = len(ws) // 2
            operands += [_sym_array(a), list(ws)]
            denom *= factorial(a)
    open_wires = [w for _, ws in diagram.legs for w in ws]
    if len(set(open_wires)) != len(open_wires):
        raise ValueError("a wire belongs to two legs")
    if not operands:
        operands = [np.ones((), dtype=np.int64), []]
    full = np.einsum(*operands, open_wires, optimize="greedy")
    if not diagram.legs:
        return Fraction(int(full), denom)
    data = {}
    sizes = [len(ws) for _, ws in diagram.legs]
    for ps in itertools.product(*(range(k + 1) for k in sizes)):
        idx = []
        for p, k in zip(ps, sizes):
            idx += [1] * p + [0] * (k - p)
        data[ps] = Fraction(int(full[tuple(idx)]), denom)
    return SymTensor([(lab, len(ws)) for lab, ws in diagram.legs], data)


def micro_vertex(a: int, b: int, c: int, labels=("a", "b", "c")) -> MicroDiagram:
    """Microscopic diagram of a vertex with gate (a, b), stem c and symmetrized legs."""
    nab, nac, nbc = triad_halves(a, b, c)
    d = MicroDiagram()
    wa, wb, wc = d.wires(a), d.wires(b), d.wires(c)
    oa, ob, oc = d.wires(a), d.wires(b), d.wires(c)
    for i in range(nab):
        d.epsilon(wa[i], wb[i])
    for i in range(nac):
        d.delta(wa[nab + i], wc[i])
    for i in range(nbc):
        d.delta(wb[nab + i], wc[nac + i])
    for w, o in ((wa, oa), (wb, ob), (wc, oc)):
        if w:
            d.symmetrizer(w, o)
    for lab, o in zip(labels, (oa, ob, oc)):
        d.leg(lab, o)
    return d
