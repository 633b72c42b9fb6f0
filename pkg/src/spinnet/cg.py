"""Clebsch-Gordan network evaluation and its normalizations.

A CG network is a cubic graph with a smooth orientation and, at every vertex,
an ordered gate (the two half-edges sharing a direction).  Each vertex carries
the symmetrized delta/epsilon tensor; edges are contracted with the binomial
metric of the compressed basis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .graph import InadmissibleError, NetworkError, SpinNetwork, check_admissible, split_components, triad_halves
from .numbers import Radical, binom, factorial
from .orientation import (
    GateSignage,
    SmoothOrientation,
    canonical_gate_signage,
    find_smooth_orientation,
)
from .penrose import penrose_cost, penrose_evaluate, state_limit, vertex_factorials
from .reductions import bridge_reduce
from .symtensor import SymTensor, contract, float_metric, identity, vertex_numerators, vertex_tensor

ENTRY_LIMIT = 5 * 10**6


@dataclass(frozen=True)
class CgNetwork:
    """Oriented, gated network.

    ``vertices`` maps a vertex to (gate first, gate second, stem) half-edges;
    ``direction`` maps an edge to (tail, head); ``weight`` maps half-edges to
    decorations.  ``legs`` are dangling half-edges, kept as open axes, with
    ``leg_direction[h]`` either "in" (pointing into its vertex) or "out".
    """

    vertices: Mapping[int, tuple[int, int, int]]
    direction: Mapping[int, tuple[int, int]]
    weight: Mapping[int, int]
    trivial_components: tuple[int, ...] = ()
    legs: tuple[int, ...] = ()
    leg_direction: Mapping[int, str] = field(default_factory=dict)

    def __post_init__(self):
        heads = {h for _, h in self.direction.values()}
        tails = {t for t, _ in self.direction.values()}
        for v, (x, y, z) in self.vertices.items():
            dirs = [self.half_edge_direction(h, heads, tails) for h in (x, y, z)]
            if dirs[0] != dirs[1] or dirs[2] == dirs[0]:
                raise NetworkError(f"vertex {v} does not have a valid gate")
            a, b, c = (self.weight[h] for h in (x, y, z))
            if not check_triple(a, b, c):
                raise InadmissibleError(f"inadmissible vertex {v}: {(a, b, c)}")

    def half_edge_direction(self, h, heads=None, tails=None) -> str:
        if heads is None:
            heads = {hd for _, hd in self.direction.values()}
            tails = {t for t, _ in self.direction.values()}
        if h in heads:
            return "in"
        if h in tails:
            return "out"
        try:
            return self.leg_direction[h]
        except KeyError:
            raise NetworkError(f"half-edge {h} is neither an edge end nor a leg") from None

    def is_pi(self, v: int) -> bool:
        return self.half_edge_direction(self.vertices[v][0]) == "in"


def check_triple(a, b, c) -> bool:
    return (a + b + c) % 2 == 0 and abs(a - b) <= c <= a + b


def cg_network(
    net: SpinNetwork,
    orientation: SmoothOrientation | None = None,
    gates: GateSignage | None = None,
) -> CgNetwork:
    """Attach an orientation (default: spanning-tree) and gates (default: canonical)."""
    report = check_admissible(net)
    if not report:
        raise InadmissibleError(f"inadmissible network: {report.violations}")
    if orientation is None:
        orientation = find_smooth_orientation(net)
    if gates is None:
        gates = canonical_gate_signage(net, orientation)
    vertices = {}
    for v in net.vertices:
        x, y = gates.order[v]
        (z,) = [h for h in net.rotation[v] if h not in (x, y)]
        vertices[v] = (x, y, z)
    weight = {h: net.gamma(h) for h in net.half_edge_edge}
    return CgNetwork(vertices, dict(orientation.direction), weight, net.trivial_components)


def _contraction_problem(cg: CgNetwork, build):
    order = sorted(cg.vertices)
    index = {v: i for i, v in enumerate(order)}
    owner = {h: index[v] for v, hs in cg.vertices.items() for h in hs}
    tensors = [build(cg.vertices[v], [cg.weight[h] for h in cg.vertices[v]]) for v in order]
    edges = [((owner[t], t), (owner[h], h)) for _, (t, h) in sorted(cg.direction.items())]
    return tensors, edges


def _trivial_factor(a: int):
    """Trace of the identity on H_a, computed by contraction."""
    return contract([identity(a)], [((0, "in"), (0, "out"))])


def cg_evaluate(cg: CgNetwork, mode: str = "exact", max_entries: int | None = ENTRY_LIMIT):
    """CG value: a Fraction (closed, exact), a float (closed, ``mode="float"``) or a SymTensor (legs)."""
    if mode not in ("exact", "float"):
        raise ValueError(f"unknown mode {mode!r}")
    triv = 1
    for a in cg.trivial_components:
        triv *= _trivial_factor(a)
    if not cg.vertices:
        return float(triv) if mode == "float" else Fraction(triv)

    if cg.legs or mode == "float":
        def build(hs, ws):
            t = vertex_tensor(*ws, labels=hs)
            return t.map(float) if mode == "float" else t

        tensors, edges = _contraction_problem(cg, build)
        metric = float_metric if mode == "float" else binom
        out = contract(tensors, edges, metric=metric, max_entries=max_entries)
        if isinstance(out, SymTensor):
            out = out.transpose(list(cg.legs)).scale(triv)
            return out.map(float) if mode == "float" else out
        return float(out) * float(triv) if mode == "float" else Fraction(out) * triv

    # closed exact: integer numerators, metric p!(a-p)!, one a! per edge at the end
    def build(hs, ws):
        return SymTensor(zip(hs, ws), vertex_numerators(*ws))

    tensors, edges = _contraction_problem(cg, build)
    value = contract(tensors, edges, metric=_integer_metric, max_entries=max_entries)
    denom = math.prod(factorial(cg.weight[t]) for t, _ in cg.direction.values())
    return Fraction(value * triv, denom)


def _integer_metric(a: int, p: int) -> int:
    return factorial(p) * factorial(a - p)


def vertex_norm_square(a: int, b: int, c: int) -> Fraction:
    """Square of the per-vertex factor turning a CG vertex (stem c) into a pi or iota."""
    x, y, z = triad_halves(a, b, c)
    s = (a + b + c) // 2
    return Fraction(factorial(a) * factorial(b) * factorial(c + 1),
                    factorial(s + 1) * factorial(x) * factorial(y) * factorial(z))


def _norm_square(cg: CgNetwork) -> Fraction:
    out = Fraction(1)
    for hs in cg.vertices.values():
        out *= vertex_norm_square(*(cg.weight[h] for h in hs))
    return out


def pi_iota_evaluate(cg: CgNetwork) -> Radical:
    """CG value with every vertex normalized to an isometric pi or iota."""
    value = cg_evaluate(cg)
    if isinstance(value, SymTensor):
        raise ValueError("pi-iota evaluation needs a closed network")
    return Radical.from_rational(value) * Radical.sqrt(_norm_square(cg))


def vertex_dimension_product(cg: CgNetwork) -> int:
    """Product over vertices of dim(v) = stem decoration + 1."""
    return math.prod(cg.weight[hs[2]] + 1 for hs in cg.vertices.values())


def unitary_square_from_cg(cg: CgNetwork) -> Fraction:
    """Exact square of the unitary value from the CG engine (any trivial components included)."""
    value = cg_evaluate(cg)
    sq = value * value * _norm_square(cg) / vertex_dimension_product(cg)
    # a vertex-less circle has unitary value a! (a+1) in magnitude, not a+1
    for a in cg.trivial_components:
        sq *= factorial(a) ** 2
    return sq


@dataclass(frozen=True)
class Evaluation:
    """An exact value whose sign may be unknown (then ``value`` holds the magnitude)."""

    value: object
    sign_known: bool = True
    method: str = ""


def unitary_from_penrose(net: SpinNetwork, limit: int | None = None, threads: int = 1) -> Radical:
    p = penrose_evaluate(net, limit, threads).value
    s = p / vertex_factorials(net)
    theta = Fraction(1)
    for v in net.vertices:
        a, b, c = net.vertex_decorations(v)
        x, y, z = triad_halves(a, b, c)
        t = (a + b + c) // 2
        theta *= Fraction(factorial(t + 1), factorial(x) * factorial(y) * factorial(z))
    return Radical.from_rational(s) / Radical.sqrt(theta)


def _component_unitary(comp: SpinNetwork, limit: int, threads: int) -> tuple[Radical, bool, str]:
    if not comp.rotation:
        (a,) = comp.trivial_components
        return Radical.from_rational(factorial(a + 1) * (-1) ** a), True, "closed-form"
    if penrose_cost(comp) <= limit:
        return unitary_from_penrose(comp, limit, threads), True, "penrose"
    sq = unitary_square_from_cg(cg_network(comp))
    return Radical.sqrt(sq), sq == 0, "cg"


def unitary_evaluate(net: SpinNetwork, limit: int | None = None, threads: int = 1) -> Evaluation:
    """Unitary value via bridge reduction and per-component evaluation.

    Magnitudes of expensive components come from the CG engine; their sign is
    then unknown and the result carries ``sign_known=False``.
    """
    limit = state_limit() if limit is None else limit
    red = bridge_reduce(net)
    if red.zero:
        return Evaluation(Radical.zero(), True, "bridge")
    value, known, methods = red.factor, True, []
    for comp in split_components(red.network):
        u, k, m = _component_unitary(comp, limit, threads)
        value, known = value * u, known and k
        methods.append(m)
        if u.sign == 0:
            return Evaluation(Radical.zero(), True, m)
    if not known:
        value = abs(value)
    return Evaluation(value, known, "+".join(sorted(set(methods))) or "empty")


def theta_product(net: SpinNetwork) -> Fraction:
    out = Fraction(1)
    for v in net.vertices:
        a, b, c = net.vertex_decorations(v)
        x, y, z = triad_halves(a, b, c)
        s = (a + b + c) // 2
        out *= Fraction(factorial(s + 1), factorial(x) * factorial(y) * factorial(z))
    return out


def standard_evaluate(net: SpinNetwork, limit: int | None = None, threads: int = 1) -> Evaluation:
    """Standard value: from the Penrose sum when affordable, else rebuilt from the unitary value."""
    limit = state_limit() if limit is None else limit
    if not check_admissible(net):
        raise InadmissibleError("inadmissible network")
    if penrose_cost(net) <= limit:
        p = penrose_evaluate(net, limit, threads).value
        return Evaluation(p / vertex_factorials(net), True, "penrose")
    u = unitary_evaluate(net, limit, threads)
    s = u.value * Radical.sqrt(theta_product(net))
    exact = s.rational()
    if exact is None:
        raise ArithmeticError("standard value is not rational")
    return Evaluation(exact, u.sign_known, u.method)


@dataclass(frozen=True)
class CrossCheckReport:
    penrose: Fraction
    cg: Fraction
    edge_factorials: int
    mu: int
    ok: bool


class CrossCheckError(AssertionError):
    """The two engines disagree in magnitude."""


def cross_check(
    net: SpinNetwork, orientation=None, gates=None, limit: int | None = None, threads: int = 1
) -> CrossCheckReport:
    """Compare |P| with prod(gamma!) |CG| exactly; record the relative sign."""
    p = penrose_evaluate(net, limit, threads).value
    cg = cg_evaluate(cg_network(net, orientation, gates))
    fact = math.prod(factorial(a) for a in net.decoration.values())
    fact *= math.prod(factorial(a) for a in net.trivial_components)
    ok = abs(p) == fact * abs(cg)
    mu = (1 if p > 0 else -1) * (1 if cg > 0 else -1) if p and cg else 0
    report = CrossCheckReport(p, cg, fact, mu, ok)
    if not ok:
        raise CrossCheckError(f"|P| = {abs(p)} but prod(gamma!)|CG| = {fact * abs(cg)}")
    return report


def schur_constant(cg: CgNetwork) -> Fraction:
    """Proportionality constant of a two-leg network against the identity."""
    if len(cg.legs) != 2:
        raise ValueError("Schur constant needs exactly two legs")
    h_in, h_out = cg.legs
    a, b = cg.weight[h_in], cg.weight[h_out]
    if a != b:
        return Fraction(0)
    t = cg_evaluate(cg)
    trace = sum(binom(a, p) * t[p, p] for p in range(a + 1))
    return Fraction(trace) / (a + 1)


# -- pi / iota operators -----------------------------------------------------


def iota_tensor(m: int, n: int, k: int) -> SymTensor:
    """Raw vertex tensor joining H_m (x) H_n to H_{m+n-2k}, axes ("m", "n", "c").

    Scaled by ``iota_norm(m, n, k)`` it is the isometric injection; read with c
    as input and (m, n) as output it is the conjugate projection.
    """
    return vertex_tensor(m, n, m + n - 2 * k, labels=("m", "n", "c"))


def pi_after_iota(m: int, n: int, k: int, l: int) -> SymTensor:
    """Raw composite H_{m+n-2k} -> H_m (x) H_n -> H_{m+n-2l}, axes ("in", "out")."""
    inj = iota_tensor(m, n, k).relabel({"c": "in"})
    proj = iota_tensor(m, n, l).relabel({"c": "out"})
    return contract([inj, proj], [((0, "m"), (1, "m")), ((0, "n"), (1, "n"))])


def iota_after_pi(m: int, n: int, k: int) -> SymTensor:
    """Raw composite on H_m (x) H_n, axes ("m_in", "n_in", "m_out", "n_out")."""
    proj = iota_tensor(m, n, k).relabel({"m": "m_in", "n": "n_in"})
    inj = iota_tensor(m, n, k).relabel({"m": "m_out", "n": "n_out"})
    return contract([proj, inj], [((0, "c"), (1, "c"))])


def tetrahedron_network(a, b, c, d, e, f) -> SpinNetwork:
    from .graph import tetrahedron

    return tetrahedron([a, b, c, d, e, f])


def tetrahedron_sixj(a, b, c, d, e, f) -> Radical:
    """6-j symbol from the tetrahedral CG value; sign fixed by a parity rule."""
    net = tetrahedron_network(a, b, c, d, e, f)
    cg = cg_network(net)
    value = cg_evaluate(cg)
    if value == 0:
        return Radical.zero()
    sq = value * value * _norm_square(cg) / vertex_dimension_product(cg)
    sign = (1 if value > 0 else -1) * _sixj_sign_correction(a, b, c, d, e, f)
    return Radical.sqrt(sq, sign)


def _sixj_sign_correction(a, b, c, d, e, f) -> int:
    """Parity relating the default tetrahedral CG sign to the standard Wigner sign."""
    return (-1) ** (a + b + d)
