"""Closed formulas: theta values, growth factors, coefficients, 6-j symbols, asymptotics."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .graph import is_admissible_triple, triad_halves, triad_violation
from .numbers import Radical, binom, factorial


def _require(a: int, b: int, c: int):
    reason = triad_violation(a, b, c)
    if reason:
        raise ValueError(f"inadmissible triple {(a, b, c)} ({reason})")


def theta_cg(a: int, b: int, c: int) -> Fraction:
    """CG value of the theta graph."""
    _require(a, b, c)
    x, y, z = triad_halves(a, b, c)
    s = (a + b + c) // 2
    return Fraction(factorial(s + 1) * factorial(x) * factorial(y) * factorial(z),
                    factorial(a) * factorial(b) * factorial(c))


def theta_big(a: int, b: int, c: int) -> Fraction:
    """Per-vertex normalizer (s+1)!/(x! y! z!) of the unitary evaluation."""
    _require(a, b, c)
    x, y, z = triad_halves(a, b, c)
    s = (a + b + c) // 2
    return Fraction(factorial(s + 1), factorial(x) * factorial(y) * factorial(z))


@dataclass(frozen=True)
class LogForm:
    """Exact logarithm ``sum(coeff * log(base))`` with rational coefficients and integer bases."""

    terms: tuple[tuple[Fraction, int], ...]

    def __float__(self):
        return float(sum(float(c) * math.log(b) for c, b in self.terms))

    def __add__(self, other: "LogForm") -> "LogForm":
        return LogForm(self.terms + other.terms).simplified()

    def scaled(self, k) -> "LogForm":
        return LogForm(tuple((Fraction(k) * c, b) for c, b in self.terms)).simplified()

    def simplified(self) -> "LogForm":
        """Collect terms over prime bases."""
        acc: dict[int, Fraction] = {}
        for c, b in self.terms:
            for p, e in _factorize(b).items():
                acc[p] = acc.get(p, Fraction(0)) + c * e
        return LogForm(tuple((c, p) for p, c in sorted(acc.items()) if c))

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*log({b})" for c, b in self.terms)


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def beta_log(a: int, b: int, c: int) -> LogForm:
    """log of s^s / (x^x y^y z^z), with 0^0 = 1."""
    _require(a, b, c)
    x, y, z = triad_halves(a, b, c)
    s = (a + b + c) // 2
    terms = [(Fraction(s), s)] if s else []
    terms += [(Fraction(-k), k) for k in (x, y, z) if k]
    return LogForm(tuple(terms)).simplified()


def beta(a: int, b: int, c: int) -> Fraction:
    """Exact s^s / (x^x y^y z^z); Python's 0**0 == 1 matches the convention."""
    _require(a, b, c)
    x, y, z = triad_halves(a, b, c)
    s = (a + b + c) // 2
    return Fraction(s**s, x**x * y**y * z**z)


def trivial_eval(a: int) -> int:
    """Penrose value (-1)^a (a+1)! of a vertex-less circle."""
    return (-1) ** a * factorial(a + 1)


def loop_cg(a: int) -> int:
    return a + 1


def dumbbell_unitary(a: int, b: int, c: int) -> Radical:
    if c != 0:
        return Radical.zero()
    return Radical.sqrt((a + 1) * (b + 1), (-1) ** (a + b))


def sign_flip_factor(a: int, b: int, c: int) -> int:
    return (-1) ** ((a * (a - 1) + b * (b - 1) + c * (c - 1)) // 2)


def _check_k(m: int, n: int, k: int):
    if not 0 <= k <= min(m, n):
        raise ValueError(f"k={k} out of range for m={m}, n={n}")


def gordan_coeff(m: int, n: int, k: int) -> Fraction:
    _check_k(m, n, k)
    return Fraction(binom(m, k) * binom(n, k), binom(m + n - k + 1, k))


def clebsch_coeff(m: int, n: int, k: int) -> Fraction:
    _check_k(m, n, k)
    return Fraction(
        factorial(k) * factorial(m + n - k + 1) * factorial(m - k) * factorial(n - k),
        factorial(m) * factorial(n) * factorial(m + n - 2 * k + 1),
    )


def iota_norm(m: int, n: int, k: int) -> Radical:
    """Scale turning the raw vertex tensor into the isometric injection."""
    return Radical.sqrt(1 / clebsch_coeff(m, n, k))


def sixj_triads(a, b, c, d, e, f) -> list[tuple[int, int, int]]:
    return [(a, b, c), (a, e, f), (d, b, f), (d, e, c)]


def sixj_admissible(a, b, c, d, e, f) -> bool:
    return all(is_admissible_triple(*t) for t in sixj_triads(a, b, c, d, e, f))


def sixj(a: int, b: int, c: int, d: int, e: int, f: int) -> Radical:
    """Wigner 6-j symbol {a/2 b/2 c/2; d/2 e/2 f/2} from the tetrahedral CG network."""
    from .cg import tetrahedron_sixj

    for t in sixj_triads(a, b, c, d, e, f):
        _require(*t)
    return tetrahedron_sixj(a, b, c, d, e, f)


OMEGA = math.acos(1 / 3)


def ponzano_regge(n: int) -> float:
    """Leading asymptotic of the regular 6-j symbol {n n n; n n n}."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return -math.cos(6 * (n + 0.5) * OMEGA - math.pi / 4) / (2**0.25 * math.sqrt(math.pi) * n**1.5)


def drum_bound(decorations: Sequence[int]) -> Fraction:
    """(min a_i + 1)^2 / prod(a_i + 1) for the circle decorations of a drum."""
    decorations = list(decorations)
    if not decorations:
        raise ValueError("drum needs at least one circle decoration")
    return Fraction((min(decorations) + 1) ** 2, math.prod(a + 1 for a in decorations))
