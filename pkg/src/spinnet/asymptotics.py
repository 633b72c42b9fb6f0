"""Series of dilated standard evaluations and spectral-radius estimates."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .cg import cg_evaluate, cg_network
from .closed_forms import LogForm, beta_log
from .graph import InadmissibleError, SpinNetwork, check_admissible, scale_decoration, triad_halves
from .numbers import factorial, format_decimal
from .penrose import penrose_cost, penrose_evaluate, state_limit
from .reductions import BridgeReduction, bridge_reduce

__all__ = [
    "BridgeReduction",
    "GrowthReport",
    "RhoEstimate",
    "SeriesRow",
    "SeriesTable",
    "bridge_reduce",
    "estimate_rho",
    "polynomial_growth_check",
    "rho_upper_bound",
    "series_coefficients",
    "standard_row",
]

RHO_TOLERANCE = 0.05


@dataclass(frozen=True)
class SeriesRow:
    n: int
    value: object  # Fraction (exact) or float magnitude
    log_abs: float  # log|value|, -inf for zero
    sign_known: bool
    mode: str


@dataclass
class SeriesTable:
    rows: list[SeriesRow]
    upper_bound_log: float | None = None

    def values(self) -> list:
        return [r.value for r in self.rows]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "value", "mode"])
        for r in self.rows:
            if r.mode == "exact":
                shown = str(r.value) if r.sign_known else f"+/-{abs(r.value)}"
            else:
                shown = repr(r.value)
            writer.writerow([r.n, shown, r.mode])
        return buf.getvalue()


def _log_abs_fraction(x: Fraction) -> float:
    if x == 0:
        return -math.inf
    x = abs(x)
    # stays finite for values far beyond the float range
    return math.log(x.numerator) - math.log(x.denominator)


def _standard_log_factor(net: SpinNetwork) -> float:
    """log of prod(gamma!) / prod(x! y! z!), the CG -> standard magnitude factor."""
    out = sum(math.lgamma(a + 1) for a in net.decoration.values())
    out += sum(math.lgamma(a + 1) for a in net.trivial_components)
    for v in net.vertices:
        out -= sum(math.lgamma(k + 1) for k in triad_halves(*net.vertex_decorations(v)))
    return out


def _standard_exact_factor(net: SpinNetwork) -> Fraction:
    num = math.prod(factorial(a) for a in net.decoration.values())
    num *= math.prod(factorial(a) for a in net.trivial_components)
    den = 1
    for v in net.vertices:
        for k in triad_halves(*net.vertex_decorations(v)):
            den *= factorial(k)
    return Fraction(num, den)


def standard_row(net: SpinNetwork, n: int, mode: str = "exact", limit: int | None = None) -> SeriesRow:
    """One coefficient of the dilation series: magnitude from CG, sign from Penrose if affordable."""
    scaled = scale_decoration(net, n)
    limit = state_limit() if limit is None else limit
    if mode == "exact":
        if penrose_cost(scaled) <= limit:
            s = penrose_evaluate(scaled, limit).value / _vertex_halves_factorial(scaled)
            return SeriesRow(n, s, _log_abs_fraction(s), True, mode)
        cg = cg_evaluate(cg_network(scaled))
        s = abs(cg) * _standard_exact_factor(scaled)
        return SeriesRow(n, s, _log_abs_fraction(s), s == 0, mode)
    if mode == "float":
        cg = cg_evaluate(cg_network(scaled), mode="float")
        if cg == 0:
            return SeriesRow(n, 0.0, -math.inf, True, mode)
        log_abs = math.log(abs(cg)) + _standard_log_factor(scaled)
        value = math.exp(log_abs) if log_abs < 700 else math.inf
        return SeriesRow(n, value, log_abs, False, mode)
    raise ValueError(f"unknown mode {mode!r}")


def _vertex_halves_factorial(net: SpinNetwork) -> int:
    out = 1
    for v in net.vertices:
        for k in triad_halves(*net.vertex_decorations(v)):
            out *= factorial(k)
    return out


def series_coefficients(net: SpinNetwork, nmax: int, mode: str = "exact", limit: int | None = None) -> SeriesTable:
    """Rows n = 0..nmax of the standard evaluation of the dilation by n."""
    report = check_admissible(net)
    if not report:
        raise InadmissibleError(f"inadmissible network: {report.violations}")
    rows = [standard_row(net, n, mode, limit) for n in range(nmax + 1)]
    return SeriesTable(rows, float(rho_upper_bound(net)))


def rho_upper_bound(net: SpinNetwork) -> LogForm:
    """Sum over vertices of half the log growth factor beta."""
    total = LogForm(())
    for v in net.vertices:
        total = total + beta_log(*net.vertex_decorations(v)).scaled(Fraction(1, 2))
    return total


@dataclass(frozen=True)
class RhoEstimate:
    log_rho_ratio: float
    log_rho_root: float
    n_used: int
    stride: int
    upper_bound_log: float | None = None

    def within_bound(self, tol: float = RHO_TOLERANCE) -> bool:
        if self.upper_bound_log is None:
            return True
        return max(self.log_rho_ratio, self.log_rho_root) <= self.upper_bound_log + tol

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


DEFAULT_WINDOW = 3


def _table_logs(table) -> tuple[list[float], float | None]:
    if isinstance(table, SeriesTable):
        return [r.log_abs for r in table.rows], table.upper_bound_log
    logs = []
    for x in table:
        if isinstance(x, float):
            logs.append(math.log(abs(x)) if x else -math.inf)
        else:
            logs.append(_log_abs_fraction(Fraction(x)))
    return logs, None


def estimate_rho(table: SeriesTable | list, stride: int | None = None, window: int = DEFAULT_WINDOW) -> RhoEstimate:
    """Ratio and root estimates of log rho from the tail of a series.

    Let N be the last row with a nonzero coefficient.  The ratio estimate is
    the smallest of ``log|a_N / a_{N-j*stride}| / (j*stride)`` for
    j = 1..window, skipping zero rows; ``window=1`` is the plain ratio test.
    Taking the smallest slope keeps an oscillating series from reporting a
    huge ratio whenever an earlier row sits near a sign change.  The default
    stride is 1, or 2 when row N-1 vanishes (parity zeros).  The root estimate
    is ``log|a_N| / N``.
    """
    logs, bound = _table_logs(table)
    nonzero = [n for n, x in enumerate(logs) if x > -math.inf and n > 0]
    if len(nonzero) < 5:
        raise ValueError("need at least five nonzero rows")
    n = nonzero[-1]
    if stride is None:
        stride = 1 if logs[n - 1] > -math.inf else 2
    if stride < 1 or window < 1:
        raise ValueError("stride and window must be positive")
    slopes = [
        (logs[n] - logs[n - j * stride]) / (j * stride)
        for j in range(1, window + 1)
        if n - j * stride >= 0 and logs[n - j * stride] > -math.inf
    ]
    if not slopes:
        raise ValueError("no nonzero earlier row at this stride")
    return RhoEstimate(min(slopes), logs[n] / n, n, stride, bound)


@dataclass(frozen=True)
class GrowthReport:
    exponents: list[tuple[int, float]] = field(default_factory=list)
    slope: float = 0.0
    polynomial: bool = True


def polynomial_growth_check(net: SpinNetwork, nmax: int, degree_cap: float = 10.0) -> GrowthReport:
    """Fit log|U(n gamma)| against log n and flag super-polynomial growth.

    The unitary magnitude is rebuilt from the standard series; the local slope
    between consecutive nonzero rows should settle, and ``log|U|/log n`` must
    stay below ``degree_cap``.
    """
    from .cg import unitary_evaluate

    points = []
    for n in range(1, nmax + 1):
        u = unitary_evaluate(scale_decoration(net, n)).value
        if u.sign:
            points.append((n, 0.5 * _log_abs_fraction(u.square)))
    if len(points) < 2:
        return GrowthReport(points, 0.0, True)
    xs = [math.log(n) for n, _ in points]
    ys = [y for _, y in points]
    mx, my = sum(xs) / len(xs), sum(ys) / len(ys)
    sxx = sum((x - mx) ** 2 for x in xs)
    slope = sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sxx if sxx else 0.0
    # exponential growth shows up as ratios y/n bounded away from zero
    tail_rate = ys[-1] / points[-1][0]
    polynomial = slope <= degree_cap and tail_rate < 0.5 * math.log(2)
    return GrowthReport(points, slope, polynomial)


def summary_json(table: SeriesTable, estimate: RhoEstimate) -> str:
    data = asdict(estimate)
    data["rows"] = len(table.rows)
    data["last_value"] = format_decimal(Fraction(table.rows[-1].value)) if table.rows[-1].mode == "exact" else repr(table.rows[-1].value)
    return json.dumps(data, sort_keys=True)
