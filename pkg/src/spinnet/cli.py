"""Command-line interface: ``spinnet <command> ...``.

Exit codes are 0 on success, 1 for domain errors (inadmissible input, failed
cross-check), 2 for malformed files or arguments and 3 when a resource guard
trips.
"""

from __future__ import annotations

import argparse
import inspect
import itertools
import json
import math
import sys
import time
from dataclasses import asdict
from fractions import Fraction

from . import asymptotics
from .cg import (
    CrossCheckError,
    cg_evaluate,
    cg_network,
    cross_check,
    standard_evaluate,
    unitary_evaluate,
    unitary_from_penrose,
    unitary_square_from_cg,
)
from .closed_forms import sixj
from .graph import (
    FAMILIES,
    InadmissibleError,
    NetworkError,
    ResourceLimitError,
    check_admissible,
    generate,
    is_admissible_triple,
    with_decoration,
)
from .netfile import NetworkDocument, SchemaError, parse_network, serialize_network
from .numbers import Radical, factorial, format_decimal
from .orientation import canonical_gate_signage, find_smooth_orientation
from .penrose import penrose_evaluate, vertex_factorials

EXIT_OK, EXIT_DOMAIN, EXIT_SCHEMA, EXIT_RESOURCE = 0, 1, 2, 3


class UsageError(Exception):
    """Bad command-line arguments (reported with the schema exit code)."""


def format_rational(x: Fraction, sign_known: bool = True) -> str:
    x = Fraction(x)
    return str(x) if sign_known or x == 0 else f"+/-{abs(x)}"


def format_radical(r: Radical, sign_known: bool = True) -> str:
    if sign_known or r.sign == 0:
        return r.format()
    return f"+/-sqrt({r.square}) {format_decimal(abs(r))}"


def _read(path: str) -> NetworkDocument:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror}") from None
    return parse_network(text)


def _cg_of(doc: NetworkDocument):
    return cg_network(doc.network, doc.orientation, doc.gates)


# commands ------------------------------------------------------------------

def cmd_check(args) -> int:
    net = _read(args.file).network
    report = check_admissible(net)
    if report:
        print("admissible")
        return EXIT_OK
    for line in report.violations:
        print(line)
    return EXIT_DOMAIN


def _parse_param(text: str):
    if "=" not in text:
        raise UsageError(f"parameter {text!r} is not key=value")
    key, value = text.split("=", 1)
    try:
        items = [int(x) for x in value.split(",")]
    except ValueError:
        raise UsageError(f"parameter {key}: {value!r} is not an integer list") from None
    return key, items[0] if len(items) == 1 and "," not in value else items


def cmd_gen(args) -> int:
    params = dict(_parse_param(p) for p in args.params)
    maker = FAMILIES.get(args.family)
    if maker is not None and "seed" in inspect.signature(maker).parameters:
        params.setdefault("seed", args.seed)
    try:
        net = generate(args.family, **params)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.gamma is not None:
        if args.gamma < 0:
            raise UsageError("--gamma must be nonnegative")
        net = with_decoration(net, {e: args.gamma for e in net.edges})
        if net.trivial_components:
            net = type(net)(net.rotation, net.edges, net.decoration, (args.gamma,) * len(net.trivial_components))
    sys.stdout.write(serialize_network(net))
    return EXIT_OK


def cmd_orient(args) -> int:
    net = _read(args.file).network
    orientation = find_smooth_orientation(net)
    gates = canonical_gate_signage(net, orientation)
    sys.stdout.write(serialize_network(net, orientation, gates))
    return EXIT_OK


def _eval_penrose(doc, norm, threads):
    net = doc.network
    if norm == "P":
        return format_rational(penrose_evaluate(net, threads=threads).value)
    if norm == "S":
        return format_rational(penrose_evaluate(net, threads=threads).value / vertex_factorials(net))
    if norm == "U":
        return format_radical(unitary_from_penrose(net, threads=threads))
    raise UsageError("the Penrose method has no CG normalization")


def _eval_cg(doc, norm):
    net = doc.network
    cg = _cg_of(doc)
    if norm == "CG":
        return format_rational(cg_evaluate(cg))
    if norm == "U":
        return format_radical(Radical.sqrt(unitary_square_from_cg(cg)), False)
    p = abs(cg_evaluate(cg)) * math.prod(factorial(a) for a in list(net.decoration.values()) + list(net.trivial_components))
    if norm == "P":
        return format_rational(p, False)
    return format_rational(p / vertex_factorials(net), False)


def _eval_auto(doc, norm, threads):
    net = doc.network
    if norm == "U":
        ev = unitary_evaluate(net, threads=threads)
        return format_radical(ev.value, ev.sign_known)
    if norm == "CG":
        return format_rational(cg_evaluate(_cg_of(doc)))
    ev = standard_evaluate(net, threads=threads)
    value = ev.value if norm == "S" else ev.value * vertex_factorials(net)
    return format_rational(value, ev.sign_known)


def cmd_eval(args) -> int:
    doc = _read(args.file)
    report = check_admissible(doc.network)
    if not report:
        raise InadmissibleError(f"inadmissible network: {report.violations}")
    if args.method == "penrose":
        out = _eval_penrose(doc, args.norm, args.threads)
    elif args.method == "cg":
        out = _eval_cg(doc, args.norm)
    else:
        out = _eval_auto(doc, args.norm, args.threads)
    print(out)
    return EXIT_OK


def cmd_verify(args) -> int:
    doc = _read(args.file)
    net = doc.network
    edges = net.edge_ids
    checked = failed = 0
    for values in itertools.product(range(args.max_gamma + 1), repeat=len(edges)):
        trial = with_decoration(net, dict(zip(edges, values)))
        if not check_admissible(trial):
            continue
        checked += 1
        label = ",".join(map(str, values))
        try:
            rep = cross_check(trial, doc.orientation, doc.gates, threads=args.threads)
        except CrossCheckError as exc:
            failed += 1
            print(f"{label} MISMATCH {exc}")
            continue
        print(f"{label} P={rep.penrose} CG={rep.cg} mu={rep.mu}")
    print(f"checked {checked} decorations, {failed} mismatches")
    return EXIT_OK if failed == 0 else EXIT_DOMAIN


def cmd_sixj(args) -> int:
    a, b, c, d, e, f = args.spins
    if min(args.spins) < 0:
        raise UsageError("decorations must be nonnegative")
    for triad in ((a, b, c), (a, e, f), (d, b, f), (d, e, c)):
        if not is_admissible_triple(*triad):
            raise InadmissibleError(f"inadmissible triad {triad}")
    print(sixj(a, b, c, d, e, f).format())
    return EXIT_OK


def _series(args, mode):
    net = _read(args.file).network
    if args.nmax < 0:
        raise UsageError("--nmax must be nonnegative")
    return asymptotics.series_coefficients(net, args.nmax, mode), net


def cmd_series(args) -> int:
    table, _ = _series(args, "float" if args.float else "exact")
    sys.stdout.write(table.to_csv())
    return EXIT_OK


def cmd_rho(args) -> int:
    table, net = _series(args, "exact" if args.exact else "float")
    try:
        est = asymptotics.estimate_rho(table, args.stride, args.window)
    except ValueError as exc:
        raise InadmissibleError(str(exc)) from None
    data = asdict(est)
    data["upper_bound"] = str(asymptotics.rho_upper_bound(net))
    data["within_bound"] = est.within_bound()
    print(json.dumps(data, sort_keys=True))
    return EXIT_OK


# parser ----------------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    # defaults are suppressed so the flags work before or after the command
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="report errors as JSON")
    p.add_argument("--threads", type=int, default=argparse.SUPPRESS, help="worker threads for state sums")
    p.add_argument("--timings", action="store_true", default=argparse.SUPPRESS, help="print elapsed time to stderr")
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for randomized generators")
    return p


GLOBAL_DEFAULTS = {"json": False, "threads": 1, "timings": False, "seed": 0}


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="spinnet", description="Evaluate classical SU(2) spin networks.", parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="admissibility report")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("gen", parents=[common], help="emit a network file for a named family")
    p.add_argument("family", choices=sorted(FAMILIES))
    p.add_argument("params", nargs="*", metavar="key=value")
    p.add_argument("--gamma", type=int, help="decorate every edge with this value")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("orient", parents=[common], help="add a smooth orientation and canonical gates")
    p.add_argument("file")
    p.set_defaults(func=cmd_orient)

    p = sub.add_parser("eval", parents=[common], help="evaluate a network")
    p.add_argument("file")
    p.add_argument("--method", choices=["auto", "penrose", "cg"], default="auto")
    p.add_argument("--norm", choices=["P", "S", "U", "CG"], default="P")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify", parents=[common], help="cross-check Penrose against CG on all small decorations")
    p.add_argument("file")
    p.add_argument("--max-gamma", type=int, default=3)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sixj", parents=[common], help="6-j symbol of six decorations")
    p.add_argument("spins", nargs=6, type=int, metavar="n")
    p.set_defaults(func=cmd_sixj)

    p = sub.add_parser("series", parents=[common], help="standard evaluations of the dilations as CSV")
    p.add_argument("file")
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--float", action="store_true", help="floating-point CG magnitudes")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("rho", parents=[common], help="spectral radius estimate as JSON")
    p.add_argument("file")
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--stride", type=int)
    p.add_argument("--window", type=int, default=asymptotics.DEFAULT_WINDOW)
    p.add_argument("--exact", action="store_true", help="use exact coefficients")
    p.set_defaults(func=cmd_rho)
    return parser


ERRORS = (
    (SchemaError, EXIT_SCHEMA, "schema"),
    (UsageError, EXIT_SCHEMA, "usage"),
    (ResourceLimitError, EXIT_RESOURCE, "resource"),
    (InadmissibleError, EXIT_DOMAIN, "inadmissible"),
    (NetworkError, EXIT_DOMAIN, "domain"),
    (ValueError, EXIT_DOMAIN, "domain"),
)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for key, value in GLOBAL_DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    start = time.perf_counter()
    try:
        code = args.func(args)
    except Exception as exc:
        for kind, code, name in ERRORS:
            if isinstance(exc, kind):
                break
        else:
            raise
        if args.json:
            print(json.dumps({"error": name, "message": str(exc), "exit_code": code}, sort_keys=True))
        else:
            print(f"spinnet: {name} error: {exc}", file=sys.stderr)
    if args.timings:
        print(f"elapsed {time.perf_counter() - start:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
