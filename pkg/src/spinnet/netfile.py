"""JSON network files.

Layout::

    {"vertices": [{"id": 0, "rotation": [h, h, h]}, ...],
     "edges": [{"id": 0, "halfedges": [h, h]}, ...],
     "decoration": {"0": 2, ...},
     "trivial_components": [a, ...],
     "orientation": {"0": [tail, head], ...},      # optional
     "gates": {"0": [h, h], ...}}                  # optional
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .graph import NetworkError, SpinNetwork, build_network
from .orientation import GateSignage, SmoothOrientation, validate_smooth


class SchemaError(ValueError):
    """Malformed network document."""


TOP_KEYS = {"vertices", "edges", "decoration", "trivial_components", "orientation", "gates"}
REQUIRED = ("vertices", "edges", "decoration")


@dataclass(frozen=True)
class NetworkDocument:
    network: SpinNetwork
    orientation: SmoothOrientation | None = None
    gates: GateSignage | None = None


def _int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{where}: expected an integer, got {value!r}")
    return value


def _int_list(value, length: int | None, where: str) -> list[int]:
    if not isinstance(value, list):
        raise SchemaError(f"{where}: expected a list")
    if length is not None and len(value) != length:
        raise SchemaError(f"{where}: expected {length} entries, got {len(value)}")
    return [_int(x, f"{where}[{i}]") for i, x in enumerate(value)]


def _keyed(value, where: str) -> dict[int, object]:
    if not isinstance(value, dict):
        raise SchemaError(f"{where}: expected an object")
    out = {}
    for k, v in value.items():
        try:
            out[int(k)] = v
        except ValueError:
            raise SchemaError(f"{where}: key {k!r} is not an integer id") from None
    return out


def _records(value, fields: tuple[str, str], length: int, where: str) -> dict[int, list[int]]:
    if not isinstance(value, list):
        raise SchemaError(f"{where}: expected a list")
    out = {}
    for i, rec in enumerate(value):
        loc = f"{where}[{i}]"
        if not isinstance(rec, dict):
            raise SchemaError(f"{loc}: expected an object")
        extra = set(rec) - set(fields)
        if extra:
            raise SchemaError(f"{loc}: unknown keys {sorted(extra)}")
        for f in fields:
            if f not in rec:
                raise SchemaError(f"{loc}: missing key {f!r}")
        ident = _int(rec[fields[0]], f"{loc}.{fields[0]}")
        if ident in out:
            raise SchemaError(f"{loc}: duplicate id {ident}")
        out[ident] = _int_list(rec[fields[1]], length, f"{loc}.{fields[1]}")
    return out


def parse_network(source: str | dict) -> NetworkDocument:
    if isinstance(source, str):
        try:
            doc = json.loads(source)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    else:
        doc = source
    if not isinstance(doc, dict):
        raise SchemaError("top level must be an object")
    extra = set(doc) - TOP_KEYS
    if extra:
        raise SchemaError(f"unknown keys {sorted(extra)}")
    for key in REQUIRED:
        if key not in doc:
            raise SchemaError(f"missing key {key!r}")

    rotation = _records(doc["vertices"], ("id", "rotation"), 3, "vertices")
    edges = _records(doc["edges"], ("id", "halfedges"), 2, "edges")
    decoration = {k: _int(v, f"decoration.{k}") for k, v in _keyed(doc["decoration"], "decoration").items()}
    trivial = _int_list(doc.get("trivial_components", []), None, "trivial_components")
    try:
        net = build_network(rotation, edges, decoration, trivial)
    except NetworkError as exc:
        raise SchemaError(str(exc)) from None
    missing = set(net.edges) - set(decoration)
    if missing:
        raise SchemaError(f"decoration: missing edges {sorted(missing)}")

    orientation = gates = None
    if "orientation" in doc:
        direction = {
            k: tuple(_int_list(v, 2, f"orientation.{k}"))
            for k, v in _keyed(doc["orientation"], "orientation").items()
        }
        orientation = SmoothOrientation(direction)
        if not validate_smooth(net, orientation):
            raise SchemaError("orientation: not a smooth orientation of this network")
    if "gates" in doc:
        if orientation is None:
            raise SchemaError("gates: given without an orientation")
        order = {k: tuple(_int_list(v, 2, f"gates.{k}")) for k, v in _keyed(doc["gates"], "gates").items()}
        if set(order) != set(net.rotation):
            raise SchemaError("gates: must list every vertex exactly once")
        tails = orientation.tails()
        for v, (x, y) in order.items():
            if x not in net.rotation[v] or y not in net.rotation[v] or x == y or (x in tails) != (y in tails):
                raise SchemaError(f"gates.{v}: not the same-direction pair at this vertex")
        gates = GateSignage(order)
    return NetworkDocument(net, orientation, gates)


def network_to_dict(net: SpinNetwork, orientation: SmoothOrientation | None = None,
                    gates: GateSignage | None = None) -> dict:
    doc = {
        "vertices": [{"id": v, "rotation": list(net.rotation[v])} for v in net.vertices],
        "edges": [{"id": e, "halfedges": list(net.edges[e])} for e in net.edge_ids],
        "decoration": {str(e): net.decoration[e] for e in net.edge_ids},
        "trivial_components": list(net.trivial_components),
    }
    if orientation is not None:
        doc["orientation"] = {str(e): list(orientation.direction[e]) for e in sorted(orientation.direction)}
    if gates is not None:
        doc["gates"] = {str(v): list(gates.order[v]) for v in sorted(gates.order)}
    return doc


def serialize_network(net: SpinNetwork, orientation: SmoothOrientation | None = None,
                      gates: GateSignage | None = None) -> str:
    return json.dumps(network_to_dict(net, orientation, gates), indent=1) + "\n"


def dump_document(doc: NetworkDocument) -> str:
    return serialize_network(doc.network, doc.orientation, doc.gates)
