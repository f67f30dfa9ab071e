"""JSON formats for graphs, positions, traces and posets.

Graphs: ``{"kind": "gcm"|"egcm", "n": int, "amplitudes": [[...]]}`` with
exact entries written as ``"p/q"`` strings (plain integers are accepted on
input) and E-GCM entries as floats.
Posets: ``{"n": int, "elements": [...], "covers": [[s, t, color], ...]}``
with colors numbered from 1, and an optional ``"ranks": {id: rank}``.
"""

from __future__ import annotations

import json
import os

from .catalog import catalog, parse_id
from .errors import MalformedMatrix, UnknownCatalogId
from .graph import AmplitudeGraph, as_egcm, as_gcm, validate
from .poset import validate_poset
from .scalars import EGCM, GCM, format_scalar


def position_to_json(position) -> list:
    return [format_scalar(v) for v in position]


def graph_to_json(g: AmplitudeGraph) -> dict:
    return {"kind": g.kind, "n": g.n, "amplitudes": [position_to_json(row) for row in g.matrix]}


def graph_from_json(obj: dict) -> AmplitudeGraph:
    try:
        kind = obj.get("kind", GCM)
        rows = obj["amplitudes"]
    except (AttributeError, KeyError):
        raise MalformedMatrix("graph JSON needs an 'amplitudes' matrix") from None
    if "n" in obj and obj["n"] != len(rows):
        raise MalformedMatrix(f"'n' is {obj['n']} but the matrix has {len(rows)} rows")
    return validate(rows, kind)


def load_graph(spec: str, mode: str = None, symmetric: bool = False) -> AmplitudeGraph:
    """A graph from a JSON file path or a catalog id.

    ``mode`` is ``"exact"`` (integer GCM arithmetic), ``"approx"`` (float
    arithmetic on the same amplitudes) or None for the graph's own mode.
    ``symmetric`` picks the symmetric E-GCM form of a catalog graph.
    """
    if os.path.isfile(spec):
        with open(spec) as fh:
            g = graph_from_json(json.load(fh))
    else:
        try:
            cid = parse_id(spec)
        except UnknownCatalogId:
            raise UnknownCatalogId(f"{spec!r} is neither a file nor a catalog id") from None
        g = catalog(cid, EGCM if symmetric else None)
    if mode == "exact":
        g = as_gcm(g)
    elif mode == "approx":
        g = as_egcm(g)
    return g


def poset_from_json(obj: dict):
    """Build a poset from JSON with 1-based colors."""
    n = obj["n"]
    covers = []
    for entry in obj.get("covers", []):
        s, t, c = entry
        covers.append((s, t, c - 1 if isinstance(c, int) else c))
    ranks = obj.get("ranks")
    return validate_poset(obj["elements"], covers, n, ranks)


def poset_to_json(p) -> dict:
    return {
        "n": p.n,
        "elements": list(p.elements),
        "covers": [[s, t, c + 1] for s, t, c in p.covers],
    }
