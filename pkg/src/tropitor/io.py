"""JSON and DOT serialization.  Rationals are always written as strings."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .exact import fmt, to_fraction
from .graph import GraphError, WeightedGraph
from .homology import parse_signed_cycle
from .matroid import Matroid
from .moduli import Cell, CellComplex, Cover
from .quadform import Polytope, QuadForm


class InputError(ValueError):
    """Malformed input file."""


def _require(obj: dict, key: str, where: str):
    if key not in obj:
        raise InputError(f"{where}: missing field {key!r}")
    return obj[key]


# ---------------------------------------------------------------------------
# graphs and curves

def graph_to_json(G: WeightedGraph) -> dict:
    return {
        "vertices": [{"id": v, "weight": w} for v, w in enumerate(G.weights)],
        "edges": [{"id": n, "ends": [a, b]} for n, (a, b) in zip(G.edge_names, G.edges)],
    }


def graph_from_json(obj: dict) -> WeightedGraph:
    try:
        verts = _require(obj, "vertices", "graph")
        index = {}
        weights = []
        for k, v in enumerate(verts):
            vid = _require(v, "id", "vertex")
            if vid in index:
                raise InputError(f"duplicate vertex id {vid!r}")
            index[vid] = k
            weights.append(int(v.get("weight", 0)))
        edges, names = [], []
        for k, e in enumerate(_require(obj, "edges", "graph")):
            ends = _require(e, "ends", "edge")
            if len(ends) != 2 or any(x not in index for x in ends):
                raise InputError(f"edge {e.get('id', k)!r} has bad ends {ends!r}")
            edges.append((index[ends[0]], index[ends[1]]))
            names.append(str(e.get("id", f"e{k + 1}")))
        return WeightedGraph(tuple(weights), tuple(edges), tuple(names))
    except (TypeError, AttributeError) as exc:
        raise InputError(f"malformed graph: {exc}") from None
    except GraphError as exc:
        raise InputError(str(exc)) from None


def curve_parts(obj: dict) -> tuple[WeightedGraph, dict[str, Fraction] | None, list[list[int]] | None]:
    """(graph, lengths or None when symbolic, explicit basis or None)."""
    G = graph_from_json(obj)
    lengths: dict[str, Fraction] = {}
    for e in obj["edges"]:
        if "length" in e:
            lengths[str(e["id"])] = to_fraction(e["length"])
    for k, v in (obj.get("lengths") or {}).items():
        lengths[str(k)] = to_fraction(v)
    if lengths and set(lengths) != set(G.edge_names):
        raise InputError("lengths must be given for every edge or for none")
    basis = None
    if obj.get("basis") is not None:
        try:
            basis = [parse_signed_cycle(G, cyc) for cyc in obj["basis"]]
        except GraphError as exc:
            raise InputError(str(exc)) from None
    return G, (lengths or None), basis


def curve_to_json(G: WeightedGraph, lengths: dict | None = None, basis=None) -> dict:
    out = graph_to_json(G)
    if lengths:
        for e in out["edges"]:
            e["length"] = fmt(lengths[e["id"]])
    if basis is not None:
        out["basis"] = [chain_to_signed(G, b) for b in basis]
    return out


def chain_to_signed(G: WeightedGraph, chain) -> list[str]:
    out = []
    for c, n in zip(chain, G.edge_names):
        if c:
            out.extend([("-" if c < 0 else "") + n] * abs(c))
    return out


# ---------------------------------------------------------------------------
# forms, polytopes, matroids

def quadform_to_json(Q: QuadForm) -> dict:
    return {"g": Q.g, "matrix": [[fmt(x) for x in row] for row in Q.matrix]}


def quadform_from_json(obj: dict) -> QuadForm:
    try:
        m = [[to_fraction(x) for x in row] for row in _require(obj, "matrix", "form")]
        Q = QuadForm.of(m)
    except (ValueError, TypeError) as exc:
        raise InputError(f"malformed form: {exc}") from None
    if "g" in obj and int(obj["g"]) != Q.g:
        raise InputError("form dimension does not match its matrix")
    return Q


def polytope_to_json(P: Polytope) -> dict:
    return {
        "vertices": [[fmt(x) for x in v] for v in P.vertices],
        "halfspaces": [{"normal": [fmt(x) for x in n], "rhs": fmt(b)} for n, b in P.halfspaces],
    }


def polytope_from_json(obj: dict) -> Polytope:
    verts = tuple(tuple(to_fraction(x) for x in v) for v in obj["vertices"])
    hs = tuple((tuple(to_fraction(x) for x in h["normal"]), to_fraction(h["rhs"]))
               for h in obj.get("halfspaces", []))
    return Polytope(verts, hs)


def matroid_to_json(M: Matroid) -> dict:
    return {"ground": list(M.ground), "bases": M.named_bases()}


def matroid_from_json(obj: dict) -> Matroid:
    from .matroid import MatroidError, from_bases
    try:
        return from_bases(_require(obj, "ground", "matroid"), _require(obj, "bases", "matroid"))
    except MatroidError as exc:
        raise InputError(str(exc)) from None


def int_matrix_to_json(a) -> list[list[str]]:
    return [[str(int(x)) for x in row] for row in a]


# ---------------------------------------------------------------------------
# complexes

def complex_to_json(X: CellComplex) -> dict:
    cells = []
    for c in X.cells:
        payload = graph_to_json(c.payload) if c.kind == "curve" else matroid_to_json(c.payload)
        cells.append({"id": c.id, "kind": c.kind, "dim": c.dim, "key": c.key,
                      "stabilizer_order": c.stabilizer_order, "payload": payload})
    covers = [{"face": cv.face, "cell": cv.cell, "contracted": list(cv.contracted),
               "matrix": [[fmt(x) for x in row] for row in cv.matrix]} for cv in X.covers]
    return {"kind": X.kind, "genus": X.genus, "cells": cells, "covers": covers}


def complex_from_json(obj: dict) -> CellComplex:
    cells = []
    for c in obj["cells"]:
        payload = graph_from_json(c["payload"]) if c["kind"] == "curve" else matroid_from_json(c["payload"])
        cells.append(Cell(c["id"], c["kind"], int(c["dim"]), payload, c["key"], c.get("stabilizer_order")))
    covers = [Cover(cv["face"], cv["cell"], [[to_fraction(x) for x in row] for row in cv["matrix"]],
                    tuple(cv.get("contracted", ()))) for cv in obj["covers"]]
    return CellComplex(obj["kind"], int(obj["genus"]), cells, covers)


def _graph_label(G: WeightedGraph) -> str:
    w = ",".join(map(str, G.weights))
    es = " ".join(f"{a}-{b}" for a, b in G.edges)
    return f"w=({w})\\n{es}" if es else f"w=({w})"


def complex_to_dot(X: CellComplex) -> str:
    lines = [f'digraph "{X.kind}_g{X.genus}" {{', "  rankdir=TB;", "  node [shape=box, fontsize=10];"]
    for c in X.cells:
        body = _graph_label(c.payload) if c.kind == "curve" else f"{c.key.split(';#')[0]}"
        lines.append(f'  {c.id} [label="{c.id} dim {c.dim}\\n{body}"];')
    for cv in X.covers:
        lines.append(f"  {cv.cell} -> {cv.face};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_dot(G: WeightedGraph) -> str:
    lines = ["graph G {"]
    for v, w in enumerate(G.weights):
        lines.append(f'  v{v} [label="{v} (w={w})"];')
    for n, (a, b) in zip(G.edge_names, G.edges):
        lines.append(f'  v{a} -- v{b} [label="{n}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"
