"""JSON and CSV wire formats.

Graph JSON:        {"alphabet": M, "nodes": ["a", ...], "edges": [["a", "b", 1], ...]}
Matrix set JSON:   {"n": 3, "matrices": [[[...], [...], [...]], ...]}
Certificate JSON:  {"flavor": "dual", "gamma": 1.25, "vectors": {"a": [...], ...}}

Structured node identities serialize as strings: multiset "{a,a}", subset
"{a,b}", composition "a∘1", word "(1,2)".
"""

from __future__ import annotations

import json

import numpy as np

from .copositive import Certificate, MatrixSet
from .graphs import LabeledGraph, make_graph, parse_node_id


def graph_to_dict(g: LabeledGraph) -> dict:
    return {
        "alphabet": g.alphabet_size,
        "nodes": [str(s) for s in g.nodes],
        "edges": [[str(a), str(b), i] for a, b, i in g.edges],
    }


def graph_from_dict(data: dict) -> LabeledGraph:
    try:
        alphabet = data["alphabet"]
        nodes = [parse_node_id(s) for s in data["nodes"]]
        edges = [(parse_node_id(a), parse_node_id(b), int(i)) for a, b, i in data["edges"]]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed graph JSON: {exc}") from exc
    return make_graph(alphabet, nodes, edges)


def matrix_set_to_dict(mats: MatrixSet) -> dict:
    return {"n": mats.n, "matrices": [m.tolist() for m in mats.matrices]}


def matrix_set_from_dict(data: dict) -> MatrixSet:
    try:
        mats = [np.asarray(m, dtype=float) for m in data["matrices"]]
        n = int(data["n"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed matrix-set JSON: {exc}") from exc
    for m in mats:
        if m.shape != (n, n):
            raise ValueError(f"matrix shape {m.shape} does not match n={n}")
    return MatrixSet.from_matrices(mats)


def certificate_to_dict(cert: Certificate) -> dict:
    return {
        "flavor": cert.flavor,
        "gamma": cert.gamma,
        "vectors": {str(s): v.tolist() for s, v in cert.vectors.items()},
    }


def certificate_from_dict(data: dict) -> Certificate:
    try:
        vectors = {parse_node_id(s): np.asarray(v, dtype=float)
                   for s, v in data["vectors"].items()}
        return Certificate(data["flavor"], float(data["gamma"]), vectors)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed certificate JSON: {exc}") from exc


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def load_json(path: str) -> dict:
    """Read a JSON file, rephrasing parse failures with line/column info."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
