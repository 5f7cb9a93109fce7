"""JSON documents for truncated objects and reports."""

from __future__ import annotations

import json

from .simplicial import Simp, sorted_degrees
from .verdict import jsonable

SCHEMA = 1


def _deg(d) -> str:
    return ",".join(map(str, d))


def _undeg(s: str) -> tuple:
    return tuple(int(t) for t in s.split(","))


def simp_to_json(x: Simp, labels: bool = False) -> dict:
    """trunc, per-degree cell counts and the face/degeneracy tables as id -> id arrays."""
    doc = {
        "schema": SCHEMA,
        "kind": "sset" if x.dim == 1 else "sspace",
        "name": x.name,
        "trunc": list(x.trunc),
        "shape": [list(d) for d in sorted_degrees(x.shape)],
        "cells": {_deg(d): x.n(d) for d in sorted_degrees(x.shape)},
        "faces": {f"{_deg(d)};{a};{i}": list(v) for (d, a, i), v in sorted(x.faces.items())},
        "degeneracies": {f"{_deg(d)};{a};{i}": list(v) for (d, a, i), v in sorted(x.degens.items())},
    }
    if x.meta.get("clipped"):
        doc["clipped"] = [list(d) for d in x.meta["clipped"]]
    if labels:
        doc["labels"] = {_deg(d): [repr(c) for c in x.labels[d]] for d in sorted_degrees(x.shape)}
    return doc


def simp_from_json(doc: dict) -> Simp:
    if doc.get("schema") != SCHEMA:
        raise ValueError(f"unsupported schema {doc.get('schema')!r}")
    shape = {tuple(d) for d in doc["shape"]}
    labels = {d: list(range(doc["cells"][_deg(d)])) for d in shape}

    def table(src):
        out = {}
        for k, v in src.items():
            d, a, i = k.split(";")
            out[_undeg(d), int(a), int(i)] = list(v)
        return out

    return Simp(shape, labels, table(doc["faces"]), table(doc["degeneracies"]), name=doc.get("name", ""))


def dumps(obj, **kw) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, **kw)
