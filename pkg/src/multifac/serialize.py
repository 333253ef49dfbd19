"""Instance and profile documents (JSON).

Instance schema:
  {"metric": {"type": "euclidean", "dim": D, "coords": [[..], ..]}
             | {"type": "matrix", "d": [[..], ..]},
   "clients": [{"point": id, "weight": w}, ..],
   "facilities": [{"point": id, "mult": m}, ..],
   "k": k}

Profile schema:
  {"committees": [[slot, ..], ..], "rankings": [[candidate index, ..], ..]}

Numbers are decimal literals; NaN and infinities are rejected.  Parsing
reports the offending field path.
"""

from __future__ import annotations

import json
import math
from typing import Any

import numpy as np

from .errors import ParseError
from .metric import MetricSpace
from .objectives import Instance


def _reject_constant(name: str):
    raise ParseError(f"non-finite number {name!r} is not allowed")


def _loads(text: str) -> Any:
    try:
        return json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid document: {exc}") from None


def _require(doc: dict, field: str, kind, where: str = ""):
    path = f"{where}.{field}" if where else field
    if not isinstance(doc, dict) or field not in doc:
        raise ParseError("missing field", field=path)
    value = doc[field]
    if kind is int:
        if not isinstance(value, int) or isinstance(value, bool):
            raise ParseError("expected an integer", field=path)
    elif kind is list:
        if not isinstance(value, list):
            raise ParseError("expected a list", field=path)
    elif kind is dict:
        if not isinstance(value, dict):
            raise ParseError("expected an object", field=path)
    return value


def _number_grid(rows, field: str, *, nonnegative: bool) -> list[list[float]]:
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list):
            raise ParseError("expected a list of numbers", field=f"{field}[{i}]")
        vals = []
        for j, x in enumerate(row):
            if isinstance(x, bool) or not isinstance(x, (int, float)):
                raise ParseError("expected a number", field=f"{field}[{i}][{j}]")
            x = float(x)
            if not math.isfinite(x):
                raise ParseError("non-finite number", field=f"{field}[{i}][{j}]")
            if nonnegative and x < 0:
                raise ParseError("negative distance", field=f"{field}[{i}][{j}]")
            vals.append(x)
        out.append(vals)
    return out


def instance_to_doc(inst: Instance) -> dict:
    if inst.space.coords is not None:
        metric = {
            "type": "euclidean",
            "dim": int(inst.space.coords.shape[1]),
            "coords": [list(map(float, row)) for row in inst.space.coords],
        }
    else:
        metric = {
            "type": "matrix",
            "d": [list(map(float, row)) for row in inst.space.dist],
        }
    return {
        "metric": metric,
        "clients": [{"point": int(p), "weight": int(w)} for p, w in inst.clients],
        "facilities": [{"point": int(p), "mult": int(m)} for p, m in inst.facilities],
        "k": int(inst.k),
    }


def doc_to_instance(doc: Any) -> Instance:
    if not isinstance(doc, dict):
        raise ParseError("document must be an object")
    metric = _require(doc, "metric", dict)
    mtype = metric.get("type")
    if mtype == "euclidean":
        dim = _require(metric, "dim", int, where="metric")
        coords = _number_grid(_require(metric, "coords", list, where="metric"),
                              "metric.coords", nonnegative=False)
        for i, row in enumerate(coords):
            if len(row) != dim:
                raise ParseError(f"expected {dim} coordinates",
                                 field=f"metric.coords[{i}]")
        space = MetricSpace.from_coords(coords)
    elif mtype == "matrix":
        rows = _number_grid(_require(metric, "d", list, where="metric"),
                            "metric.d", nonnegative=True)
        n = len(rows)
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ParseError("matrix is not square", field=f"metric.d[{i}]")
        space = MetricSpace.from_matrix(rows)
    else:
        raise ParseError("type must be 'euclidean' or 'matrix'", field="metric.type")

    def entries(field: str, value_key: str) -> tuple:
        raw = _require(doc, field, list)
        out = []
        for i, item in enumerate(raw):
            if not isinstance(item, dict):
                raise ParseError("expected an object", field=f"{field}[{i}]")
            p = _require(item, "point", int, where=f"{field}[{i}]")
            v = _require(item, value_key, int, where=f"{field}[{i}]")
            out.append((p, v))
        return tuple(out)

    clients = entries("clients", "weight")
    facilities = entries("facilities", "mult")
    k = _require(doc, "k", int)
    try:
        return Instance(space=space, clients=clients, facilities=facilities, k=k)
    except Exception as exc:
        raise ParseError(str(exc)) from None


def dumps_instance(inst: Instance) -> str:
    return json.dumps(instance_to_doc(inst), indent=2, allow_nan=False) + "\n"


def parse_instance(text: str) -> Instance:
    return doc_to_instance(_loads(text))


def dump_instance(inst: Instance, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_instance(inst))


def load_instance(path) -> Instance:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_instance(fh.read())


def profile_to_doc(committees, rankings) -> dict:
    return {
        "committees": [list(map(int, c)) for c in committees],
        "rankings": [list(map(int, r)) for r in rankings],
    }


def parse_profile(text: str) -> tuple[tuple, tuple]:
    """Return (committees, rankings) from a profile document."""
    doc = _loads(text)
    if not isinstance(doc, dict):
        raise ParseError("document must be an object")
    committees = []
    for i, c in enumerate(_require(doc, "committees", list)):
        if not isinstance(c, list) or not all(
                isinstance(s, int) and not isinstance(s, bool) for s in c):
            raise ParseError("expected a list of slot ids",
                             field=f"committees[{i}]")
        committees.append(tuple(sorted(c)))
    n_cand = len(committees)
    rankings = []
    for i, r in enumerate(_require(doc, "rankings", list)):
        if (not isinstance(r, list)
                or sorted(r) != list(range(n_cand))):
            raise ParseError("ranking must be a permutation of committee indices",
                             field=f"rankings[{i}]")
        rankings.append(tuple(r))
    return tuple(committees), tuple(rankings)
