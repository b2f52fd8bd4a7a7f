"""Relation/poset files.

A file is a JSON object::

    {
      "elements": ["a", "b", "c"],
      "leq": [["a", "b"], ["b", "c"]],      # or "pairs"
      "close": true,                         # optional, default false
      "sets": {"D": ["a"], "G": ["b", "c"]}  # optional named subsets
    }

For posets ``close`` takes the reflexive-transitive closure; for strict
relations (well-order files) it takes the transitive closure only.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import LoadError
from .poset import FinitePoset, _bits
from .wellorder import FiniteRelation


def read_document(path: str | Path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as e:
        raise LoadError(f"{path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise LoadError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})") from None
    return validate_document(doc, str(path))


def validate_document(doc, where: str = "<document>") -> dict:
    if not isinstance(doc, dict):
        raise LoadError(f"{where}: top level must be an object")
    unknown = set(doc) - {"elements", "leq", "pairs", "close", "sets"}
    if unknown:
        raise LoadError(f"{where}: unknown fields {sorted(unknown)}")
    els = doc.get("elements")
    if not isinstance(els, list) or not all(isinstance(x, str) for x in els):
        raise LoadError(f"{where}: 'elements' must be a list of strings")
    if len(set(els)) != len(els):
        raise LoadError(f"{where}: duplicate elements")
    if "leq" in doc and "pairs" in doc:
        raise LoadError(f"{where}: give 'leq' or 'pairs', not both")
    pairs = doc.get("leq", doc.get("pairs", []))
    known = set(els)
    if not isinstance(pairs, list):
        raise LoadError(f"{where}: pairs must be a list")
    for p in pairs:
        if not (isinstance(p, list) and len(p) == 2 and all(isinstance(x, str) for x in p)):
            raise LoadError(f"{where}: bad pair {p!r}")
        for x in p:
            if x not in known:
                raise LoadError(f"{where}: pair mentions unknown element {x!r}")
    close = doc.get("close", False)
    if not isinstance(close, bool):
        raise LoadError(f"{where}: 'close' must be a boolean")
    sets = doc.get("sets", {})
    if not isinstance(sets, dict):
        raise LoadError(f"{where}: 'sets' must be an object")
    for name, members in sets.items():
        if not isinstance(members, list) or not all(isinstance(x, str) and x in known for x in members):
            raise LoadError(f"{where}: set {name!r} must list known elements")
    return {"elements": els, "pairs": [tuple(p) for p in pairs], "close": close,
            "sets": {k: frozenset(v) for k, v in sets.items()}}


def _transitive_closure(els, pairs):
    idx = {x: i for i, x in enumerate(els)}
    succ = [0] * len(els)
    for x, y in pairs:
        succ[idx[x]] |= 1 << idx[y]
    for k in range(len(els)):
        for i in range(len(els)):
            if succ[i] >> k & 1:
                succ[i] |= succ[k]
    return {(els[i], els[j]) for i in range(len(els)) for j in _bits(succ[i])}


def relation_from_document(doc: dict) -> FiniteRelation:
    pairs = _transitive_closure(doc["elements"], doc["pairs"]) if doc["close"] else doc["pairs"]
    return FiniteRelation(doc["elements"], pairs)


def poset_from_document(doc: dict) -> FinitePoset:
    return FinitePoset.from_relation(doc["elements"], doc["pairs"], close=doc["close"])


def load_relation(path) -> FiniteRelation:
    return relation_from_document(read_document(path))


def load_poset(path) -> tuple:
    """``(FinitePoset, named_sets)``; raises PosetError if not a preorder."""
    doc = read_document(path)
    return poset_from_document(doc), doc["sets"]
