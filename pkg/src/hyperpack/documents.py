"""JSON instance and solution documents.

An instance document looks like::

    {
      "dyperedges": [{"head": "u", "id": "a", "tail": ["r"]}],
      "hyperedges": [{"id": "e", "members": ["u", "v"]}],
      "matroid": {"type": "uniform", "rank": 1},
      "roots": ["r"],
      "vertices": ["u", "v"],
      "weights": {"a": 3, "e": "-1/2"}
    }

Weights are integers or "p/q" strings.  The matroid lives on the roots and is
one of free, uniform (rank), partition (blocks, capacities) or explicit
(bases).  ``dump_*`` writes the canonical form, so dump(load(text)) == text
for any canonical text.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InputError
from .hypercore import Arc, Dyperedge, Hyperedge, MixedHypergraph, Packing, Weights, as_rational
from .matroid import ExplicitMatroid, FreeMatroid, Matroid, PartitionMatroid, UniformMatroid
from .verify import ConditionViolation, Mode


@dataclass(frozen=True)
class Instance:
    hypergraph: MixedHypergraph
    matroid: Matroid
    weights: Weights = field(default_factory=Weights)


@dataclass(frozen=True)
class Solution:
    status: str  # "optimal" or "infeasible"
    mode: Mode
    packing: Packing | None = None
    weight: Fraction | None = None
    certificate: dict | None = None


def _dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def rational_doc(x: Fraction):
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(value, where: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise InputError(f"{where}: weight must be an integer or a 'p/q' string")
    try:
        return as_rational(value)
    except InputError as exc:
        raise InputError(f"{where}: {exc}") from None


def _field(doc: dict, key: str, kind, where: str):
    if key not in doc:
        raise InputError(f"{where}: missing field {key!r}")
    value = doc[key]
    if not isinstance(value, kind):
        raise InputError(f"{where}.{key}: expected {getattr(kind, '__name__', kind)}")
    return value


def _names(values, where: str) -> list:
    if not isinstance(values, list) or not all(isinstance(v, str) for v in values):
        raise InputError(f"{where}: expected a list of strings")
    return values


# -- matroids -----------------------------------------------------------------

def matroid_doc(M: Matroid) -> dict:
    if isinstance(M, FreeMatroid):
        return {"type": "free"}
    if isinstance(M, UniformMatroid):
        return {"type": "uniform", "rank": M.k}
    if isinstance(M, PartitionMatroid):
        return {"type": "partition", "blocks": [sorted(b) for b in M.blocks], "capacities": list(M.capacities)}
    if isinstance(M, ExplicitMatroid):
        return {"type": "explicit", "bases": sorted(sorted(b) for b in M.bases)}
    raise InputError(f"cannot serialise a {type(M).__name__}")


def parse_matroid(doc, roots) -> Matroid:
    ground = tuple(sorted(roots))
    if doc is None:
        return FreeMatroid(ground)
    if not isinstance(doc, dict):
        raise InputError("matroid: expected an object")
    kind = doc.get("type")
    if kind == "free":
        return FreeMatroid(ground)
    if kind == "uniform":
        rank = _field(doc, "rank", int, "matroid")
        return UniformMatroid(ground, rank)
    if kind == "partition":
        blocks = [_names(b, "matroid.blocks") for b in _field(doc, "blocks", list, "matroid")]
        caps = _field(doc, "capacities", list, "matroid")
        if not all(isinstance(c, int) for c in caps):
            raise InputError("matroid.capacities: expected integers")
        return PartitionMatroid(ground, tuple(map(tuple, blocks)), tuple(caps))
    if kind == "explicit":
        bases = [_names(b, "matroid.bases") for b in _field(doc, "bases", list, "matroid")]
        return ExplicitMatroid(ground, tuple(map(frozenset, bases)))
    raise InputError(f"matroid: unknown type {kind!r}")


# -- instances ----------------------------------------------------------------

def instance_doc(inst: Instance) -> dict:
    H = inst.hypergraph
    return {
        "vertices": sorted(H.vertices),
        "roots": sorted(H.roots),
        "dyperedges": [{"id": a.id, "tail": sorted(a.tail), "head": a.head} for a in sorted(H.dyperedges, key=lambda a: a.id)],
        "hyperedges": [{"id": e.id, "members": sorted(e.members)} for e in sorted(H.hyperedges, key=lambda e: e.id)],
        "weights": {k: rational_doc(v) for k, v in sorted(inst.weights.values.items())},
        "matroid": matroid_doc(inst.matroid),
    }


def dump_instance(inst: Instance) -> str:
    return _dumps(instance_doc(inst))


def parse_instance(doc) -> Instance:
    if not isinstance(doc, dict):
        raise InputError("instance: expected an object")
    vertices = _names(doc.get("vertices", []), "vertices")
    roots = _names(doc.get("roots", []), "roots")
    dyperedges = []
    for i, a in enumerate(doc.get("dyperedges", [])):
        where = f"dyperedges[{i}]"
        if not isinstance(a, dict):
            raise InputError(f"{where}: expected an object")
        dyperedges.append(Dyperedge(
            _field(a, "id", str, where), frozenset(_names(_field(a, "tail", list, where), where + ".tail")),
            _field(a, "head", str, where),
        ))
    hyperedges = []
    for i, e in enumerate(doc.get("hyperedges", [])):
        where = f"hyperedges[{i}]"
        if not isinstance(e, dict):
            raise InputError(f"{where}: expected an object")
        hyperedges.append(Hyperedge(
            _field(e, "id", str, where), frozenset(_names(_field(e, "members", list, where), where + ".members"))
        ))
    H = MixedHypergraph(frozenset(vertices), frozenset(roots), tuple(dyperedges), tuple(hyperedges))
    raw = doc.get("weights", {})
    if not isinstance(raw, dict):
        raise InputError("weights: expected an object")
    unknown = set(raw) - set(H.elements)
    if unknown:
        raise InputError(f"weights: unknown element ids {sorted(unknown)}")
    weights = Weights({k: parse_rational(v, f"weights.{k}") for k, v in raw.items()})
    return Instance(H, parse_matroid(doc.get("matroid"), H.roots), weights)


def load_instance(text: str) -> Instance:
    return parse_instance(_loads(text))


# -- solutions ----------------------------------------------------------------

def packing_doc(P: Packing) -> list:
    return [
        {"root": r, "elements": [{"id": a.id, "tail": a.tail, "head": a.head} for a in arcs]}
        for r, arcs in P.arcs.items()
    ]


def solution_doc(sol: Solution) -> dict:
    doc: dict = {"status": sol.status, "mode": sol.mode.value}
    if sol.packing is not None:
        doc["weight"] = rational_doc(sol.weight)
        doc["arborescences"] = packing_doc(sol.packing)
    if sol.certificate is not None:
        doc["certificate"] = sol.certificate
    return doc


def dump_solution(sol: Solution) -> str:
    return _dumps(solution_doc(sol))


def parse_solution(doc) -> Solution:
    if not isinstance(doc, dict):
        raise InputError("solution: expected an object")
    status = _field(doc, "status", str, "solution")
    if status not in ("optimal", "infeasible"):
        raise InputError(f"solution.status: unknown status {status!r}")
    mode = Mode.parse(_field(doc, "mode", str, "solution"))
    packing = weight = None
    if "arborescences" in doc:
        arcs = {}
        for i, entry in enumerate(_field(doc, "arborescences", list, "solution")):
            where = f"arborescences[{i}]"
            root = _field(entry, "root", str, where)
            if root in arcs:
                raise InputError(f"{where}: root {root!r} listed twice")
            arcs[root] = [
                Arc(_field(x, "id", str, where), _field(x, "tail", str, where), _field(x, "head", str, where))
                for x in _field(entry, "elements", list, where)
            ]
        packing = Packing(arcs)
        weight = parse_rational(doc.get("weight", 0), "solution.weight")
    certificate = doc.get("certificate")
    return Solution(status, mode, packing, weight, certificate)


def load_solution(text: str) -> Solution:
    return parse_solution(_loads(text))


def certificate_of(violation: ConditionViolation | None) -> dict | None:
    return None if violation is None else violation.to_doc()
