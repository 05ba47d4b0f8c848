"""The JSON space-file format and its translation into instances.

Example::

    {"universe": ["a", "b", "c"],
     "primal": {"kind": "principal", "element": "a"},
     "topology": {"kind": "discrete"},
     "relation": {"kind": "intersection-complement"}}

Subsets are always sorted label lists. Parsing canonicalises every set and
every family (ascending by mask), so ``parse(emit(sf)) == sf``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

from .instance import Instance
from .primal import Primal, check_primal, mk_empty, mk_maximal, mk_principal
from .proximity import EXPLICIT, KINDS, TOPOLOGICAL_KINDS, ProximityRelation, build, explicit
from .sets import SubsetFamily, Universe, UniverseError
from .topology import Topology, check_topology, discrete, indiscrete

PRIMAL_KINDS = ("explicit", "maximal", "principal", "empty")
TOPOLOGY_KINDS = ("explicit", "discrete", "indiscrete")

LabelSet = Tuple[str, ...]


class SpaceFileError(ValueError):
    def __init__(self, path: str, reason: str) -> None:
        super().__init__(f"{path}: {reason}")
        self.path = path
        self.reason = reason


@dataclass(frozen=True)
class PrimalSpec:
    kind: str
    sets: Optional[Tuple[LabelSet, ...]] = None
    element: Optional[str] = None


@dataclass(frozen=True)
class TopologySpec:
    kind: str
    opens: Optional[Tuple[LabelSet, ...]] = None


@dataclass(frozen=True)
class RelationSpec:
    kind: str
    pairs: Optional[Tuple[Tuple[LabelSet, LabelSet], ...]] = None


@dataclass(frozen=True)
class SpaceFile:
    universe: Tuple[str, ...]
    primal: PrimalSpec
    topology: Optional[TopologySpec] = None
    relation: Optional[RelationSpec] = None

    @property
    def u(self) -> Universe:
        return Universe(self.universe)

    def build_primal(self) -> Primal:
        """The primal as written; ``validated`` records whether it passes."""
        u = self.u
        spec = self.primal
        if spec.kind == "maximal":
            return mk_maximal(u)
        if spec.kind == "empty":
            return mk_empty(u)
        if spec.kind == "principal":
            return mk_principal(u, spec.element)
        family = SubsetFamily.from_labels(u, spec.sets)
        return Primal(u, family, validated=bool(check_primal(u, family)))

    def build_topology(self) -> Optional[Topology]:
        if self.topology is None:
            return None
        u = self.u
        if self.topology.kind == "discrete":
            return discrete(u)
        if self.topology.kind == "indiscrete":
            return indiscrete(u)
        return Topology(u, SubsetFamily.from_labels(u, self.topology.opens))

    def to_instance(self) -> Instance:
        """Instance for relation-level work; rejects invalid primals and topologies."""
        u = self.u
        p = self.build_primal()
        if not p.validated:
            rule = check_primal(u, p.family).rule
            raise SpaceFileError("$.primal", f"family is not a primal (condition {rule} fails)")
        t = self.build_topology()
        if t is not None and not check_topology(u, t.opens):
            raise SpaceFileError("$.topology", "open sets do not form a topology")
        if self.relation is None:
            raise SpaceFileError("$.relation", "missing relation")
        kind = self.relation.kind
        if kind in TOPOLOGICAL_KINDS and t is None:
            raise SpaceFileError("$.topology", f"relation kind {kind} needs a topology")
        if kind == EXPLICIT:
            pairs = [(u.encode(a), u.encode(b)) for a, b in self.relation.pairs]
            r: ProximityRelation = explicit(u, pairs, p, t)
        else:
            r = build(kind, p, t)
        return Instance(u, p, r, t)


def _expect(cond: bool, path: str, reason: str) -> None:
    if not cond:
        raise SpaceFileError(path, reason)


def _keys(obj: Any, path: str, allowed: Tuple[str, ...]) -> Dict[str, Any]:
    _expect(isinstance(obj, dict), path, "expected an object")
    extra = sorted(set(obj) - set(allowed))
    _expect(not extra, path, f"unknown field(s) {extra}")
    return obj


def _label_set(u: Universe, obj: Any, path: str) -> LabelSet:
    _expect(isinstance(obj, list), path, "expected a list of labels")
    for i, label in enumerate(obj):
        _expect(isinstance(label, str), f"{path}[{i}]", "labels must be strings")
        _expect(label in u.labels, f"{path}[{i}]", f"unknown label {label!r}")
    _expect(len(set(obj)) == len(obj), path, "duplicate label in set")
    return tuple(sorted(obj))


def _family(u: Universe, obj: Any, path: str) -> Tuple[LabelSet, ...]:
    _expect(isinstance(obj, list), path, "expected a list of sets")
    masks = {u.encode(_label_set(u, s, f"{path}[{i}]")) for i, s in enumerate(obj)}
    return tuple(tuple(u.sorted_labels(m)) for m in sorted(masks))


def parse(data: Any) -> SpaceFile:
    obj = _keys(data, "$", ("universe", "primal", "topology", "relation"))
    _expect("universe" in obj, "$.universe", "missing field")
    labels = obj["universe"]
    _expect(isinstance(labels, list), "$.universe", "expected a list of labels")
    try:
        u = Universe(tuple(labels))
    except UniverseError as exc:
        raise SpaceFileError("$.universe", str(exc)) from None

    _expect("primal" in obj, "$.primal", "missing field")
    pobj = _keys(obj["primal"], "$.primal", ("kind", "sets", "element"))
    pkind = pobj.get("kind")
    _expect(pkind in PRIMAL_KINDS, "$.primal.kind", f"expected one of {list(PRIMAL_KINDS)}, got {pkind!r}")
    if pkind == "explicit":
        _expect("sets" in pobj, "$.primal.sets", "explicit primal needs sets")
        primal = PrimalSpec("explicit", sets=_family(u, pobj["sets"], "$.primal.sets"))
    elif pkind == "principal":
        el = pobj.get("element")
        _expect(el in u.labels, "$.primal.element", f"unknown element {el!r}")
        primal = PrimalSpec("principal", element=el)
    else:
        primal = PrimalSpec(pkind)

    topology = None
    if obj.get("topology") is not None:
        tobj = _keys(obj["topology"], "$.topology", ("kind", "opens"))
        tkind = tobj.get("kind")
        _expect(tkind in TOPOLOGY_KINDS, "$.topology.kind",
                f"expected one of {list(TOPOLOGY_KINDS)}, got {tkind!r}")
        if tkind == "explicit":
            _expect("opens" in tobj, "$.topology.opens", "explicit topology needs opens")
            topology = TopologySpec("explicit", _family(u, tobj["opens"], "$.topology.opens"))
        else:
            topology = TopologySpec(tkind)

    relation = None
    if obj.get("relation") is not None:
        robj = _keys(obj["relation"], "$.relation", ("kind", "pairs"))
        rkind = robj.get("kind")
        _expect(rkind in KINDS, "$.relation.kind", f"expected one of {list(KINDS)}, got {rkind!r}")
        if rkind == EXPLICIT:
            _expect(isinstance(robj.get("pairs"), list), "$.relation.pairs", "explicit relation needs pairs")
            pairs = set()
            for i, pair in enumerate(robj["pairs"]):
                path = f"$.relation.pairs[{i}]"
                _expect(isinstance(pair, list) and len(pair) == 2, path, "expected [A, B]")
                a = _label_set(u, pair[0], path + "[0]")
                b = _label_set(u, pair[1], path + "[1]")
                pairs.add((u.encode(a), u.encode(b)))
            relation = RelationSpec(EXPLICIT, tuple((tuple(u.sorted_labels(a)), tuple(u.sorted_labels(b)))
                                                    for a, b in sorted(pairs)))
        else:
            relation = RelationSpec(rkind)
    return SpaceFile(tuple(labels), primal, topology, relation)


def emit(sf: SpaceFile) -> Dict[str, Any]:
    out: Dict[str, Any] = {"universe": list(sf.universe)}
    p: Dict[str, Any] = {"kind": sf.primal.kind}
    if sf.primal.sets is not None:
        p["sets"] = [list(s) for s in sf.primal.sets]
    if sf.primal.element is not None:
        p["element"] = sf.primal.element
    out["primal"] = p
    if sf.topology is not None:
        t: Dict[str, Any] = {"kind": sf.topology.kind}
        if sf.topology.opens is not None:
            t["opens"] = [list(s) for s in sf.topology.opens]
        out["topology"] = t
    if sf.relation is not None:
        r: Dict[str, Any] = {"kind": sf.relation.kind}
        if sf.relation.pairs is not None:
            r["pairs"] = [[list(a), list(b)] for a, b in sf.relation.pairs]
        out["relation"] = r
    return out


def load(path: str) -> SpaceFile:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SpaceFileError(path, f"cannot read file ({exc.strerror})") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpaceFileError(path, f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return parse(data)
