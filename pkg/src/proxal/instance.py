"""A primal-proximity instance: universe, primal, relation and optional topology."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, Optional

from .primal import Primal
from .proximity import EXPLICIT, ProximityRelation
from .sets import Universe, UniverseError
from .topology import Topology


@dataclass(frozen=True)
class Instance:
    universe: Universe
    primal: Primal
    relation: ProximityRelation
    topology: Optional[Topology] = None

    def __post_init__(self) -> None:
        for part in (self.primal, self.relation, self.topology):
            if part is not None and part.universe != self.universe:
                raise UniverseError("instance parts must share one universe")

    def to_dict(self) -> Dict[str, Any]:
        """Canonical explicit form; subsets are sorted label lists."""
        u = self.universe
        rel: Dict[str, Any] = {"kind": self.relation.kind}
        if self.relation.kind == EXPLICIT:
            rel["pairs"] = [[u.sorted_labels(a), u.sorted_labels(b)] for a, b in self.relation.pair_list()]
        out: Dict[str, Any] = {
            "universe": list(u.labels),
            "primal": {"kind": "explicit", "sets": self.primal.family.to_labels()},
            "relation": rel,
        }
        if self.topology is not None:
            out["topology"] = {"kind": "explicit", "opens": self.topology.opens.to_labels()}
        return out

    @cached_property
    def id(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    def describe(self) -> str:
        u = self.universe
        bits = [f"n={u.n}", f"P={self.primal.family!r}", f"rel={self.relation.kind}"]
        if self.topology is not None:
            bits.append(f"tau={self.topology.opens!r}")
        return " ".join(bits)
