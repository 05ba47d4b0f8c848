"""Binary relations on 2^X: primal-proximities and Efremovich proximities.

A relation is stored as ``rows``: ``rows[A]`` is an int whose bit ``B`` is set
when ``A`` is related to ``B``. Rule-backed relations compute their rows on
first use; explicit relations carry them from construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Tuple

from .operators import cl_diamond_map
from .primal import Primal, SizeCapError
from .sets import Universe, UniverseError
from .topology import Topology
from .verdict import Status, Verdict

EXPLICIT = "explicit"
DOUBLE_COMPLEMENT = "double-complement"
INTERSECTION_COMPLEMENT = "intersection-complement"
CLOSURE_OVERLAP = "closure-overlap"
POINT_CLOSURE = "point-closure"
POINT_DIAMOND = "point-diamond"
DIAMOND_OVERLAP = "diamond-overlap"

RULE_KINDS = (
    DOUBLE_COMPLEMENT,
    INTERSECTION_COMPLEMENT,
    CLOSURE_OVERLAP,
    POINT_CLOSURE,
    POINT_DIAMOND,
    DIAMOND_OVERLAP,
)
KINDS = RULE_KINDS + (EXPLICIT,)
TOPOLOGICAL_KINDS = frozenset({CLOSURE_OVERLAP, POINT_CLOSURE, POINT_DIAMOND, DIAMOND_OVERLAP})


class RelationError(ValueError):
    pass


@dataclass(frozen=True)
class ProximityRelation:
    universe: Universe
    kind: str
    primal: Optional[Primal] = None
    topology: Optional[Topology] = None
    pairs: FrozenSet[Tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise RelationError(f"unknown relation kind {self.kind!r}; expected one of {list(KINDS)}")
        if self.kind != EXPLICIT and self.primal is None:
            raise RelationError(f"{self.kind} relation needs a primal")
        if self.kind in TOPOLOGICAL_KINDS and self.topology is None:
            raise RelationError(f"{self.kind} relation needs a topology")
        for part in (self.primal, self.topology):
            if part is not None and part.universe != self.universe:
                raise UniverseError("relation parts must share one universe")
        for a, b in self.pairs:
            if not (0 <= a <= self.universe.full and 0 <= b <= self.universe.full):
                raise UniverseError(f"pair ({a}, {b}) out of range")

    def _rule(self) -> Callable[[int, int], bool]:
        u, p, t = self.universe, self.primal, self.topology
        comp = u.complement
        if self.kind == EXPLICIT:
            pairs = self.pairs
            return lambda a, b: (a, b) in pairs
        if self.kind == DOUBLE_COMPLEMENT:
            return lambda a, b: comp(a) in p and comp(b) in p
        if self.kind == INTERSECTION_COMPLEMENT:
            return lambda a, b: comp(a & b) in p
        if self.kind == CLOSURE_OVERLAP:
            cl = t.closure_table
            return lambda a, b: comp(cl[a] & cl[b]) in p
        if self.kind == POINT_CLOSURE:
            cl = t.closure_table
            return lambda a, b: comp(a & cl[b]) in p
        cld = cl_diamond_map(t, p).table
        if self.kind == POINT_DIAMOND:
            return lambda a, b: comp(a & cld[b]) in p
        return lambda a, b: comp(cld[a] & cld[b]) in p

    def evaluate(self, a: int, b: int) -> bool:
        """Evaluate the defining rule directly, bypassing the cached matrix."""
        return self._rule()(a, b)

    @cached_property
    def rows(self) -> Tuple[int, ...]:
        rule = self._rule()
        u = self.universe
        out = []
        for a in u.subsets():
            row = 0
            for b in u.subsets():
                if rule(a, b):
                    row |= 1 << b
            out.append(row)
        return tuple(out)

    def related(self, a: int, b: int) -> bool:
        return bool(self.rows[a] >> b & 1)

    def pair_list(self) -> List[Tuple[int, int]]:
        """All related pairs, ascending by ``(A, B)``."""
        u = self.universe
        return [(a, b) for a in u.subsets() for b in u.subsets() if self.rows[a] >> b & 1]

    def as_explicit(self) -> "ProximityRelation":
        return ProximityRelation(self.universe, EXPLICIT, self.primal, self.topology, frozenset(self.pair_list()))

    def __repr__(self) -> str:
        return f"ProximityRelation({self.kind}, n={self.universe.n})"


def related(r: ProximityRelation, a: int, b: int) -> bool:
    return r.related(a, b)


def materialize(r: ProximityRelation) -> ProximityRelation:
    if r.universe.n > 5:
        raise SizeCapError("relations are capped at n=5")
    r.rows
    return r


def explicit(u: Universe, pairs: Iterable[Tuple[int, int]], primal: Optional[Primal] = None,
             topology: Optional[Topology] = None) -> ProximityRelation:
    return ProximityRelation(u, EXPLICIT, primal, topology, frozenset(pairs))


def from_rows(u: Universe, rows: Iterable[int], primal: Optional[Primal] = None) -> ProximityRelation:
    pairs = [(a, b) for a, row in enumerate(rows) for b in u.subsets() if row >> b & 1]
    return explicit(u, pairs, primal)


def from_double_complement(p: Primal) -> ProximityRelation:
    return ProximityRelation(p.universe, DOUBLE_COMPLEMENT, p)


def from_intersection_complement(p: Primal) -> ProximityRelation:
    return ProximityRelation(p.universe, INTERSECTION_COMPLEMENT, p)


def from_closure_overlap(t: Topology, p: Primal) -> ProximityRelation:
    return ProximityRelation(p.universe, CLOSURE_OVERLAP, p, t)


def from_point_closure(t: Topology, p: Primal) -> ProximityRelation:
    return ProximityRelation(p.universe, POINT_CLOSURE, p, t)


def from_point_diamond(t: Topology, p: Primal) -> ProximityRelation:
    return ProximityRelation(p.universe, POINT_DIAMOND, p, t)


def from_diamond_overlap(t: Topology, p: Primal) -> ProximityRelation:
    return ProximityRelation(p.universe, DIAMOND_OVERLAP, p, t)


def build(kind: str, p: Primal, t: Optional[Topology] = None) -> ProximityRelation:
    return ProximityRelation(p.universe, kind, p, t if kind in TOPOLOGICAL_KINDS else None)


def overlap(u: Universe) -> ProximityRelation:
    """``A`` related to ``B`` iff they meet."""
    return explicit(u, ((a, b) for a in u.subsets() for b in u.subsets() if a & b))


@dataclass(frozen=True)
class AxiomReport:
    verdicts: Dict[int, Verdict]

    @property
    def ok(self) -> bool:
        return all(v.status is Status.PASS for v in self.verdicts.values())

    def __bool__(self) -> bool:
        return self.ok

    def failed(self) -> List[int]:
        return [k for k, v in sorted(self.verdicts.items()) if v.failed]

    def passes(self, axioms: Iterable[int]) -> bool:
        return all(self.verdicts[k].status is Status.PASS for k in axioms)


def _symmetry(r: ProximityRelation) -> Verdict:
    u = r.universe
    for a in u.subsets():
        for b in u.subsets():
            if r.related(a, b) and not r.related(b, a):
                return Verdict.fail("axiom 1", A=a, B=b)
    return Verdict.ok()


def _union(r: ProximityRelation) -> Verdict:
    u = r.universe
    for a in u.subsets():
        for b in u.subsets():
            for c in u.subsets():
                if r.related(a, b | c) != (r.related(a, b) or r.related(a, c)):
                    return Verdict.fail("axiom 2", A=a, B=b, C=c)
    return Verdict.ok()


def _overlap_axiom(r: ProximityRelation, forced: Callable[[int, int], bool]) -> Verdict:
    """Axiom 4: forced pairs must be related. Pairs are tried by smallest
    union first, then ``(A, B)``, so the reported witness is the tightest."""
    u = r.universe
    for a, b in sorted(((a, b) for a in u.subsets() for b in u.subsets()), key=lambda ab: (ab[0] | ab[1], ab)):
        if forced(a, b) and not r.related(a, b):
            return Verdict.fail("axiom 4", A=a, B=b)
    return Verdict.ok()


def _separator_masks(r: ProximityRelation, separated: Callable[[int, int], bool]):
    """Per-subset bitmasks used by the axiom-5 search.

    ``left[A]``: the C with A unrelated to C^c. ``right[B]``: the D with D^c
    unrelated to B. ``good[C]``: the D for which ``separated(C, D)`` holds.
    """
    u = r.universe
    comp = u.complement
    left, right, good = [], [], []
    for a in u.subsets():
        left.append(sum(1 << c for c in u.subsets() if not r.related(a, comp(c))))
        right.append(sum(1 << d for d in u.subsets() if not r.related(comp(d), a)))
        good.append(sum(1 << d for d in u.subsets() if separated(a, d)))
    return left, right, good


def _axiom5(r: ProximityRelation, separated: Callable[[int, int], bool]) -> Verdict:
    u = r.universe
    left, right, good = _separator_masks(r, separated)
    for a in u.subsets():
        for b in u.subsets():
            if r.related(a, b):
                continue
            cs = left[a]
            ds = right[b]
            if not any(cs >> c & 1 and good[c] & ds for c in u.subsets()):
                return Verdict.fail("axiom 5", A=a, B=b)
    return Verdict.ok()


def _axiom5_witness(r: ProximityRelation, separated: Callable[[int, int], bool],
                    a: int, b: int) -> Optional[Tuple[int, int]]:
    u = r.universe
    comp = u.complement
    for c in u.subsets():
        if r.related(a, comp(c)):
            continue
        for d in u.subsets():
            if not r.related(comp(d), b) and separated(c, d):
                return c, d
    return None


def _primal_separated(p: Primal) -> Callable[[int, int], bool]:
    comp = p.universe.complement
    return lambda c, d: comp(c & d) not in p


def primal_axiom5_witness(r: ProximityRelation, p: Primal, a: int, b: int) -> Optional[Tuple[int, int]]:
    """First ``(C, D)`` in ascending order satisfying the three axiom-5 conjuncts."""
    return _axiom5_witness(r, _primal_separated(p), a, b)


def ef_axiom5_witness(r: ProximityRelation, a: int, b: int) -> Optional[Tuple[int, int]]:
    return _axiom5_witness(r, lambda c, d: c & d == 0, a, b)


def check_primal_proximity(r: ProximityRelation, p: Primal,
                           axioms: Iterable[int] = (1, 2, 3, 4, 5)) -> AxiomReport:
    if r.universe != p.universe:
        raise UniverseError("relation and primal must share one universe")
    u = r.universe
    comp = u.complement
    out: Dict[int, Verdict] = {}
    for k in axioms:
        if k == 1:
            v = _symmetry(r)
        elif k == 2:
            v = _union(r)
        elif k == 3:
            v = Verdict.ok()
            for a in u.subsets():
                if comp(a) not in p and r.rows[a]:
                    b = (r.rows[a] & -r.rows[a]).bit_length() - 1
                    v = Verdict.fail("axiom 3", A=a, B=b)
                    break
        elif k == 4:
            v = _overlap_axiom(r, lambda a, b: comp(a & b) in p)
        elif k == 5:
            v = _axiom5(r, _primal_separated(p))
        else:
            raise ValueError(f"no axiom {k}")
        out[k] = v
    return AxiomReport(out)


def check_ef_proximity(r: ProximityRelation) -> AxiomReport:
    u = r.universe
    out: Dict[int, Verdict] = {1: _symmetry(r), 2: _union(r)}
    out[3] = Verdict.ok()
    for a in u.subsets():
        for b in u.subsets():
            if r.related(a, b) and (a == 0 or b == 0):
                out[3] = Verdict.fail("axiom 3", A=a, B=b)
                break
        if out[3].failed:
            break
    out[4] = _overlap_axiom(r, lambda a, b: a & b != 0)
    out[5] = _axiom5(r, lambda c, d: c & d == 0)
    return AxiomReport(out)
