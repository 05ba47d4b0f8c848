"""Theorem registry: every claim as exhaustively quantified parts.

A theorem is a list of parts. Each part quantifies some variables over the
instance (names ``x``, ``y`` range over points, all others over subsets),
and pairs a hypothesis with a conclusion. A part fails on an assignment where
the hypothesis holds and the conclusion does not; that assignment is the
witness, and re-evaluating the same part on it reproduces the failure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from ..induced import is_primal_normal, is_primal_regular
from ..instance import Instance
from ..operators import cl_diamond_map, operator_to_topology, ClosureMap
from ..proximity import (
    CLOSURE_OVERLAP,
    DIAMOND_OVERLAP,
    DOUBLE_COMPLEMENT,
    INTERSECTION_COMPLEMENT,
    POINT_CLOSURE,
    POINT_DIAMOND,
    check_primal_proximity,
)
from ..sets import SubsetFamily, is_subset
from ..topology import Topology, is_normal, is_T1
from ..verdict import Status

POINT_VARS = frozenset({"x", "y"})


class UnknownTheoremError(KeyError):
    def __str__(self) -> str:
        return f"unknown theorem id {self.args[0]!r}; valid ids: {', '.join(theorem_ids())}"


class MissingPartError(ValueError):
    pass


class Context:
    """Per-instance tables shared by all theorem bodies."""

    def __init__(self, inst: Instance) -> None:
        self.inst = inst
        self.u = inst.universe
        self.p = inst.primal
        self.r = inst.relation
        self.t = inst.topology
        self.full = self.u.full
        self.comp = self.u.complement
        self.rows = self.r.rows

    def rel(self, a: int, b: int) -> bool:
        return bool(self.rows[a] >> b & 1)

    def inP(self, m: int) -> bool:
        return m in self.p

    @cached_property
    def maximal(self) -> bool:
        return self.p.is_maximal

    @cached_property
    def pp(self) -> Tuple[int, ...]:
        out = []
        for a in self.u.subsets():
            m = 0
            for i in self.u.points():
                if self.rows[1 << i] >> a & 1:
                    m |= 1 << i
            out.append(m)
        return tuple(out)

    @cached_property
    def cls(self) -> Tuple[int, ...]:
        return tuple(a | self.pp[a] for a in self.u.subsets())

    @cached_property
    def hat(self) -> SubsetFamily:
        u = self.u
        return SubsetFamily.of(u, (self.comp(f) for f in u.subsets() if is_subset(self.pp[f], f)))

    @cached_property
    def hat_cl(self) -> Tuple[int, ...]:
        return Topology(self.u, self.hat).closure_table

    @cached_property
    def hat_int(self) -> Tuple[int, ...]:
        return Topology(self.u, self.hat).interior_table

    @cached_property
    def star(self) -> SubsetFamily:
        return operator_to_topology(ClosureMap(self.u, self.cls))

    @cached_property
    def cld(self) -> Tuple[int, ...]:
        return cl_diamond_map(self.t, self.p).table

    @cached_property
    def dia(self) -> SubsetFamily:
        return operator_to_topology(ClosureMap(self.u, self.cld))

    @cached_property
    def proximity_report(self):
        return check_primal_proximity(self.r, self.p)

    @cached_property
    def diamond_regular(self) -> bool:
        return bool(is_primal_regular(self.t, self.p))

    @cached_property
    def diamond_normal(self) -> bool:
        return bool(is_primal_normal(self.t, self.p))


Pred = Callable[..., bool]


def _always(c: Context, **_: int) -> bool:
    return True


@dataclass(frozen=True)
class Part:
    label: str
    vars: Tuple[str, ...]
    concl: Pred
    hyp: Pred = _always

    def domains(self, c: Context) -> List[range]:
        return [c.u.points() if v in POINT_VARS else c.u.subsets() for v in self.vars]

    def violated(self, c: Context, env: Dict[str, int]) -> bool:
        return self.hyp(c, **env) and not self.concl(c, **env)


# An instance-level requirement returns None when met, else the reason it is not.
Requirement = Callable[[Context], Optional[str]]


@dataclass(frozen=True)
class Theorem:
    id: str
    title: str
    parts: Tuple[Part, ...]
    requires: Tuple[Requirement, ...] = ()
    needs_topology: bool = False
    standing: bool = True

    def part(self, label: str) -> Part:
        for p in self.parts:
            if p.label == label:
                return p
        raise KeyError(f"{self.id} has no part {label!r}")


@dataclass(frozen=True)
class TheoremVerdict:
    theorem: str
    status: Status
    instance_id: str
    witness: Dict[str, Any] = field(default_factory=dict)
    note: Optional[str] = None

    @property
    def part(self) -> Optional[str]:
        return self.witness.get("part")

    def assignment(self) -> Dict[str, int]:
        return {k: v for k, v in self.witness.items() if k != "part"}


# requirements


def _standing(c: Context) -> Optional[str]:
    rep = c.proximity_report
    if rep.ok:
        return None
    return "relation is not a primal-proximity (axioms " + ",".join(map(str, rep.failed())) + " fail)"


def _maximal(c: Context) -> Optional[str]:
    return None if c.maximal else "primal is not 2^X minus X"


def _kind(*kinds: str) -> Requirement:
    def req(c: Context) -> Optional[str]:
        return None if c.r.kind in kinds else f"relation kind {c.r.kind} is not {'/'.join(kinds)}"

    return req


def _normal(c: Context) -> Optional[str]:
    return None if is_normal(c.t) else "topology is not normal"


def _t1(c: Context) -> Optional[str]:
    return None if is_T1(c.t) else "topology is not T1"


def _primal_regular(c: Context) -> Optional[str]:
    return None if c.diamond_regular else "space is not primal-regular"


def _primal_normal(c: Context) -> Optional[str]:
    return None if c.diamond_normal else "space is not primal-normal"


# reusable part families


def _exists_separators(c: Context, A: int, B: int) -> bool:
    comp = c.comp
    return any(
        not c.rel(A, comp(C)) and not c.rel(comp(D), B) and not c.inP(comp(C & D))
        for C in c.u.subsets()
        for D in c.u.subsets()
    )


def _axiom_parts(axioms: Sequence[int]) -> Tuple[Part, ...]:
    table = {
        1: Part("axiom 1", ("A", "B"), lambda c, A, B: c.rel(B, A), lambda c, A, B: c.rel(A, B)),
        2: Part("axiom 2", ("A", "B", "C"),
                lambda c, A, B, C: c.rel(A, B | C) == (c.rel(A, B) or c.rel(A, C))),
        3: Part("axiom 3", ("A", "B"), lambda c, A, B: not c.rel(A, B),
                lambda c, A, B: not c.inP(c.comp(A))),
        4: Part("axiom 4", ("A", "B"), lambda c, A, B: c.rel(A, B),
                lambda c, A, B: c.inP(c.comp(A & B))),
        5: Part("axiom 5", ("A", "B"), _exists_separators, lambda c, A, B: not c.rel(A, B)),
    }
    return tuple(table[k] for k in axioms)


def _kuratowski_parts(prefix: str, op: Callable[[Context], Tuple[int, ...]]) -> Tuple[Part, ...]:
    return (
        Part(f"{prefix} K1", (), lambda c: op(c)[0] == 0),
        Part(f"{prefix} K2", ("A",), lambda c, A: is_subset(A, op(c)[A])),
        Part(f"{prefix} K3", ("A", "B"), lambda c, A, B: op(c)[A | B] == op(c)[A] | op(c)[B]),
        Part(f"{prefix} K4", ("A",), lambda c, A: op(c)[op(c)[A]] == op(c)[A]),
    )


def _topology_parts(prefix: str, fam: Callable[[Context], SubsetFamily]) -> Tuple[Part, ...]:
    return (
        Part(f"{prefix} empty", (), lambda c: 0 in fam(c)),
        Part(f"{prefix} full", (), lambda c: c.full in fam(c)),
        Part(f"{prefix} union", ("A", "B"), lambda c, A, B: A | B in fam(c),
             lambda c, A, B: A in fam(c) and B in fam(c)),
        Part(f"{prefix} intersection", ("A", "B"), lambda c, A, B: A & B in fam(c),
             lambda c, A, B: A in fam(c) and B in fam(c)),
    )


def _diff(a: int, b: int) -> int:
    return a & ~b


def _base_topology(c: Context) -> SubsetFamily:
    return c.t.opens if c.r.kind == POINT_CLOSURE else c.dia


THEOREMS: Tuple[Theorem, ...] = (
    Theorem("E3.5", "double-complement relation is a primal-proximity",
            _axiom_parts((1, 2, 3, 4, 5)), requires=(_kind(DOUBLE_COMPLEMENT),), standing=False),
    Theorem("E3.6", "intersection-complement relation is a primal-proximity",
            _axiom_parts((1, 2, 3, 4, 5)), requires=(_kind(INTERSECTION_COMPLEMENT),), standing=False),
    Theorem("E3.7", "closure-overlap relation is a primal-proximity for normal tau and maximal primal",
            _axiom_parts((1, 2, 3, 4, 5)), requires=(_kind(CLOSURE_OVERLAP), _normal, _maximal),
            needs_topology=True, standing=False),
    Theorem("R3.3", "maximal primal: points of A relate to A; unrelated sets are disjoint", (
        Part("(1)", ("x", "A"), lambda c, x, A: c.rel(1 << x, A), lambda c, x, A: bool(A >> x & 1)),
        Part("(2)", ("A", "B"), lambda c, A, B: A & B == 0, lambda c, A, B: not c.rel(A, B)),
    ), requires=(_maximal,)),
    Theorem("C3.4", "contrapositive forms of the primal-proximity axioms", (
        Part("(1)", ("A", "B"), lambda c, A, B: not c.rel(A, B), lambda c, A, B: not c.rel(B, A)),
        Part("(2)", ("A", "B", "C"),
             lambda c, A, B, C: (not c.rel(A, B | C)) == (not c.rel(A, B) and not c.rel(A, C))),
        Part("(3)", ("A", "B"), lambda c, A, B: c.inP(c.comp(A)), lambda c, A, B: c.rel(A, B)),
        Part("(4)", ("A", "B"), lambda c, A, B: not c.inP(c.comp(A & B)), lambda c, A, B: not c.rel(A, B)),
        Part("(5)", ("A", "B"), _exists_separators, lambda c, A, B: not c.rel(A, B)),
    )),
    Theorem("L-mono", "relation is monotone in both arguments", (
        Part("mono", ("A", "B", "C", "D"), lambda c, A, B, C, D: c.rel(C, D),
             lambda c, A, B, C, D: c.rel(A, B) and is_subset(A, C) and is_subset(B, D)),
    )),
    Theorem("L4.2", "B unrelated to A puts the point-primal set of A inside B^c", (
        Part("main", ("A", "B"), lambda c, A, B: is_subset(c.pp[A], c.comp(B)),
             lambda c, A, B: not c.rel(B, A)),
    )),
    Theorem("T4.5", "B unrelated to A stays unrelated to the point-primal set of A", (
        Part("main", ("A", "B"), lambda c, A, B: not c.rel(B, c.pp[A]), lambda c, A, B: not c.rel(B, A)),
    )),
    Theorem("C4.5", "B unrelated to A makes their point-primal sets unrelated", (
        Part("main", ("A", "B"), lambda c, A, B: not c.rel(c.pp[B], c.pp[A]),
             lambda c, A, B: not c.rel(B, A)),
    )),
    Theorem("T4.6", "nine algebraic properties of the point-primal operator", (
        Part("(1)", ("A", "B"), lambda c, A, B: is_subset(c.pp[A], c.pp[B]), lambda c, A, B: is_subset(A, B)),
        Part("(2)", ("A", "B"), lambda c, A, B: is_subset(c.pp[A & B], c.pp[A] & c.pp[B])),
        Part("(3)", ("A", "B"), lambda c, A, B: c.pp[A | B] == c.pp[A] | c.pp[B]),
        Part("(4)", ("A",), lambda c, A: is_subset(c.pp[c.pp[A]], c.pp[A])),
        Part("(5)", ("A",), lambda c, A: c.pp[A] == 0, lambda c, A: not c.inP(c.comp(A))),
        Part("(6)", (), lambda c: c.pp[0] == 0),
        Part("(7)", ("A", "B"), lambda c, A, B: is_subset(_diff(c.pp[A], c.pp[B]), c.pp[_diff(A, B)])),
        Part("(8)", ("A", "B"), lambda c, A, B: c.pp[A | B] == c.pp[A] == c.pp[_diff(A, B)],
             lambda c, A, B: not c.inP(c.comp(B))),
        Part("(9)", ("A", "B"), lambda c, A, B: c.pp[A] == c.pp[B],
             lambda c, A, B: not c.inP(c.comp(A ^ B))),
    )),
    Theorem("T4.9", "point-primal operator against primal non-members and the maximal primal", (
        Part("(1)", ("A", "B"), lambda c, A, B: A & c.pp[B] == 0, lambda c, A, B: not c.inP(c.comp(A))),
        Part("(2)", (), lambda c: all(c.rel(1 << i, c.full) for i in c.u.points()) == c.maximal),
        Part("(3)", (), lambda c: c.pp[c.full] == c.full, lambda c: c.maximal),
    )),
    Theorem("T4.10", "A related to C but not to a proper part B relates to C minus B", (
        Part("main", ("A", "B", "C"), lambda c, A, B, C: c.rel(A, _diff(C, B)),
             lambda c, A, B, C: is_subset(B, C) and B != C and not c.rel(A, B) and c.rel(A, C)),
    )),
    Theorem("T4.11", "unrelated A, B are split by some C with A~/C and B~/C^c", (
        Part("main", ("A", "B"),
             lambda c, A, B: any(not c.rel(A, C) and not c.rel(B, c.comp(C)) for C in c.u.subsets()),
             lambda c, A, B: not c.rel(A, B)),
    )),
    Theorem("C4.12", "A unrelated to B and B related to C gives A unrelated to C", (
        Part("main", ("A", "B", "C"), lambda c, A, B, C: not c.rel(A, C),
             lambda c, A, B, C: not c.rel(A, B) and c.rel(B, C)),
    )),
    Theorem("L5.2", "relation passes through a shared point", (
        Part("main", ("A", "B", "x"), lambda c, A, B, x: c.rel(A, B),
             lambda c, A, B, x: c.rel(A, 1 << x) and c.rel(1 << x, B)),
    )),
    Theorem("T5.3", "complements of proximity-closed sets form a topology",
            _topology_parts("tau-hat", lambda c: c.hat)),
    Theorem("T5.4", "point-primal set equals the tau-hat closure", (
        Part("main", ("A",), lambda c, A: c.pp[A] == c.hat_cl[A]),
    )),
    Theorem("T5.6", "maximal primal: point-primal operator is a Kuratowski closure",
            _kuratowski_parts("pp", lambda c: c.pp), requires=(_maximal,)),
    Theorem("T5.7", "cl-star is a Kuratowski closure and tau-star is a topology",
            _kuratowski_parts("cl*", lambda c: c.cls) + _topology_parts("tau-star", lambda c: c.star)),
    Theorem("T5.8", "cl-star interplay with the relation and the point-primal operator", (
        Part("(1)", ("A", "B"), lambda c, A, B: (not c.rel(B, A)) == (not c.rel(B, c.cls[A]))),
        Part("(2)", ("A",), lambda c, A: c.cls[c.pp[A]] == c.pp[A]),
        Part("(3)", ("A",), lambda c, A: c.cls[c.pp[A]] == c.pp[c.cls[A]]),
    )),
    Theorem("T5.9", "A inside B related to B, and every point of B related to H, gives A~H", (
        Part("main", ("A", "B", "H"), lambda c, A, B, H: c.rel(A, H),
             lambda c, A, B, H: is_subset(A, B) and c.rel(A, B)
             and all(c.rel(1 << i, H) for i in c.u.points() if B >> i & 1)),
    )),
    Theorem("E5.10", "point-closure gives tau inside tau-star; point-diamond gives tau-diamond inside tau-star", (
        Part("inclusion", ("U",), lambda c, U: U in c.star, lambda c, U: U in _base_topology(c)),
    ), requires=(_kind(POINT_CLOSURE, POINT_DIAMOND),), needs_topology=True, standing=False),
    Theorem("E5.11", "point-closure and point-diamond relations satisfy axioms (2)-(5)",
            _axiom_parts((2, 3, 4, 5)), requires=(_kind(POINT_CLOSURE, POINT_DIAMOND),),
            needs_topology=True, standing=False),
    Theorem("T5.14", "primal-regular with the point-diamond relation gives tau-diamond = tau-star", (
        Part("main", ("A",), lambda c, A: (A in c.dia) == (A in c.star)),
    ), requires=(_kind(POINT_DIAMOND), _primal_regular), needs_topology=True, standing=False),
    Theorem("E5.15", "diamond-overlap relation satisfies axioms (1)-(4)",
            _axiom_parts((1, 2, 3, 4)), requires=(_kind(DIAMOND_OVERLAP),), needs_topology=True,
            standing=False),
    Theorem("T5.17", "primal-normal T1 with the diamond-overlap relation gives tau-diamond = tau-star", (
        Part("main", ("A",), lambda c, A: (A in c.dia) == (A in c.star)),
    ), requires=(_kind(DIAMOND_OVERLAP), _t1, _primal_normal), needs_topology=True, standing=False),
    Theorem("T5.18", "A is tau-hat open iff no point of A relates to A^c", (
        Part("main", ("A",), lambda c, A: (A in c.hat)
             == all(not c.rel(1 << i, c.comp(A)) for i in c.u.points() if A >> i & 1)),
    )),
    Theorem("T5.19", "unrelated A, B: tau-hat closure of B misses A; interior form for maximal primal", (
        Part("(1)", ("A", "B"), lambda c, A, B: is_subset(c.hat_cl[B], c.comp(A)),
             lambda c, A, B: not c.rel(A, B)),
        Part("(2)", ("A", "B"), lambda c, A, B: is_subset(B, c.hat_int[c.comp(A)]),
             lambda c, A, B: c.maximal and not c.rel(A, B)),
    )),
    Theorem("T5.20", "relation is invariant under tau-hat closure", (
        Part("main", ("A", "B"), lambda c, A, B: c.rel(A, B) == c.rel(c.hat_cl[A], c.hat_cl[B])),
    )),
)

REGISTRY: Dict[str, Theorem] = {t.id: t for t in THEOREMS}


def theorem_ids() -> List[str]:
    return [t.id for t in THEOREMS]


def get_theorem(theorem_id: str) -> Theorem:
    try:
        return REGISTRY[theorem_id]
    except KeyError:
        raise UnknownTheoremError(theorem_id) from None


def _unmet(thm: Theorem, c: Context) -> Optional[str]:
    if thm.standing:
        reason = _standing(c)
        if reason:
            return reason
    for req in thm.requires:
        reason = req(c)
        if reason:
            return reason
    return None


def evaluate(thm: Theorem, c: Context) -> TheoremVerdict:
    inst_id = c.inst.id
    if thm.needs_topology and c.t is None:
        raise MissingPartError(f"{thm.id} needs an instance with a topology")
    reason = _unmet(thm, c)
    if reason:
        return TheoremVerdict(thm.id, Status.VACUOUS, inst_id, note=reason)
    seen = 0
    for part in thm.parts:
        for values in itertools.product(*part.domains(c)):
            env = dict(zip(part.vars, values))
            if not part.hyp(c, **env):
                continue
            seen += 1
            if not part.concl(c, **env):
                return TheoremVerdict(thm.id, Status.FAIL, inst_id, {"part": part.label, **env})
    if not seen:
        return TheoremVerdict(thm.id, Status.VACUOUS, inst_id, note="no assignment meets the hypotheses")
    return TheoremVerdict(thm.id, Status.PASS, inst_id)


def run_theorem(theorem_id: str, inst: Instance, context: Optional[Context] = None) -> TheoremVerdict:
    return evaluate(get_theorem(theorem_id), context or Context(inst))


def recheck(v: TheoremVerdict, inst: Instance, context: Optional[Context] = None) -> bool:
    """True when the witness of a FAIL verdict still violates its part."""
    if v.status is not Status.FAIL:
        raise ValueError("only FAIL verdicts carry witnesses")
    thm = get_theorem(v.theorem)
    c = context or Context(inst)
    part = thm.part(v.part)
    if _unmet(thm, c):
        return False
    return part.violated(c, v.assignment())


def minimize_witness(v: TheoremVerdict, inst: Instance, context: Optional[Context] = None) -> TheoremVerdict:
    """Greedily drop elements from set variables while the violation persists.

    Variables are visited in the part's order and elements in label order;
    passes repeat until nothing more can be removed.
    """
    if v.status is not Status.FAIL:
        raise ValueError("can only minimize a FAIL verdict")
    c = context or Context(inst)
    part = get_theorem(v.theorem).part(v.part)
    env = v.assignment()
    changed = True
    while changed:
        changed = False
        for name in part.vars:
            if name in POINT_VARS:
                continue
            for i in c.u.points():
                if not env[name] >> i & 1:
                    continue
                trial = dict(env, **{name: env[name] & ~(1 << i)})
                if part.violated(c, trial):
                    env = trial
                    changed = True
    return TheoremVerdict(v.theorem, v.status, v.instance_id, {"part": v.part, **env}, v.note)
