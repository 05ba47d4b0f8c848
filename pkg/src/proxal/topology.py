"""Finite topologies: validation, closure/interior, enumeration, separation."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import List, Tuple

from .primal import SizeCapError
from .sets import SubsetFamily, Universe, UniverseError, is_subset
from .verdict import Verdict


class TopologyError(ValueError):
    pass


@dataclass(frozen=True)
class Topology:
    universe: Universe
    opens: SubsetFamily

    def __contains__(self, m: int) -> bool:
        return m in self.opens

    @cached_property
    def open_sets(self) -> Tuple[int, ...]:
        return tuple(self.opens)

    @cached_property
    def closed_sets(self) -> Tuple[int, ...]:
        u = self.universe
        return tuple(sorted(u.complement(m) for m in self.opens))

    @cached_property
    def closure_table(self) -> Tuple[int, ...]:
        u = self.universe
        table = []
        for a in u.subsets():
            c = u.full
            for f in self.closed_sets:
                if is_subset(a, f):
                    c &= f
            table.append(c)
        return tuple(table)

    @cached_property
    def interior_table(self) -> Tuple[int, ...]:
        table = []
        for a in self.universe.subsets():
            i = 0
            for g in self.open_sets:
                if is_subset(g, a):
                    i |= g
            table.append(i)
        return tuple(table)

    def minimal_open(self, a: int) -> int:
        """Smallest open superset of ``a`` (opens are intersection-closed)."""
        m = self.universe.full
        for g in self.open_sets:
            if is_subset(a, g):
                m &= g
        return m

    def __repr__(self) -> str:
        return f"Topology({self.opens!r})"


def discrete(u: Universe) -> Topology:
    return Topology(u, SubsetFamily.powerset(u))


def indiscrete(u: Universe) -> Topology:
    return Topology(u, SubsetFamily.of(u, [0, u.full]))


def check_topology(u: Universe, f: SubsetFamily) -> Verdict:
    if 0 not in f:
        return Verdict.fail("empty", A=0)
    if u.full not in f:
        return Verdict.fail("full", A=u.full)
    members = list(f)
    for i, a in enumerate(members):
        for b in members[i:]:
            if a | b not in f:
                return Verdict.fail("union", A=a, B=b)
            if a & b not in f:
                return Verdict.fail("intersection", A=a, B=b)
    return Verdict.ok()


def make_topology(u: Universe, f: SubsetFamily) -> Topology:
    verdict = check_topology(u, f)
    if not verdict:
        raise TopologyError(f"not a topology: {verdict.rule} axiom fails")
    return Topology(u, f)


def closure_in(t: Topology, a: int) -> int:
    return t.closure_table[a]


def interior_in(t: Topology, a: int) -> int:
    return t.interior_table[a]


def _close(table: int, u: Universe) -> int:
    """Smallest union- and intersection-closed table containing ``table``."""
    while True:
        members = [m for m in u.subsets() if table >> m & 1]
        grown = table
        for a in members:
            for b in members:
                grown |= 1 << (a | b) | 1 << (a & b)
        if grown == table:
            return table
        table = grown


def enumerate_topologies(u: Universe, method: str = "auto") -> List[Topology]:
    """All topologies on ``u``, ascending by open-set table.

    ``"brute"`` filters every family (n <= 3); ``"closure"`` grows topologies
    from the indiscrete one by adding a set and closing (n <= 4).
    """
    if u.n > 4:
        raise SizeCapError("topology enumeration is capped at n=4")
    if method == "auto":
        method = "brute" if u.n <= 3 else "closure"
    if method == "brute":
        if u.n > 3:
            raise SizeCapError("brute-force topology enumeration is capped at n=3")
        tables = [t for t in range(1 << u.size) if check_topology(u, SubsetFamily(u, t))]
    elif method == "closure":
        start = 1 | 1 << u.full
        seen = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for table in frontier:
                for m in u.subsets():
                    if table >> m & 1:
                        continue
                    grown = _close(table | 1 << m, u)
                    if grown not in seen:
                        seen.add(grown)
                        nxt.append(grown)
            frontier = nxt
        tables = sorted(seen)
    else:
        raise UniverseError(f"unknown enumeration method {method!r}")
    return [Topology(u, SubsetFamily(u, t)) for t in tables]


def is_T1(t: Topology) -> bool:
    u = t.universe
    return all(u.complement(1 << i) in t for i in u.points())


def is_normal(t: Topology) -> bool:
    """Disjoint closed sets have disjoint open neighbourhoods."""
    closed = t.closed_sets
    for i, f1 in enumerate(closed):
        for f2 in closed[i:]:
            if f1 & f2:
                continue
            if t.minimal_open(f1) & t.minimal_open(f2):
                return False
    return True
