"""Primals: families closed downward, missing X, and prime under intersection."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List

from .sets import SubsetFamily, Universe, UniverseError, bits, is_downward_closed
from .verdict import Verdict

BRUTE_FORCE_MAX_N = 4


class PrimalError(ValueError):
    pass


class SizeCapError(ValueError):
    """Raised when an exhaustive routine is asked for a universe beyond its cap."""


@dataclass(frozen=True)
class Primal:
    universe: Universe
    family: SubsetFamily
    validated: bool = False

    def __contains__(self, m: int) -> bool:
        return m in self.family

    @property
    def is_maximal(self) -> bool:
        return self.family.table == maximal_table(self.universe)

    @property
    def is_degenerate(self) -> bool:
        """The empty family passes every axiom but is flagged in reports."""
        return self.family.table == 0

    def __repr__(self) -> str:
        return f"Primal({self.family!r})"


def maximal_table(u: Universe) -> int:
    return ((1 << u.size) - 1) & ~(1 << u.full)


def check_primal(u: Universe, f: SubsetFamily) -> Verdict:
    if u.full in f:
        return Verdict.fail("(i)", A=u.full)
    down = is_downward_closed(u, f)
    if not down:
        return Verdict.fail("(ii)", **down.witness)
    outside = [m for m in u.subsets() if m not in f]
    for i, a in enumerate(outside):
        for b in outside[i:]:
            if a & b in f:
                return Verdict.fail("(iii)", A=a, B=b)
    return Verdict.ok()


def check_primal_alt(u: Universe, f: SubsetFamily) -> Verdict:
    """The contrapositive characterisation; must agree with ``check_primal``."""
    if u.full in f:
        return Verdict.fail("(i)", A=u.full)
    outside = [m for m in u.subsets() if m not in f]
    for b in outside:
        for a in u.subsets():
            if a & b == b and a in f:
                return Verdict.fail("(ii)", A=a, B=b)
    for i, a in enumerate(outside):
        for b in outside[i:]:
            if a & b in f:
                return Verdict.fail("(iii)", A=a, B=b)
    return Verdict.ok()


def make_primal(u: Universe, f: SubsetFamily) -> Primal:
    verdict = check_primal(u, f)
    if not verdict:
        raise PrimalError(f"not a primal: condition {verdict.rule} fails")
    return Primal(u, f, validated=True)


def mk_maximal(u: Universe) -> Primal:
    return Primal(u, SubsetFamily(u, maximal_table(u)), validated=True)


def mk_principal(u: Universe, x: str) -> Primal:
    """``{A : x not in A}``."""
    bit = 1 << u.index(x)
    return Primal(u, SubsetFamily.of(u, (m for m in u.subsets() if not m & bit)), validated=True)


def mk_empty(u: Universe) -> Primal:
    return Primal(u, SubsetFamily.empty(u), validated=True)


def mk_cocardinal(u: Universe, strict: bool = False) -> SubsetFamily:
    """Sets whose complement is infinite (``strict``: uncountable).

    On a finite universe no complement is infinite, so this is always the
    empty family. Kept so the cardinality examples have a finite counterpart.
    """
    return SubsetFamily.empty(u)


def dual_family(p: Primal) -> SubsetFamily:
    return p.family.complement_family()


def _brute_force(u: Universe) -> List[Primal]:
    if u.n > BRUTE_FORCE_MAX_N:
        raise SizeCapError(f"brute-force primal enumeration is capped at n={BRUTE_FORCE_MAX_N}")
    out = []
    for table in range(1 << u.size):
        f = SubsetFamily(u, table)
        if check_primal(u, f):
            out.append(Primal(u, f, validated=True))
    return out


def downward_closed_tables(u: Universe) -> List[int]:
    """Every downward-closed family, as tables, ascending.

    Masks are decided in increasing order, so all proper subsets of a mask
    are settled before the mask itself.
    """
    out: List[int] = []

    def walk(m: int, table: int) -> None:
        if m == u.size:
            out.append(table)
            return
        walk(m + 1, table)
        if all(table >> (m ^ (1 << i)) & 1 for i in bits(m)):
            walk(m + 1, table | 1 << m)

    walk(0, 0)
    out.sort()
    return out


def _from_downsets(u: Universe) -> List[Primal]:
    out = []
    for table in downward_closed_tables(u):
        f = SubsetFamily(u, table)
        if check_primal(u, f):
            out.append(Primal(u, f, validated=True))
    return out


def enumerate_primals(u: Universe, method: str = "auto") -> List[Primal]:
    """All primals on ``u``, ascending by family table.

    ``method`` is ``"brute"`` (filter all ``2**(2**n)`` families, n <= 4),
    ``"downsets"`` (filter downward-closed candidates) or ``"auto"``.
    """
    if method == "auto":
        method = "brute" if u.n <= 3 else "downsets"
    if method == "brute":
        return _brute_force(u)
    if method == "downsets":
        return _from_downsets(u)
    raise UniverseError(f"unknown enumeration method {method!r}")
