"""Finite universes, bitmask subsets and subset families.

A subset of a universe with labels ``[l0, l1, ...]`` is an ``int`` mask whose
bit ``i`` is set when ``l_i`` is a member. A family of subsets is itself an
``int`` with ``2**n`` bits: bit ``m`` is set when the subset with mask ``m``
belongs to the family.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, List, Sequence, Tuple

from .verdict import Verdict

MAX_N = 5


class UniverseError(ValueError):
    """Raised for malformed universes or unknown/duplicate labels."""


@dataclass(frozen=True)
class Universe:
    labels: Tuple[str, ...]

    def __post_init__(self) -> None:
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if not 1 <= len(labels) <= MAX_N:
            raise UniverseError(f"universe must have 1..{MAX_N} elements, got {len(labels)}")
        if len(set(labels)) != len(labels):
            raise UniverseError(f"duplicate labels in universe {list(labels)}")
        for label in labels:
            if not isinstance(label, str) or not label:
                raise UniverseError(f"labels must be non-empty strings, got {label!r}")

    @classmethod
    def of(cls, labels: Iterable[str]) -> "Universe":
        return cls(tuple(labels))

    @classmethod
    def letters(cls, n: int) -> "Universe":
        """The universe ``a, b, c, ...`` with ``n`` elements."""
        return cls(tuple("abcdefghijklmnopqrstuvwxyz"[:n]))

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def size(self) -> int:
        """Number of subsets, ``2**n``."""
        return 1 << self.n

    def subsets(self) -> range:
        return range(self.size)

    def points(self) -> range:
        return range(self.n)

    def complement(self, s: int) -> int:
        return self.full & ~s

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UniverseError(f"unknown label {label!r}; universe is {list(self.labels)}") from None

    def encode(self, names: Iterable[str]) -> int:
        mask = 0
        for name in names:
            bit = 1 << self.index(name)
            if mask & bit:
                raise UniverseError(f"duplicate label {name!r} in subset")
            mask |= bit
        return mask

    def decode(self, mask: int) -> List[str]:
        """Labels of ``mask`` in universe order."""
        if not 0 <= mask <= self.full:
            raise UniverseError(f"mask {mask} out of range for n={self.n}")
        return [self.labels[i] for i in range(self.n) if mask >> i & 1]

    def sorted_labels(self, mask: int) -> List[str]:
        """Wire format for a subset: a sorted label list."""
        return sorted(self.decode(mask))

    def fmt(self, mask: int) -> str:
        return "{" + ",".join(self.decode(mask)) + "}"


def complement(u: Universe, s: int) -> int:
    return u.complement(s)


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def popcount(m: int) -> int:
    return bin(m).count("1")


def bits(m: int) -> Iterator[int]:
    """Indices of set bits of ``m``, ascending."""
    i = 0
    while m:
        if m & 1:
            yield i
        m >>= 1
        i += 1


def submasks(m: int) -> Iterator[int]:
    """All submasks of ``m`` in ascending order."""
    return (s for s in range(m + 1) if s & ~m == 0)


@dataclass(frozen=True)
class SubsetFamily:
    universe: Universe
    table: int = 0

    def __post_init__(self) -> None:
        if not 0 <= self.table < 1 << self.universe.size:
            raise UniverseError("family table out of range for universe")

    @classmethod
    def of(cls, u: Universe, members: Iterable[int]) -> "SubsetFamily":
        table = 0
        for m in members:
            if not 0 <= m <= u.full:
                raise UniverseError(f"mask {m} out of range for n={u.n}")
            table |= 1 << m
        return cls(u, table)

    @classmethod
    def from_labels(cls, u: Universe, sets: Iterable[Sequence[str]]) -> "SubsetFamily":
        return cls.of(u, (u.encode(s) for s in sets))

    @classmethod
    def empty(cls, u: Universe) -> "SubsetFamily":
        return cls(u, 0)

    @classmethod
    def powerset(cls, u: Universe) -> "SubsetFamily":
        return cls(u, (1 << u.size) - 1)

    def __contains__(self, m: int) -> bool:
        return bool(self.table >> m & 1)

    def __iter__(self) -> Iterator[int]:
        return bits(self.table)

    def __len__(self) -> int:
        return popcount(self.table)

    def __le__(self, other: "SubsetFamily") -> bool:
        return self.table & ~other.table == 0

    def complement_family(self) -> "SubsetFamily":
        return SubsetFamily(self.universe, ((1 << self.universe.size) - 1) & ~self.table)

    def to_labels(self) -> List[List[str]]:
        return [self.universe.sorted_labels(m) for m in self]

    def __repr__(self) -> str:
        inner = ", ".join(self.universe.fmt(m) for m in self)
        return f"SubsetFamily[{inner}]"


def is_downward_closed(u: Universe, f: SubsetFamily) -> Verdict:
    """PASS iff every subset of a member is a member; FAIL gives ``(A, B)``.

    The witness ``B`` is the smallest missing subset of the first offending ``A``.
    """
    for a in f:
        for b in submasks(a):
            if b not in f:
                return Verdict.fail("downward-closed", A=a, B=b)
    return Verdict.ok()
