import pytest
from hypothesis import given, strategies as st

from proxal.sets import (
    SubsetFamily,
    Universe,
    UniverseError,
    bits,
    complement,
    is_downward_closed,
    is_subset,
    popcount,
    submasks,
)

ABC = Universe.of("abc")


def test_complement_examples():
    assert complement(ABC, ABC.encode(["b"])) == ABC.encode(["a", "c"])
    assert complement(ABC, 0) == ABC.full
    assert complement(ABC, ABC.full) == 0


def test_encode_examples():
    assert ABC.encode(["b", "c"]) == 0b110
    assert ABC.encode([]) == 0
    with pytest.raises(UniverseError):
        ABC.encode(["a", "a"])
    with pytest.raises(UniverseError):
        ABC.encode(["z"])


def test_universe_validation():
    with pytest.raises(UniverseError):
        Universe(())
    with pytest.raises(UniverseError):
        Universe(tuple("abcdef"))
    with pytest.raises(UniverseError):
        Universe(("a", "a"))
    with pytest.raises(UniverseError):
        Universe(("a", ""))


def test_decode_and_wire_format():
    u = Universe(("c", "a", "b"))
    m = u.encode(["a", "c"])
    assert u.decode(m) == ["c", "a"]
    assert u.sorted_labels(m) == ["a", "c"]
    assert u.fmt(0) == "{}"
    with pytest.raises(UniverseError):
        u.decode(8)


def test_downward_closed_examples():
    family = SubsetFamily.from_labels(ABC, [[], ["b"], ["c"], ["b", "c"]])
    assert is_downward_closed(ABC, family)
    bad = SubsetFamily.from_labels(ABC, [["a", "b"]])
    v = is_downward_closed(ABC, bad)
    assert v.failed and v.witness == {"A": ABC.encode(["a", "b"]), "B": 0}
    assert is_downward_closed(ABC, SubsetFamily.empty(ABC))


def test_family_basics():
    f = SubsetFamily.of(ABC, [5, 0, 3])
    assert list(f) == [0, 3, 5]
    assert len(f) == 3
    assert 3 in f and 4 not in f
    assert f <= SubsetFamily.powerset(ABC)
    assert len(f.complement_family()) == 5
    assert f.to_labels() == [[], ["a", "b"], ["a", "c"]]
    with pytest.raises(UniverseError):
        SubsetFamily.of(ABC, [8])


masks5 = st.integers(0, 31)
U5 = Universe.letters(5)


@given(masks5)
def test_complement_involution(a):
    assert complement(U5, complement(U5, a)) == a


@given(masks5, masks5)
def test_de_morgan(a, b):
    assert complement(U5, a | b) == complement(U5, a) & complement(U5, b)
    assert complement(U5, a & b) == complement(U5, a) | complement(U5, b)


@given(masks5)
def test_encode_decode_roundtrip(a):
    assert U5.encode(U5.decode(a)) == a
    assert popcount(a) == len(U5.decode(a)) == len(list(bits(a)))


@given(masks5)
def test_submasks_are_exactly_the_subsets(a):
    subs = list(submasks(a))
    assert subs == sorted(subs)
    assert set(subs) == {b for b in range(32) if is_subset(b, a)}
