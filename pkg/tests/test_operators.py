import pytest

import oracle
from proxal.operators import (
    ClosureMap,
    check_kuratowski,
    cl_diamond,
    cl_diamond_map,
    cl_star,
    cl_star_map,
    closure_map,
    local_function,
    operator_to_topology,
    point_primal,
)
from proxal.primal import enumerate_primals, mk_empty, mk_maximal, mk_principal
from proxal.proximity import build
from proxal.sets import SubsetFamily, Universe
from proxal.topology import discrete, enumerate_topologies, indiscrete

AB = Universe.of("ab")
ABC = Universe.of("abc")


def example48():
    return build("intersection-complement", mk_principal(ABC, "a"))


def test_point_primal_examples():
    r = example48()
    assert point_primal(r, ABC.encode(["b"])) == 0
    assert point_primal(r, 0) == 0
    m = build("intersection-complement", mk_maximal(AB))
    assert point_primal(m, AB.encode(["a"])) == AB.encode(["a"])
    for a in ABC.subsets():
        assert point_primal(r, a) == (1 if a & 1 else 0)


def test_cl_star_examples():
    r = example48()
    assert cl_star(r, ABC.encode(["b"])) == ABC.encode(["b"])
    assert cl_star(r, 0) == 0
    m = build("intersection-complement", mk_maximal(ABC))
    assert all(cl_star(m, a) == a for a in ABC.subsets())


def test_local_function_examples():
    d, i = discrete(ABC), indiscrete(ABC)
    mx = mk_maximal(ABC)
    for a in ABC.subsets():
        assert local_function(d, mx, a) == a
        assert local_function(i, mx, a) == (ABC.full if a else 0)
        assert cl_diamond(d, mx, a) == a
        assert cl_diamond(i, mx, a) == (ABC.full if a else 0)
        for t in (d, i):
            assert local_function(t, mk_empty(ABC), a) == 0
            assert cl_diamond(t, mk_empty(ABC), a) == a


def test_local_function_matches_oracle():
    u = ABC
    X = frozenset(u.labels)
    for t in enumerate_topologies(u):
        opens = oracle.family_sets(u, t.opens)
        for p in enumerate_primals(u):
            P = oracle.family_sets(u, p.family)
            for a in u.subsets():
                expect = oracle.local_function(X, opens, P, oracle.fs(u, a))
                assert oracle.fs(u, local_function(t, p, a)) == expect


def test_local_function_needs_only_minimal_neighbourhoods():
    u = ABC
    for t in enumerate_topologies(u):
        for p in enumerate_primals(u):
            for a in u.subsets():
                fast = sum(1 << i for i in u.points()
                           if u.complement(t.minimal_open(1 << i) & a) in p)
                assert fast == local_function(t, p, a)


def test_kuratowski_examples():
    ident = ClosureMap.build(ABC, lambda a: a)
    assert check_kuratowski(ident)
    assert operator_to_topology(ident) == SubsetFamily.powerset(ABC)
    a1 = Universe.of("a")
    v = check_kuratowski(ClosureMap.build(a1, lambda a: 0))
    assert v.failed and v.rule == "(2)" and v.witness == {"A": 1}
    assert check_kuratowski(cl_star_map(example48()))
    const = ClosureMap.build(ABC, lambda a: ABC.full)
    assert check_kuratowski(const).rule == "(1)"
    assert operator_to_topology(const).to_labels() == [[]]
    fam = operator_to_topology(cl_diamond_map(indiscrete(ABC), mk_maximal(ABC)))
    assert fam == SubsetFamily.of(ABC, [0, ABC.full])


def test_kuratowski_rules_three_and_four():
    # closes {a} and {b} separately but sends {a,b} to X
    table = (0, 1, 2, 7, 4, 5, 6, 7)
    v = check_kuratowski(ClosureMap(ABC, table))
    assert v.failed and v.rule == "(3)" and v.witness == {"A": 1, "B": 2}
    # pointwise a->ab, b->bc, c->c lifted by union: additive but not idempotent
    image = {0: 0b011, 1: 0b110, 2: 0b100}
    def step_fn(a):
        out = a
        for i in ABC.points():
            if a >> i & 1:
                out |= image[i]
        return out

    step = ClosureMap.build(ABC, step_fn)
    v = check_kuratowski(step)
    assert v.failed and v.rule == "(4)" and v.witness == {"A": 1}
    with pytest.raises(ValueError):
        ClosureMap(ABC, (0,))


def test_closure_map_of_topology_is_kuratowski():
    for t in enumerate_topologies(ABC):
        c = closure_map(t)
        assert check_kuratowski(c)
        assert operator_to_topology(c) == t.opens


@pytest.mark.parametrize("n", [1, 2, 3])
def test_cl_diamond_is_kuratowski_everywhere(n):
    u = Universe.letters(n)
    for t in enumerate_topologies(u):
        for p in enumerate_primals(u):
            assert check_kuratowski(cl_diamond_map(t, p))


def test_to_labels_indexed_by_mask():
    c = cl_star_map(example48())
    assert c.to_labels()[ABC.encode(["a", "c"])] == ["a", "c"]
    assert len(c.to_labels()) == 8
