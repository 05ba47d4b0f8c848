"""Searching the space of explicit relations for primal-proximities."""

from __future__ import annotations

import random
from typing import List

from ..primal import Primal, SizeCapError
from ..proximity import ProximityRelation, check_primal_proximity, from_rows
from ..sets import Universe

EXHAUSTIVE_MAX_N = 2


def matrix_key(r: ProximityRelation) -> int:
    """Relation matrix as one integer, bit ``A * 2**n + B`` for a related pair."""
    size = r.universe.size
    return sum(row << (a * size) for a, row in enumerate(r.rows))


def exhaustive_relation_search(u: Universe, p: Primal) -> List[ProximityRelation]:
    """Every explicit relation passing all five primal-proximity axioms.

    Pairs forced by axiom 4 are fixed to related, pairs excluded by axiom 3 to
    unrelated; the remaining unordered pairs are enumerated symmetrically and
    each candidate goes through the full axiom check. Order is ascending by
    ``matrix_key``.
    """
    if u.n > EXHAUSTIVE_MAX_N:
        raise SizeCapError(f"exhaustive relation search is capped at n={EXHAUSTIVE_MAX_N}")
    comp = u.complement
    base = [0] * u.size
    free = []
    for a in u.subsets():
        for b in range(a, u.size):
            if comp(a) not in p or comp(b) not in p:
                continue
            if comp(a & b) in p:
                base[a] |= 1 << b
                base[b] |= 1 << a
            else:
                free.append((a, b))
    found = []
    for choice in range(1 << len(free)):
        rows = list(base)
        for k, (a, b) in enumerate(free):
            if choice >> k & 1:
                rows[a] |= 1 << b
                rows[b] |= 1 << a
        r = from_rows(u, rows, p)
        if check_primal_proximity(r, p).ok:
            found.append(r)
    found.sort(key=matrix_key)
    return found


def random_relation_sample(u: Universe, p: Primal, count: int, seed: int) -> List[ProximityRelation]:
    """Seeded candidates, kept only when they pass the full axiom check.

    A candidate starts from a random symmetric relation between points and is
    extended to all subsets by union. Points outside the primal's reach are
    dropped (axiom 3), pairs forced by axiom 4 are added, and the result is
    filtered. Duplicates are removed keeping first occurrence.
    """
    if u.n != 3:
        raise SizeCapError("random relation sampling is defined for n=3")
    rng = random.Random(seed)
    comp = u.complement
    live = [i for i in u.points() if comp(1 << i) in p]
    out: List[ProximityRelation] = []
    seen = set()
    for _ in range(count):
        adj = {i: 1 << i for i in live}
        for k, i in enumerate(live):
            for j in live[k + 1:]:
                if rng.random() < 0.5:
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
        rows = []
        for a in u.subsets():
            reach = 0
            for i in live:
                if a >> i & 1:
                    reach |= adj[i]
            row = 0
            if comp(a) in p:
                for b in u.subsets():
                    if (reach & b and comp(b) in p) or comp(a & b) in p:
                        row |= 1 << b
            rows.append(row)
        r = from_rows(u, rows, p)
        key = matrix_key(r)
        if key in seen or not check_primal_proximity(r, p).ok:
            continue
        seen.add(key)
        out.append(r)
    return out
