"""Acceptance criteria 1-10, each with its own time limit.

Every test prints one ``criterion N PASS|FAIL`` line; the lines are also
collected into the terminal summary.
"""

import json
import time
from contextlib import contextmanager
from pathlib import Path

import pytest

import oracle
from conftest import ACCEPTANCE_LINES
from proxal.checker import exhaustive_relation_search, parse_sweep, run_suite, run_theorem
from proxal.checker.suite import SuiteConfig, build_instances
from proxal.cli import main
from proxal.instance import Instance
from proxal.operators import point_primal
from proxal.primal import enumerate_primals, mk_empty, mk_maximal
from proxal.proximity import build, check_primal_proximity
from proxal.sets import Universe, is_subset
from proxal.spacefile import load
from proxal.topology import enumerate_topologies, is_normal
from proxal.verdict import Status

EX48 = str(Path(__file__).resolve().parent.parent / "spaces" / "example48.json")
N2_MAXIMAL_SNAPSHOT = 2
SWEEP = "n=1..3;samples=10;seed=1"


@contextmanager
def criterion(num, title, limit=None):
    start = time.perf_counter()
    status = "FAIL"
    try:
        yield
        elapsed = time.perf_counter() - start
        if limit is not None and elapsed > limit:
            raise AssertionError(f"took {elapsed:.2f}s, limit {limit}s")
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - start
        budget = f" / limit {limit:g}s" if limit is not None else ""
        line = f"criterion {num} {status} {title} ({elapsed:.2f}s{budget})"
        print(line)
        ACCEPTANCE_LINES.append(line)


@pytest.fixture(scope="module")
def sweep_instances():
    return build_instances(SuiteConfig(sizes=(1, 2, 3), samples=10, seed=1).validate())


def valid(inst):
    return check_primal_proximity(inst.relation, inst.primal).ok


def test_criterion_01_example_reproduction():
    with criterion(1, "example file: point-primal of {b} is empty and {b} escapes it", limit=1):
        inst = load(EX48).to_instance()
        u = inst.universe
        b = u.encode(["b"])
        assert point_primal(inst.relation, b) == 0
        assert not is_subset(b, point_primal(inst.relation, b))


def test_criterion_02_primal_enumeration():
    with criterion(2, "primal counts 2,4,8,16 against the raw family oracle", limit=5):
        for n, count in zip((1, 2, 3, 4), (2, 4, 8, 16)):
            u = Universe.letters(n)
            X = frozenset(u.labels)
            raw = {frozenset(f) for f in oracle.all_families(X) if oracle.is_primal(X, f)}
            brute = enumerate_primals(u, "brute")
            downs = enumerate_primals(u, "downsets")
            assert len(raw) == len(brute) == len(downs) == count
            assert {frozenset(oracle.family_sets(u, p.family)) for p in brute} == raw
            assert [p.family.table for p in brute] == [p.family.table for p in downs]


def test_criterion_03_constructor_soundness():
    with criterion(3, "constructed relations pass all five axioms", limit=30):
        for n in (1, 2, 3):
            u = Universe.letters(n)
            for p in enumerate_primals(u):
                for kind in ("double-complement", "intersection-complement"):
                    assert check_primal_proximity(build(kind, p), p).ok
            mx = mk_maximal(u)
            normal = [t for t in enumerate_topologies(u) if is_normal(t)]
            assert normal
            for t in normal:
                assert check_primal_proximity(build("closure-overlap", mx, t), mx).ok


def test_criterion_04_operator_laws():
    with criterion(4, "T4.6, T4.9, T4.5, C4.5, T5.8 pass on every valid instance", limit=60):
        insts = build_instances(SuiteConfig(sizes=(1, 2, 3), samples=10, seed=1).validate())
        searched = 0
        for n in (1, 2):
            u = Universe.letters(n)
            for p in enumerate_primals(u):
                searched += len(exhaustive_relation_search(u, p))
        checked = 0
        for inst in insts:
            if not valid(inst):
                continue
            checked += 1
            for tid in ("T4.6", "T4.9", "T4.5", "C4.5", "T5.8"):
                assert run_theorem(tid, inst).status is Status.PASS, (tid, inst.describe())
        explicit = sum(1 for i in insts if i.relation.kind == "explicit" and i.universe.n <= 2)
        assert explicit == searched and checked > searched


def test_criterion_05_topology_generation(sweep_instances):
    with criterion(5, "tau-hat is a topology, cl-star and (maximal) point-primal are Kuratowski"):
        maximal_seen = 0
        for inst in sweep_instances:
            if not valid(inst):
                continue
            for tid in ("T5.3", "T5.7"):
                assert run_theorem(tid, inst).status is Status.PASS
            v = run_theorem("T5.6", inst)
            if inst.primal.is_maximal:
                maximal_seen += 1
                assert v.status is Status.PASS
            else:
                assert v.status is Status.VACUOUS
        assert maximal_seen > 0


def test_criterion_06_exhaustive_search_counts():
    with criterion(6, "exhaustive search: one relation per primal at n=1, snapshot at n=2"):
        u1 = Universe.of("a")
        mx = exhaustive_relation_search(u1, mk_maximal(u1))
        em = exhaustive_relation_search(u1, mk_empty(u1))
        assert [r.pair_list() for r in mx] == [[(1, 1)]]
        assert [r.pair_list() for r in em] == [[]]
        u2 = Universe.of("ab")
        assert len(exhaustive_relation_search(u2, mk_maximal(u2))) == N2_MAXIMAL_SNAPSHOT


def test_criterion_07_known_gap_detection(sweep_instances, capsys):
    with criterion(7, "T5.4 fails on the example with A={b} and passes wherever A is inside its point-primal set"):
        code = main(["verify", EX48, "--theorems", "T5.4", "--format", "json"])
        report = json.loads(capsys.readouterr().out)
        assert code == 0
        assert report["failures"][0]["minimized"] == {"part": "main", "A": ["b"]}
        for inst in sweep_instances:
            if not valid(inst):
                continue
            u = inst.universe
            inside = all(is_subset(a, point_primal(inst.relation, a)) for a in u.subsets())
            status = run_theorem("T5.4", inst).status
            assert status is (Status.PASS if inside else Status.FAIL)


def test_criterion_08_inclusions_and_conditionals():
    with criterion(8, "tau inside tau-star, tau-diamond inside tau-star, T5.14/T5.17 never fail", limit=120):
        u3 = Universe.letters(3)
        X = frozenset(u3.labels)
        assert sum(1 for f in oracle.all_families(X) if oracle.is_topology(X, f)) == 29
        per_kind = {}
        passed = set()
        for n in (1, 2, 3):
            u = Universe.letters(n)
            for t in enumerate_topologies(u):
                for p in enumerate_primals(u):
                    for kind in ("point-closure", "point-diamond", "diamond-overlap"):
                        inst = Instance(u, p, build(kind, p, t), t)
                        if kind != "diamond-overlap":
                            assert run_theorem("E5.10", inst).status is Status.PASS
                            if n == 3:
                                per_kind[kind] = per_kind.get(kind, 0) + 1
                        for tid in ("T5.14", "T5.17"):
                            status = run_theorem(tid, inst).status
                            assert status is not Status.FAIL
                            if status is Status.PASS:
                                passed.add(tid)
        assert passed == {"T5.14", "T5.17"}
        assert per_kind == {"point-closure": 29 * 8, "point-diamond": 29 * 8}


@pytest.fixture(scope="module")
def reports():
    one = json.dumps(run_suite(parse_sweep(SWEEP), jobs=1), sort_keys=True, indent=2)
    four = json.dumps(run_suite(parse_sweep(SWEEP), jobs=4), sort_keys=True, indent=2)
    return one, four


def test_criterion_09_determinism(reports):
    with criterion(9, "jobs=1 and jobs=4 give byte-identical JSON reports"):
        one, four = reports
        assert one == four


def test_criterion_10_witness_audit(reports):
    with criterion(10, "every FAIL witness re-checks (zero audit discrepancies)"):
        report = json.loads(reports[0])
        audit = report["audit"]
        assert report["failures"]
        assert audit["checked"] == 2 * len(report["failures"])
        assert audit["discrepancies"] == 0
        assert report["summary"]["unexpected_failures"] == 0

