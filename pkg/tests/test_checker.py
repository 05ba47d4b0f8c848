import json

import pytest

from proxal.checker import (
    THEOREMS,
    ConfigError,
    Context,
    MissingPartError,
    UnknownTheoremError,
    minimize_witness,
    parse_sweep,
    recheck,
    run_suite,
    run_theorem,
    theorem_ids,
)
from proxal.checker.registry import TheoremVerdict, get_theorem
from proxal.checker.suite import SuiteConfig, build_instances, canonical_key, known_gaps
from proxal.instance import Instance
from proxal.operators import point_primal
from proxal.primal import mk_maximal, mk_principal
from proxal.proximity import build, check_primal_proximity, explicit
from proxal.sets import Universe, is_subset
from proxal.spacefile import parse
from proxal.topology import discrete
from proxal.verdict import Status

ABC = Universe.of("abc")
B = ABC.encode(["b"])

CLAIM_IDS = ["R3.3", "C3.4", "L-mono", "L4.2", "T4.5", "C4.5", "T4.6", "T4.9", "T4.10", "T4.11", "C4.12",
             "L5.2", "T5.3", "T5.4", "T5.6", "T5.7", "T5.8", "T5.9", "E5.10", "E5.11", "T5.14", "E5.15",
             "T5.17", "T5.18", "T5.19", "T5.20"]


def example48(topology=None):
    p = mk_principal(ABC, "a")
    return Instance(ABC, p, build("intersection-complement", p), topology)


def test_registry_covers_every_claim():
    assert set(CLAIM_IDS) <= set(theorem_ids())
    assert len(set(theorem_ids())) == len(THEOREMS)
    with pytest.raises(UnknownTheoremError, match="valid ids"):
        get_theorem("T9.99")


def test_registry_examples():
    inst = example48()
    assert run_theorem("T4.6", inst).status is Status.PASS
    v = run_theorem("T5.4", inst)
    assert v.status is Status.FAIL and v.witness == {"part": "main", "A": B}
    r33 = run_theorem("R3.3", inst)
    assert r33.status is Status.VACUOUS and "2^X" in r33.note


def test_topology_theorem_without_topology():
    with pytest.raises(MissingPartError):
        run_theorem("T5.14", example48())
    assert run_theorem("T5.14", example48(discrete(ABC))).status is Status.VACUOUS


def test_standing_hypothesis_gives_vacuous():
    mx = mk_maximal(ABC)
    bad = Instance(ABC, mx, explicit(ABC, [(1, 2)], mx))
    assert not check_primal_proximity(bad.relation, mx).ok
    for tid in ("T4.6", "T5.4", "C4.12"):
        v = run_theorem(tid, bad)
        assert v.status is Status.VACUOUS and "axioms" in v.note


def test_minimize_examples():
    inst = example48()
    v = run_theorem("T5.4", inst)
    m = minimize_witness(v, inst)
    assert m.witness == {"part": "main", "A": B}
    big = TheoremVerdict("T5.4", Status.FAIL, inst.id, {"part": "main", "A": ABC.full})
    assert recheck(big, inst)
    small = minimize_witness(big, inst)
    assert bin(small.witness["A"]).count("1") == 1 and recheck(small, inst)
    with pytest.raises(ValueError):
        minimize_witness(run_theorem("T4.6", inst), inst)
    with pytest.raises(ValueError):
        recheck(run_theorem("T4.6", inst), inst)


def test_recheck_rejects_wrong_witness():
    inst = example48()
    wrong = TheoremVerdict("T5.4", Status.FAIL, inst.id, {"part": "main", "A": 0})
    assert not recheck(wrong, inst)


def test_known_gap_counterexamples_reproduce():
    gaps = known_gaps()
    assert set(gaps) == {"C4.12", "T5.4", "T5.19"}
    for tid, gap in gaps.items():
        inst = parse(gap["counterexample"]["space"]).to_instance()
        v = run_theorem(tid, inst)
        assert v.status is Status.FAIL
        m = minimize_witness(v, inst)
        expect = {k: (val if k == "part" else inst.universe.encode(val))
                  for k, val in gap["counterexample"]["witness"].items()}
        assert m.witness == expect
        assert recheck(m, inst, Context(inst))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_t54_fails_exactly_where_some_set_escapes_its_point_primal_set(n):
    cfg = SuiteConfig(sizes=(n,), relations=("double-complement", "intersection-complement"),
                      samples=10, seed=2).validate()
    for inst in build_instances(cfg):
        v = run_theorem("T5.4", inst)
        if not check_primal_proximity(inst.relation, inst.primal).ok:
            assert v.status is Status.VACUOUS
            continue
        escapes = any(not is_subset(a, point_primal(inst.relation, a)) for a in inst.universe.subsets())
        assert (v.status is Status.FAIL) == escapes


def test_parse_sweep():
    cfg = parse_sweep("n=1..3;relations=double-complement;samples=4;seed=9")
    assert cfg.sizes == (1, 2, 3) and cfg.relations == ("double-complement",)
    assert cfg.samples == 4 and cfg.seed == 9
    assert parse_sweep("n=2;relations=all").relations == SuiteConfig().relations
    assert parse_sweep("n=1,3", seed=5).seed == 5
    for bad in ("", "n=0", "n=9", "n=x", "relations=double-complement", "n=1;bogus=1", "n=1;seed=x",
                "n=1;relations=nope", "n=1;theorems=T1", "n=1;samples=-1", "n=1;search=maybe", "n"):
        with pytest.raises((ConfigError, UnknownTheoremError)):
            parse_sweep(bad)


def test_empty_config_is_an_error():
    with pytest.raises(ConfigError):
        SuiteConfig().validate()


def test_small_suite_all_pass():
    cfg = SuiteConfig(sizes=(1, 2, 3), relations=("double-complement", "intersection-complement"),
                      theorems=("T4.6", "T4.9", "T5.3", "T5.7")).validate()
    report = run_suite(cfg)
    for tid in cfg.theorems:
        assert report["theorems"][tid]["fail"] == 0
        assert report["theorems"][tid]["pass"] > 0
    assert report["failures"] == []


def test_suite_report_is_deterministic_and_audited():
    cfg = parse_sweep("n=2;theorems=T5.4,C4.12,T4.6")
    one = json.dumps(run_suite(cfg, jobs=1), sort_keys=True)
    two = json.dumps(run_suite(cfg, jobs=2), sort_keys=True)
    assert one == two
    report = json.loads(one)
    assert report["summary"]["unexpected_failures"] == 0
    assert report["audit"]["discrepancies"] == 0
    assert report["audit"]["checked"] == 2 * len(report["failures"])
    for f in report["failures"]:
        assert f["instance"] in report["instances"]


def test_dedup_keeps_one_per_relabeling_class():
    cfg = SuiteConfig(sizes=(2,), relations=("intersection-complement",), search="none")
    full = build_instances(cfg)
    deduped = build_instances(SuiteConfig(sizes=(2,), relations=("intersection-complement",),
                                          search="none", dedup=True))
    assert len(full) == 4
    # principal a and principal b are relabelings of each other
    assert len(deduped) == 3
    assert len({canonical_key(i) for i in full}) == 3
