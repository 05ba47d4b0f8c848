"""Instance sweeps, parallel theorem evaluation and report assembly."""

from __future__ import annotations

import itertools
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from importlib import resources
from typing import Any, Dict, List, Sequence, Tuple

from ..instance import Instance
from ..primal import Primal, enumerate_primals, mk_empty, mk_maximal, mk_principal
from ..proximity import RULE_KINDS, TOPOLOGICAL_KINDS, build
from ..sets import Universe
from ..topology import Topology, discrete, enumerate_topologies, indiscrete
from ..verdict import Status
from .registry import (
    POINT_VARS,
    Context,
    TheoremVerdict,
    evaluate,
    get_theorem,
    minimize_witness,
    recheck,
    theorem_ids,
)
from .search import EXHAUSTIVE_MAX_N, exhaustive_relation_search, random_relation_sample


class ConfigError(ValueError):
    pass


def known_gaps() -> Dict[str, Dict[str, Any]]:
    """Theorems allowed to FAIL, each with its canonical counterexample."""
    text = resources.files("proxal").joinpath("known_gaps.json").read_text()
    return json.loads(text)


@dataclass(frozen=True)
class SuiteConfig:
    sizes: Tuple[int, ...] = ()
    primals: Tuple[str, ...] = ("all",)
    relations: Tuple[str, ...] = RULE_KINDS
    topologies: Tuple[str, ...] = ("all",)
    search: str = "auto"
    samples: int = 0
    seed: int = 0
    theorems: Tuple[str, ...] = ()
    dedup: bool = False

    def validate(self) -> "SuiteConfig":
        if not self.sizes:
            raise ConfigError("config names no universe sizes")
        for n in self.sizes:
            if not 1 <= n <= 4:
                raise ConfigError(f"sweep sizes must lie in 1..4, got {n}")
        for kind in self.relations:
            if kind not in RULE_KINDS:
                raise ConfigError(f"unknown relation kind {kind!r}; expected one of {list(RULE_KINDS)}")
        for name in self.primals:
            if name not in ("all", "maximal", "empty", "principal"):
                raise ConfigError(f"unknown primal source {name!r}")
        for name in self.topologies:
            if name not in ("all", "discrete", "indiscrete"):
                raise ConfigError(f"unknown topology source {name!r}")
        if self.search not in ("auto", "exhaustive", "none"):
            raise ConfigError(f"unknown search mode {self.search!r}")
        if self.samples < 0:
            raise ConfigError("samples must be non-negative")
        for tid in self.theorems:
            get_theorem(tid)
        return self

    def theorem_list(self) -> List[str]:
        return list(self.theorems) if self.theorems else theorem_ids()

    def echo(self) -> Dict[str, Any]:
        out = asdict(self)
        out["theorems"] = self.theorem_list()
        return out


def _parse_sizes(text: str) -> Tuple[int, ...]:
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return tuple(range(int(lo), int(hi) + 1))
        return tuple(int(s) for s in text.split(","))
    except ValueError:
        raise ConfigError(f"bad size list {text!r}") from None


def parse_sweep(text: str, **overrides: Any) -> SuiteConfig:
    """Parse ``key=value;key=value`` (lists comma-separated, sizes ``1..3``)."""
    fields: Dict[str, Any] = {}
    for chunk in filter(None, (c.strip() for c in text.split(";"))):
        key, sep, value = chunk.partition("=")
        key = key.strip()
        value = value.strip()
        if not sep:
            raise ConfigError(f"expected key=value, got {chunk!r}")
        if key == "n":
            fields["sizes"] = _parse_sizes(value)
        elif key == "theorems":
            items = tuple(v.strip() for v in value.split(",") if v.strip())
            fields["theorems"] = () if items == ("all",) else items
        elif key in ("primals", "relations", "topologies"):
            items = tuple(v.strip() for v in value.split(",") if v.strip())
            fields[key] = RULE_KINDS if key == "relations" and items == ("all",) else items
        elif key in ("samples", "seed"):
            try:
                fields[key] = int(value)
            except ValueError:
                raise ConfigError(f"{key} must be an integer") from None
        elif key == "search":
            fields["search"] = value
        elif key == "dedup":
            fields["dedup"] = value.lower() in ("1", "true", "yes")
        else:
            raise ConfigError(f"unknown sweep key {key!r}")
    fields.update({k: v for k, v in overrides.items() if v is not None})
    return SuiteConfig(**fields).validate()


def _primals(u: Universe, sources: Sequence[str]) -> List[Primal]:
    out: List[Primal] = []
    for name in sources:
        if name == "all":
            out.extend(enumerate_primals(u))
        elif name == "maximal":
            out.append(mk_maximal(u))
        elif name == "empty":
            out.append(mk_empty(u))
        else:
            out.extend(mk_principal(u, x) for x in u.labels)
    uniq = {p.family.table: p for p in out}
    return [uniq[k] for k in sorted(uniq)]


def _topologies(u: Universe, sources: Sequence[str]) -> List[Topology]:
    out: List[Topology] = []
    for name in sources:
        if name == "all":
            out.extend(enumerate_topologies(u))
        elif name == "discrete":
            out.append(discrete(u))
        else:
            out.append(indiscrete(u))
    uniq = {t.opens.table: t for t in out}
    return [uniq[k] for k in sorted(uniq)]


def _permute_mask(m: int, perm: Sequence[int]) -> int:
    return sum(1 << perm[i] for i in range(len(perm)) if m >> i & 1)


def canonical_key(inst: Instance) -> str:
    """Serialized form minimised over relabelings of the universe."""
    u = inst.universe
    keys = []
    for perm in itertools.permutations(range(u.n)):
        pm = lambda m: _permute_mask(m, perm)  # noqa: E731
        body = {
            "kind": inst.relation.kind,
            "primal": sorted(pm(m) for m in inst.primal.family),
            "pairs": sorted((pm(a), pm(b)) for a, b in inst.relation.pair_list()),
            "topology": None if inst.topology is None else sorted(pm(m) for m in inst.topology.opens),
        }
        keys.append(json.dumps(body, sort_keys=True))
    return min(keys)


def build_instances(cfg: SuiteConfig) -> List[Instance]:
    out: Dict[str, Instance] = {}
    for n in cfg.sizes:
        u = Universe.letters(n)
        primals = _primals(u, cfg.primals)
        needs_top = any(k in TOPOLOGICAL_KINDS for k in cfg.relations)
        tops = _topologies(u, cfg.topologies) if needs_top else []
        for p in primals:
            for kind in cfg.relations:
                if kind in TOPOLOGICAL_KINDS:
                    for t in tops:
                        inst = Instance(u, p, build(kind, p, t), t)
                        out.setdefault(inst.id, inst)
                else:
                    inst = Instance(u, p, build(kind, p))
                    out.setdefault(inst.id, inst)
            if n <= EXHAUSTIVE_MAX_N and cfg.search in ("auto", "exhaustive"):
                for r in exhaustive_relation_search(u, p):
                    inst = Instance(u, p, r)
                    out.setdefault(inst.id, inst)
            elif cfg.search == "exhaustive":
                raise ConfigError(f"exhaustive search is capped at n={EXHAUSTIVE_MAX_N}")
            if n == 3 and cfg.samples:
                for r in random_relation_sample(u, p, cfg.samples, cfg.seed * 1000003 + p.family.table):
                    inst = Instance(u, p, r)
                    out.setdefault(inst.id, inst)
    insts = [out[k] for k in sorted(out)]
    if cfg.dedup:
        seen = set()
        kept = []
        for inst in insts:
            key = canonical_key(inst)
            if key not in seen:
                seen.add(key)
                kept.append(inst)
        insts = kept
    return insts


def witness_labels(inst: Instance, v: TheoremVerdict) -> Dict[str, Any]:
    u = inst.universe
    out: Dict[str, Any] = {}
    for k, val in v.witness.items():
        if k == "part":
            out[k] = val
        elif k in POINT_VARS:
            out[k] = u.labels[val]
        else:
            out[k] = u.sorted_labels(val)
    return out


def witness_masks(inst: Instance, witness: Dict[str, Any]) -> Dict[str, Any]:
    u = inst.universe
    out: Dict[str, Any] = {}
    for k, val in witness.items():
        if k == "part":
            out[k] = val
        elif k in POINT_VARS:
            out[k] = u.index(val)
        else:
            out[k] = u.encode(val)
    return out


def evaluate_instance(inst: Instance, ids: Sequence[str]) -> List[Dict[str, Any]]:
    """Verdict records for one instance, in registry order."""
    c = Context(inst)
    rows = []
    for tid in ids:
        thm = get_theorem(tid)
        if thm.needs_topology and inst.topology is None:
            continue
        v = evaluate(thm, c)
        rec: Dict[str, Any] = {"theorem": tid, "status": v.status.value, "instance": inst.id}
        if v.status is Status.FAIL:
            rec["witness"] = witness_labels(inst, v)
            rec["minimized"] = witness_labels(inst, minimize_witness(v, inst, c))
        elif v.note:
            rec["note"] = v.note
        rows.append(rec)
    return rows


def _evaluate_packed(args: Tuple[Instance, Sequence[str]]) -> List[Dict[str, Any]]:
    return evaluate_instance(*args)


def evaluate_all(insts: Sequence[Instance], ids: Sequence[str], jobs: int = 1) -> List[List[Dict[str, Any]]]:
    work = [(inst, list(ids)) for inst in insts]
    if jobs <= 1 or len(work) < 2:
        return [_evaluate_packed(w) for w in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_evaluate_packed, work, chunksize=max(1, len(work) // (jobs * 8))))


def assemble(insts: Sequence[Instance], results: Sequence[List[Dict[str, Any]]], ids: Sequence[str],
             config: Dict[str, Any]) -> Dict[str, Any]:
    gaps = known_gaps()
    tallies = {tid: {"pass": 0, "fail": 0, "vacuous": 0} for tid in ids}
    failures = []
    involved: Dict[str, Instance] = {}
    by_id = {inst.id: inst for inst in insts}
    for inst, rows in sorted(zip(insts, results), key=lambda pair: pair[0].id):
        for rec in rows:
            tallies[rec["theorem"]][rec["status"].lower()] += 1
            if rec["status"] == "FAIL":
                failures.append(dict(rec, expected=rec["theorem"] in gaps))
                involved[inst.id] = by_id[inst.id]
    unexpected = sum(1 for f in failures if not f["expected"])
    report = {
        "config": config,
        "summary": {
            "instances": len(insts),
            "evaluations": sum(len(r) for r in results),
            "pass": sum(t["pass"] for t in tallies.values()),
            "fail": sum(t["fail"] for t in tallies.values()),
            "vacuous": sum(t["vacuous"] for t in tallies.values()),
            "unexpected_failures": unexpected,
        },
        "theorems": {tid: dict(tallies[tid], known_gap=tid in gaps) for tid in ids},
        "failures": failures,
        "instances": {k: involved[k].to_dict() for k in sorted(involved)},
    }
    report["audit"] = audit_report(report)
    return report


def audit_report(report: Dict[str, Any]) -> Dict[str, int]:
    """Rebuild every failing instance from its serialized form and re-check
    both the reported and the minimized witness."""
    from ..spacefile import parse

    checked = 0
    discrepancies = 0
    for f in report["failures"]:
        inst = parse(report["instances"][f["instance"]]).to_instance()
        c = Context(inst)
        for key in ("witness", "minimized"):
            v = TheoremVerdict(f["theorem"], Status.FAIL, inst.id, witness_masks(inst, f[key]))
            checked += 1
            if not recheck(v, inst, c):
                discrepancies += 1
    return {"checked": checked, "discrepancies": discrepancies}


def run_suite(cfg: SuiteConfig, jobs: int = 1) -> Dict[str, Any]:
    cfg.validate()
    ids = cfg.theorem_list()
    insts = build_instances(cfg)
    results = evaluate_all(insts, ids, jobs)
    return assemble(insts, results, ids, cfg.echo())


def run_instance(inst: Instance, ids: Sequence[str], config: Dict[str, Any]) -> Dict[str, Any]:
    rows = evaluate_instance(inst, ids)
    report = assemble([inst], [rows], ids, config)
    report["verdicts"] = rows
    return report


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("PROXAL_JOBS", "1")))
    except ValueError:
        return 1
