"""Command-line front end.

Exit codes: 0 when every check passes (or only allowlisted theorems fail),
1 on a FAIL, 2 on any input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Any, Dict, List, Optional, Sequence

from .checker.registry import MissingPartError, UnknownTheoremError, get_theorem, theorem_ids
from .checker.suite import ConfigError, default_jobs, parse_sweep, run_instance, run_suite
from .induced import tau_diamond, tau_hat, tau_star
from .operators import (
    cl_diamond_map,
    cl_star_map,
    check_kuratowski,
    local_function_map,
    point_primal_map,
)
from .primal import Primal, SizeCapError, check_primal
from .proximity import check_ef_proximity, check_primal_proximity
from .sets import Universe, UniverseError
from .spacefile import SpaceFile, SpaceFileError, load
from .topology import Topology, check_topology
from .verdict import Verdict

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def verdict_json(u: Universe, v: Verdict) -> Dict[str, Any]:
    out: Dict[str, Any] = {"status": v.status.value}
    if v.rule:
        out["rule"] = v.rule
    if v.witness:
        out["witness"] = {k: (u.labels[m] if k == "x" else u.sorted_labels(m)) for k, m in v.witness.items()}
    if v.note:
        out["note"] = v.note
    return out


def verdict_text(u: Universe, v: Verdict) -> str:
    text = v.status.value
    if v.rule:
        text += f" {v.rule}"
    if v.witness:
        text += ": " + ", ".join(
            f"{k}={u.labels[m] if k == 'x' else u.fmt(m)}" for k, m in v.witness.items())
    return text


def emit(obj: Any) -> None:
    print(json.dumps(obj, sort_keys=True, indent=2))


def _primal(sf: SpaceFile) -> Primal:
    p = sf.build_primal()
    if not p.validated:
        raise InputError(f"$.primal: family is not a primal (condition {check_primal(sf.u, p.family).rule} fails)")
    return p


def _topology(sf: SpaceFile) -> Topology:
    t = sf.build_topology()
    if t is None:
        raise InputError("$.topology: missing field")
    if not check_topology(sf.u, t.opens):
        raise InputError("$.topology: open sets do not form a topology")
    return t


def _parse_set(u: Universe, text: str) -> int:
    text = text.strip()
    if text.startswith("["):
        try:
            names = json.loads(text)
        except json.JSONDecodeError:
            raise InputError(f"--set: malformed label list {text!r}") from None
    else:
        names = [s.strip() for s in text.split(",") if s.strip()]
    try:
        return u.encode(names)
    except UniverseError as exc:
        raise InputError(f"--set: {exc}") from None


def cmd_check(args: argparse.Namespace) -> int:
    sf = load(args.file)
    u = sf.u
    if args.target == "primal":
        p = sf.build_primal()
        v = check_primal(u, p.family)
        if args.format == "json":
            emit({"primal": verdict_json(u, v), "degenerate": p.is_degenerate})
        else:
            line = f"primal: {verdict_text(u, v)}"
            if v and p.is_degenerate:
                line += " (degenerate: empty family)"
            print(line)
        return EXIT_OK if v else EXIT_FAIL
    if args.target == "topology":
        t = sf.build_topology()
        if t is None:
            raise InputError("$.topology: missing field")
        v = check_topology(u, t.opens)
        if args.format == "json":
            emit({"topology": verdict_json(u, v)})
        else:
            print(f"topology: {verdict_text(u, v)}")
        return EXIT_OK if v else EXIT_FAIL
    inst = sf.to_instance()
    if args.efremovich:
        report = check_ef_proximity(inst.relation)
        label = "efremovich axiom"
    else:
        report = check_primal_proximity(inst.relation, inst.primal)
        label = "axiom"
    if args.format == "json":
        emit({"axioms": {str(k): verdict_json(u, v) for k, v in sorted(report.verdicts.items())},
              "ok": report.ok})
    else:
        for k, v in sorted(report.verdicts.items()):
            print(f"{label} {k}: {verdict_text(u, v).replace(f' axiom {k}', '')}")
        print("proximity: " + ("PASS" if report.ok else "FAIL"))
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_op(args: argparse.Namespace) -> int:
    sf = load(args.file)
    u = sf.u
    if args.op in ("point-primal", "cl-star"):
        r = sf.to_instance().relation
        cmap = point_primal_map(r) if args.op == "point-primal" else cl_star_map(r)
    else:
        p, t = _primal(sf), _topology(sf)
        cmap = local_function_map(t, p) if args.op == "local-function" else cl_diamond_map(t, p)
    if args.all:
        print(json.dumps(cmap.to_labels()))
        return EXIT_OK
    if args.set is None:
        raise InputError("op needs --set LABELS or --all")
    print(json.dumps(u.sorted_labels(cmap(_parse_set(u, args.set)))))
    return EXIT_OK


def cmd_derive(args: argparse.Namespace) -> int:
    sf = load(args.file)
    u = sf.u
    kuratowski: Optional[Verdict] = None
    if args.target == "tau-diamond":
        p, t = _primal(sf), _topology(sf)
        derived = tau_diamond(t, p)
        kuratowski = check_kuratowski(cl_diamond_map(t, p))
    else:
        r = sf.to_instance().relation
        if args.target == "tau-hat":
            derived = tau_hat(r)
        else:
            derived = tau_star(r)
            kuratowski = check_kuratowski(cl_star_map(r))
    top = check_topology(u, derived.opens)
    ok = bool(top) and (kuratowski is None or bool(kuratowski))
    if args.format == "json":
        out: Dict[str, Any] = {"opens": derived.opens.to_labels(), "topology": verdict_json(u, top)}
        if kuratowski is not None:
            out["kuratowski"] = verdict_json(u, kuratowski)
        emit(out)
    else:
        print(f"opens ({len(derived.opens)}): {json.dumps(derived.opens.to_labels())}")
        print(f"topology: {verdict_text(u, top)}")
        if kuratowski is not None:
            print(f"kuratowski: {verdict_text(u, kuratowski)}")
    return EXIT_OK if ok else EXIT_FAIL


def _theorem_list(text: str) -> List[str]:
    if text.strip() == "all":
        return theorem_ids()
    ids = [t.strip() for t in text.split(",") if t.strip()]
    if not ids:
        raise InputError("--theorems is empty")
    for tid in ids:
        get_theorem(tid)
    return ids


def _load_sweep(text: str, theorems: Optional[List[str]], seed: Optional[int]) -> Any:
    if os.path.isfile(text):
        try:
            data = json.loads(open(text).read())
        except json.JSONDecodeError as exc:
            raise InputError(f"{text}: malformed JSON ({exc.msg})") from None
        if not isinstance(data, dict):
            raise InputError(f"{text}: sweep config must be an object")
        text = ";".join(f"{k}={','.join(map(str, v)) if isinstance(v, list) else v}" for k, v in data.items())
    return parse_sweep(text, theorems=tuple(theorems) if theorems else None, seed=seed)


def _braces(value: Any) -> str:
    if isinstance(value, list):
        return "{" + ",".join(value) + "}"
    return str(value)


def _witness(f: Dict[str, Any]) -> str:
    m = f["minimized"]
    body = ", ".join(f"{k}={_braces(v)}" for k, v in m.items() if k != "part")
    return f"part {m['part']}: {body}"


def render_text(report: Dict[str, Any], elapsed: float) -> str:
    lines = []
    verdicts = report.get("verdicts")
    if verdicts is not None:
        for rec in verdicts:
            title = get_theorem(rec["theorem"]).title
            line = f"{rec['theorem']:<7} {rec['status']:<8} {title}"
            if rec.get("note"):
                line += f" [{rec['note']}]"
            lines.append(line)
    else:
        lines.append(f"{'theorem':<7} {'pass':>6} {'fail':>6} {'vacuous':>8}")
        for tid, t in report["theorems"].items():
            flag = "  known gap" if t["known_gap"] and t["fail"] else ""
            lines.append(f"{tid:<7} {t['pass']:>6} {t['fail']:>6} {t['vacuous']:>8}{flag}")
    expected: Dict[str, List[Dict[str, Any]]] = {}
    for f in report["failures"]:
        if f["expected"]:
            expected.setdefault(f["theorem"], []).append(f)
        else:
            lines.append(f"FAIL {f['theorem']} on {f['instance']} [UNEXPECTED]: {_witness(f)}")
    for tid, fails in expected.items():
        first = fails[0]
        more = f" (+{len(fails) - 1} more instance(s))" if len(fails) > 1 else ""
        lines.append(f"FAIL {tid} on {first['instance']} [expected, known gap]: {_witness(first)}{more}")
    s = report["summary"]
    lines.append(
        f"summary: {s['instances']} instance(s), {s['evaluations']} evaluations, "
        f"{s['pass']} pass, {s['fail']} fail, {s['vacuous']} vacuous, "
        f"{s['unexpected_failures']} unexpected failure(s)")
    a = report["audit"]
    lines.append(f"audit: {a['checked']} witness(es) re-checked, {a['discrepancies']} discrepancies")
    lines.append(f"elapsed: {elapsed:.2f}s")
    return "\n".join(lines)


def cmd_verify(args: argparse.Namespace) -> int:
    if (args.file is None) == (args.sweep is None):
        raise InputError("verify needs exactly one of FILE or --sweep")
    theorems = _theorem_list(args.theorems)
    jobs = args.jobs if args.jobs is not None else default_jobs()
    start = time.perf_counter()
    if args.sweep is not None:
        explicit_ids = theorems if args.theorems.strip() != "all" else None
        cfg = _load_sweep(args.sweep, explicit_ids, args.seed)
        report = run_suite(cfg, jobs=max(1, jobs))
    else:
        inst = load(args.file).to_instance()
        if args.theorems.strip() == "all":
            theorems = [t for t in theorems if inst.topology is not None or not get_theorem(t).needs_topology]
        for tid in theorems:
            if get_theorem(tid).needs_topology and inst.topology is None:
                raise MissingPartError(f"{tid} needs a topology; the space file has none")
        report = run_instance(inst, theorems, {"file": os.path.basename(args.file), "theorems": theorems})
    elapsed = time.perf_counter() - start
    if args.format == "json":
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        print(render_text(report, elapsed))
    return EXIT_OK if report["summary"]["unexpected_failures"] == 0 else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="proxal", description="Finite primal-proximity spaces: build, check, verify.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("check", help="validate a primal, relation or topology")
    p.add_argument("target", choices=("primal", "proximity", "topology"))
    p.add_argument("file")
    p.add_argument("--efremovich", action="store_true", help="check the Efremovich axioms instead")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("op", help="apply an operator to a subset")
    p.add_argument("op", choices=("point-primal", "cl-star", "local-function", "cl-diamond"))
    p.add_argument("file")
    p.add_argument("--set", help="comma-separated labels, or a JSON list; empty string for the empty set")
    p.add_argument("--all", action="store_true", help="print the whole table, indexed by subset mask")
    common(p)
    p.set_defaults(func=cmd_op)

    p = sub.add_parser("derive", help="derive an induced topology")
    p.add_argument("target", choices=("tau-hat", "tau-star", "tau-diamond"))
    p.add_argument("file")
    common(p)
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("verify", help="run registry theorems on a file or a sweep")
    p.add_argument("file", nargs="?")
    p.add_argument("--sweep", help="'n=1..3;relations=...;primals=...;topologies=...;search=...;samples=...' or a JSON file")
    p.add_argument("--theorems", default="all", help="comma-separated ids or 'all'")
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default $PROXAL_JOBS or 1)")
    p.add_argument("--seed", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (InputError, SpaceFileError, ConfigError, MissingPartError, SizeCapError, UniverseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except UnknownTheoremError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
