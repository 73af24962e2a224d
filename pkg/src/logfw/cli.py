"""Command line entry point: ``logfw run``, ``logfw corpus``, ``logfw monoid``."""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from importlib import resources
from pathlib import Path

from .config import Budgets, budgets
from .errors import BudgetError, InputError, LogFWError
from .instance import load, load_dict
from .pipeline import run_instance

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_DISAGREE = 0, 1, 2, 3


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def corpus_files() -> list[tuple[str, dict]]:
    """Bundled fixtures as (name, decoded json), sorted by file name."""
    root = resources.files("logfw") / "corpus"
    out = []
    for entry in sorted(root.iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".json"):
            out.append((entry.name[:-5], json.loads(entry.read_text(encoding="utf-8"))))
    return out


def parse_budgets(items: list[str]) -> dict:
    known = set(Budgets.__dataclass_fields__)
    out = {}
    for item in items:
        key, _, value = item.partition("=")
        if key not in known or not value.isdigit():
            raise InputError(f"--budget expects KEY=N with KEY in {sorted(known)}, got {item!r}")
        out[key] = int(value)
    return out


def _exit_for(exc: BaseException) -> int:
    if isinstance(exc, BudgetError):
        return EXIT_BUDGET
    return EXIT_INPUT


def cmd_run(args) -> int:
    try:
        inst = load(args.file)
        with budgets(**parse_budgets(args.budget)):
            result = run_instance(inst, seed=args.seed, timings=args.timings)
    except LogFWError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _exit_for(exc)
    text = dumps(result.report)
    if args.json:
        Path(args.json).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if not result.agree:
        print("error: the definition route and the FW-rank route disagree", file=sys.stderr)
        return EXIT_DISAGREE
    return EXIT_OK


def _run_fixture(item: tuple[str, dict, int, bool, dict]) -> dict:
    name, data, seed, timings, limits = item
    try:
        with budgets(**limits):
            result = run_instance(load_dict(data, name), seed=seed, timings=timings)
    except LogFWError as exc:
        return {"name": name, "error": type(exc).__name__, "message": str(exc), "exit": _exit_for(exc)}
    return {"name": name, "report": result.report, "presentation": result.presentation, "agree": result.agree}


def cmd_corpus(args) -> int:
    limits = parse_budgets(args.budget)
    items = [(n, d, args.seed, args.timings, limits) for n, d in corpus_files()]
    if args.filter:
        items = [it for it in items if args.filter in it[0] or args.filter in it[1].get("tags", [])]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_run_fixture, items))
    else:
        results = [_run_fixture(it) for it in items]
    summary = {"fixtures": len(results), "agree": 0, "disagree": [], "errors": [], "expected_mismatches": []}
    reports = []
    for res in results:
        if "error" in res:
            summary["errors"].append({k: res[k] for k in ("name", "error", "message")})
            reports.append(res)
            continue
        rep = res["report"]
        reports.append(rep)
        if res["agree"]:
            summary["agree"] += 1
        else:
            summary["disagree"].append(res["name"])
        for m in rep.get("expected", {}).get("mismatches", []):
            summary["expected_mismatches"].append({"name": res["name"], **m})
        if args.emit_presentations:
            out = Path(args.emit_presentations)
            out.mkdir(parents=True, exist_ok=True)
            (out / f"{res['name']}.json").write_text(dumps(res["presentation"]), encoding="utf-8")
    text = dumps({"summary": summary, "reports": reports})
    if args.json:
        Path(args.json).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if summary["disagree"]:
        return EXIT_DISAGREE
    if summary["errors"]:
        return max(r["exit"] for r in results if "error" in r)
    return EXIT_OK


def cmd_monoid(args) -> int:
    try:
        inst = load(args.file)
        info = inst.monoid.info()
    except LogFWError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _exit_for(exc)
    if args.info:
        info["spec"] = [{"face": sorted(pr.face), "functional": list(pr.functional)} for pr in inst.monoid.spec()]
    sys.stdout.write(dumps(info))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="logfw", description="Log regularity via logarithmic FW-differentials.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run both regularity routes on one instance file")
    run.add_argument("file")
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--json", metavar="OUT")
    run.add_argument("--timings", action="store_true", help="include wall-clock timings (makes output non-deterministic)")
    run.add_argument("--budget", action="append", default=[], metavar="KEY=N", help="override a search budget")
    run.set_defaults(func=cmd_run)

    corpus = sub.add_parser("corpus", help="run the bundled fixture corpus")
    corpus.add_argument("--filter", metavar="SUBSTR")
    corpus.add_argument("--emit-presentations", metavar="DIR")
    corpus.add_argument("--jobs", type=int, default=1)
    corpus.add_argument("--seed", type=int, default=0)
    corpus.add_argument("--json", metavar="OUT")
    corpus.add_argument("--timings", action="store_true")
    corpus.add_argument("--budget", action="append", default=[], metavar="KEY=N")
    corpus.set_defaults(func=cmd_corpus)

    mon = sub.add_parser("monoid", help="print invariants of the monoid in an instance file")
    mon.add_argument("file")
    mon.add_argument("--info", action="store_true", help="also list the prime ideals")
    mon.set_defaults(func=cmd_monoid)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
