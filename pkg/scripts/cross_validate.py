"""Run every corpus fixture through both regularity routes and print a table."""

from __future__ import annotations

import argparse
import sys
import time

from logfw.cli import corpus_files
from logfw.instance import load_dict
from logfw.pipeline import run_instance


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--filter", default="", help="substring of the fixture name or a tag")
    args = ap.parse_args(argv)

    bad = 0
    print(f"{'fixture':28} {'def':>5} {'fw':>5} {'rank':>4} {'tgt':>4} {'free':>5} {'sec':>6}")
    for name, data in corpus_files():
        if args.filter and args.filter not in name and args.filter not in data.get("tags", []):
            continue
        start = time.perf_counter()
        rep = run_instance(load_dict(data, name)).report
        dims = rep["fw"]["dims"]
        ok = rep["verdict"]["routes_agree"] and not rep["expected"].get("mismatches")
        bad += not ok
        print(
            f"{name:28} {str(rep['definition']['is_log_regular']):>5} {str(rep['fw']['is_log_regular']):>5} "
            f"{dims['rank_at_closed_point']:>4} {dims['target']:>4} {str(rep['fw']['witness']['condition_1_free']):>5} "
            f"{time.perf_counter() - start:6.2f}" + ("" if ok else "  <-- check")
        )
    print(f"\n{bad} fixture(s) need attention")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
