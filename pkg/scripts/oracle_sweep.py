"""Compare brute-force log FW-derivations with the presentation on every finite fixture."""

from __future__ import annotations

import argparse
import sys
import time

from logfw.fwdiff import presentation
from logfw.oracle import compare_with_presentation, standard_fixtures


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--full", action="store_true", help="also use R/p itself as the target module")
    args = ap.parse_args(argv)

    failures = 0
    print(f"{'fixture':30} {'|R|':>6} {'oracle':>6} {'hom':>4} {'joint':>5} {'sec':>6}")
    for fx in standard_fixtures():
        variants = [fx, fx.with_full_module()] if args.full else [fx]
        for v in variants:
            start = time.perf_counter()
            solver, prelog = v.build()
            res = compare_with_presentation(solver, presentation(prelog, sharpen=False))
            failures += not res.equal
            print(
                f"{v.name:30} {solver.ring.size:>6} {res.oracle_dimension:>6} {res.hom_dimension:>4} "
                f"{res.joint_rank:>5} {time.perf_counter() - start:6.2f}" + ("" if res.equal else "  MISMATCH")
            )
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
