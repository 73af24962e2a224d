"""Shift single presentation entries and count which checks notice.

A mutation is a no-op when the relation submodule of (R/p)^g does not change;
every other mutation should trip the oracle comparison, the factorization
check after killing I_alpha, or the sharp-reduction rank check.
"""

from __future__ import annotations

import sys
from collections import Counter

from logfw.checks import factorization_ranks, sharp_ranks, single_entry_mutations
from logfw.fwdiff import presentation
from logfw.oracle import compare_with_presentation, same_module, standard_fixtures


def main() -> int:
    totals: Counter = Counter()
    print(f"{'fixture':24} {'total':>5} {'noop':>5} {'oracle':>6} {'fact':>5} {'sharp':>5} {'missed':>6}")
    for fx in standard_fixtures():
        solvers = []
        for v in (fx, fx.with_full_module()):
            solver, prelog = v.build()
            solvers.append((solver, solver.solve()))
        M = presentation(prelog, sharpen=False)
        fact = factorization_ranks(prelog)[1] if prelog.monoid.is_sharp else None
        after = None if prelog.monoid.is_sharp else sharp_ranks(prelog)[1]
        row: Counter = Counter()
        for mut in single_entry_mutations(M):
            row["total"] += 1
            if same_module(solvers[0][0].ring, M, mut.presentation):
                row["noop"] += 1
                continue
            oracle_hit = not all(compare_with_presentation(s, mut.presentation, r).equal for s, r in solvers)
            fact_hit = fact is not None and factorization_ranks(prelog, mut.presentation)[0] != fact
            sharp_hit = after is not None and mut.presentation.rank_at_closed_point() != after
            row["oracle"] += oracle_hit
            row["fact"] += fact_hit
            row["sharp"] += sharp_hit
            row["missed"] += not (oracle_hit or fact_hit or sharp_hit)
        totals.update(row)
        print(f"{fx.name:24} {row['total']:>5} {row['noop']:>5} {row['oracle']:>6} {row['fact']:>5} {row['sharp']:>5} {row['missed']:>6}")
    print(f"{'all':24} {totals['total']:>5} {totals['noop']:>5} {totals['oracle']:>6} {totals['fact']:>5} {totals['sharp']:>5} {totals['missed']:>6}")
    return 1 if totals["missed"] else 0


if __name__ == "__main__":
    sys.exit(main())
