"""validate -> sharp_reduce -> both regularity routes -> cross-checks, as one report."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field

from .fwdiff import FWElement, Gen, fw_criterion_verdict, fw_expand, is_free_of_rank, presentation, verify_derivation
from .instance import Instance
from .prelog import ideal_I_alpha, log_regular_by_definition, sharp_reduce, validate

EXPECTED_KEYS = {
    "log_regular": ("verdict", "is_log_regular"),
    "rank_at_closed_point": ("fw", "rank_at_closed_point"),
    "target": ("fw", "target"),
    "free": ("fw", "condition_1_free"),
    "dim_R": ("definition", "dim_R"),
    "dim_R_mod_I_alpha": ("definition", "dim_R_mod_I_alpha"),
    "dim_Q": ("definition", "dim_Q"),
}


@dataclass
class RunResult:
    report: dict
    agree: bool
    presentation: dict = field(default_factory=dict)


class _Clock:
    def __init__(self, enabled: bool):
        self.enabled = enabled
        self.laps: dict[str, float] = {}

    @contextmanager
    def lap(self, name: str):
        start = time.perf_counter()
        yield
        self.laps[name] = round(time.perf_counter() - start, 4)


def run_instance(inst: Instance, seed: int = 0, samples: int = 24, timings: bool = False) -> RunResult:
    clock = _Clock(timings)
    P = inst.prelog()
    with clock.lap("validate"):
        check = validate(P)
    with clock.lap("sharp_reduce"):
        red = sharp_reduce(P)
    with clock.lap("definition"):
        by_def = log_regular_by_definition(P)
    with clock.lap("fw"):
        by_fw = fw_criterion_verdict(P)
        M = presentation(red.prelog, sharpen=False)
    with clock.lap("checks"):
        checks = _cross_checks(P, red, M, by_fw, seed, samples)
    agree = by_def.is_log_regular == by_fw.is_log_regular
    checks["routes_agree"] = agree
    q = P.monoid
    fw_json = by_fw.to_json()
    report = {
        "name": inst.name,
        "tags": list(inst.tags),
        "ring": P.ring.describe(),
        "monoid": {
            "generators": [list(g) for g in q.generators],
            "alpha": [str(a) for a in P.alpha],
            "gp_rank": q.rank,
            "sharp": q.is_sharp,
            "saturated": q.is_saturated(),
            "dim": q.dim_chain(),
        },
        "validation": {"local": check.is_local, "relations_checked": check.relations_checked, "notes": check.notes},
        "sharp_reduction": {
            "applied": not q.is_sharp,
            "generators": [list(g) for g in red.prelog.monoid.generators],
            "alpha": [str(a) for a in red.prelog.alpha],
            "ideal_equal": red.ideal_equal,
        },
        "I_alpha": [str(g) for g in ideal_I_alpha(red.prelog).generators],
        "definition": by_def.to_json(),
        "fw": fw_json,
        "verdict": {"is_log_regular": by_def.is_log_regular if agree else None, "routes_agree": agree},
        "checks": checks,
    }
    report["expected"] = _compare_expected(inst.expected, report)
    if timings:
        report["timings"] = clock.laps
    return RunResult(report, agree, M.to_json())


def _cross_checks(P, red, M, by_fw, seed: int, samples: int) -> dict:
    out: dict = {}
    target = by_fw.dims["target"]
    rank = by_fw.dims["rank_at_closed_point"]
    free = by_fw.witness["condition_1_free"]
    out["free_implies_rank"] = (not free) or rank == target
    if not P.monoid.is_sharp:
        before = presentation(P, sharpen=False).rank_at_closed_point()
        out["sharp_invariance"] = {"before": before, "after": M.rank_at_closed_point(), "equal": before == M.rank_at_closed_point()}
    ring = P.ring
    q = P.monoid

    def delta(i: int) -> FWElement:
        coords = q.gp_coordinates(q.generators[i])
        fiber = ring.fiber_ring
        return FWElement(fiber, {Gen("log", b): fiber.from_int(c) for b, c in enumerate(coords) if c})

    rep = verify_derivation(lambda f: fw_expand(f, ring, reduce=False), ring, samples=samples, seed=seed, prelog=P, delta=delta, closure=True)
    out["universal_w_axioms"] = {"checks": rep.checks, "violations": rep.violations[:5], "ok": rep.ok}
    return out


def _compare_expected(expected: dict, report: dict) -> dict:
    if not expected:
        return {}
    provenance = expected.get("provenance", "unspecified")
    mismatches = []
    for key, want in expected.items():
        if key == "provenance" or key not in EXPECTED_KEYS:
            continue
        section, field_ = EXPECTED_KEYS[key]
        block = report[section]
        got = block.get(field_, block.get("dims", {}).get(field_, block.get("witness", {}).get(field_)))
        if got != want:
            mismatches.append({"key": key, "expected": want, "got": got, "provenance": provenance})
    return {"checked": [k for k in expected if k in EXPECTED_KEYS], "mismatches": mismatches}
