"""Structural cross-checks shared by the test suite and the scripts."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .fwdiff import FWElement, FWModulePresentation, presentation
from .monoid import AffineMonoid
from .prelog import PrelogRing, quotient_by_I_alpha, sharp_reduce
from .ring import PresentedRing


def sharp_ranks(P: PrelogRing) -> tuple[int, int]:
    """Closed-point rank of the presentation before and after sharp reduction."""
    before = presentation(P, sharpen=False).rank_at_closed_point()
    after = presentation(sharp_reduce(P).prelog, sharpen=False).rank_at_closed_point()
    return before, after


def killed_presentation(P: PrelogRing, M: FWModulePresentation) -> FWModulePresentation:
    """M tensored with R/I_alpha: same generators and rows, coefficients reduced mod I_alpha."""
    quotient = quotient_by_I_alpha(P)
    rows = [FWElement(quotient.fiber_ring, dict(r.coeffs)).reduce(quotient.fiber_ideal) for r in M.rows]
    return FWModulePresentation(quotient, M.generators, rows, M.provenance, M.monoid_rank)


def factorization_ranks(P: PrelogRing, M: FWModulePresentation | None = None) -> tuple[int, int]:
    """(rank of the log module after killing I_alpha, rank of the plain module of R/I_alpha + rank Q^gp)."""
    if M is None:
        M = presentation(P, sharpen=False)
    lhs = killed_presentation(P, M).rank_at_closed_point()
    quotient = quotient_by_I_alpha(P)
    plain = PrelogRing(quotient, AffineMonoid(0, ()), ())
    rhs = presentation(plain, sharpen=False).rank_at_closed_point() + P.monoid.rank
    return lhs, rhs


def frobenius_twist_ranks(ring: PresentedRing) -> tuple[int, int]:
    """(closed-point rank of the plain FW module, dim of Kaehler differentials at the point)."""
    plain = PrelogRing(ring, AffineMonoid(0, ()), ())
    return presentation(plain, sharpen=False).rank_at_closed_point(), ring.kahler_rank_at_point()


@dataclass(frozen=True)
class Mutation:
    row: int
    col: int
    shift: str
    presentation: FWModulePresentation


def single_entry_mutations(M: FWModulePresentation) -> Iterator[Mutation]:
    """Every relation entry shifted by 1 and by the first variable."""
    fiber = M.ring.fiber_ring
    shifts = [("1", fiber.one)]
    if fiber.nvars:
        shifts.append((fiber.names[0], fiber.gens[0]))
    for i, row in enumerate(M.rows):
        for j, g in enumerate(M.generators):
            for label, delta in shifts:
                yield Mutation(i, j, label, M.with_entry(i, j, row[g] + delta))
