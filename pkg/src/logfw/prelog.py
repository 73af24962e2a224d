"""Prelog rings (R, Q, alpha): validation, I_alpha, sharp reduction, the definition route."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from . import lattice as lat
from .errors import NotAHomomorphism, NotLocalPrelog, SectionVerificationFailed
from .groebner import Ideal
from .monoid import AffineMonoid, MonoidHom
from .poly import Poly
from .ring import PresentedRing


@dataclass(frozen=True)
class PrelogRing:
    ring: PresentedRing
    monoid: AffineMonoid
    alpha: tuple[Poly, ...]  # alpha of each (canonically ordered) generator, original coordinates

    def __post_init__(self):
        if len(self.alpha) != len(self.monoid.generators):
            raise NotAHomomorphism(
                f"{len(self.alpha)} alpha images for {len(self.monoid.generators)} monoid generators"
            )
        for a in self.alpha:
            if a.ring != self.ring.ambient:
                raise NotAHomomorphism("alpha images must be elements of the ambient ring")

    def alpha_of(self, v: Sequence[int]) -> Poly:
        """alpha extended multiplicatively to any element of Q."""
        coeffs = self.monoid.representation(v)
        if coeffs is None:
            raise ValueError(f"{tuple(v)} is not in the monoid")
        out = self.ring.ambient.one
        for a, n in zip(self.alpha, coeffs):
            if n:
                out = out * a**n
        return out

    @cached_property
    def centered_alpha(self) -> tuple[Poly, ...]:
        return tuple(self.ring.center(a) for a in self.alpha)

    @property
    def nonunit_alpha(self) -> list[Poly]:
        return [a for a, u in zip(self.alpha, self.monoid.unit_mask) if not u]


@dataclass
class ValidationReport:
    is_local: bool
    relations_checked: int
    notes: list[str] = field(default_factory=list)


def validate(P: PrelogRing) -> ValidationReport:
    """Check that alpha is a homomorphism modulo I and that the prelog ring is local."""
    ring = P.ring
    relations = lat.left_kernel(P.monoid.generators) if P.monoid.generators else []
    ideal = ring.ideal
    for u in relations:
        plus, minus = ring.ambient.one, ring.ambient.one
        for a, n in zip(P.centered_alpha, u):
            if n > 0:
                plus = plus * a**n
            elif n < 0:
                minus = minus * a ** (-n)
        if not ideal.contains(plus - minus):
            raise NotAHomomorphism(f"relation {tuple(u)} among generators does not hold in R")
    notes = ["locality checked on generators"]
    for g, a, is_unit in zip(P.monoid.generators, P.alpha, P.monoid.unit_mask):
        if ring.is_unit_at_point(a) != is_unit:
            kind = "a unit" if ring.is_unit_at_point(a) else "not a unit"
            raise NotLocalPrelog(f"alpha{g} = {a} is {kind} but {g} is {'' if is_unit else 'not '}a unit of Q")
    if not P.monoid.is_saturated():
        notes.append("Q is not saturated; the generator check decides locality because unit-ness is multiplicative")
    return ValidationReport(True, len(relations), notes)


def ideal_I_alpha(P: PrelogRing) -> Ideal:
    """I + (alpha(q) : q non-unit generator), in the ambient ring (centered coordinates)."""
    ring = P.ring
    extra = [a for a, u in zip(P.centered_alpha, P.monoid.unit_mask) if not u]
    return Ideal(ring.ambient, list(ring.centered) + extra)


def quotient_by_I_alpha(P: PrelogRing) -> PresentedRing:
    return P.ring.with_generators(P.nonunit_alpha)


@dataclass
class SharpReduction:
    prelog: PrelogRing
    projection: MonoidHom
    section: MonoidHom
    ideal_equal: bool


def sharp_reduce(P: PrelogRing) -> SharpReduction:
    """(R, Qbar, alpha s): composes alpha with a section of Q -> Qbar."""
    q = P.monoid
    qbar, pi = q.sharpen()
    s = q.section(pi)
    if q.is_sharp:
        return SharpReduction(P, pi, s, True)
    alpha_bar = tuple(P.alpha_of(s(xi)) for xi in qbar.generators)
    reduced = PrelogRing(P.ring, qbar, alpha_bar)
    equal = ideal_I_alpha(P).equals(ideal_I_alpha(reduced))
    if not equal:
        raise SectionVerificationFailed("I_alpha changed under sharp reduction")
    return SharpReduction(reduced, pi, s, equal)


@dataclass
class LogRegularityVerdict:
    route: str
    is_log_regular: bool
    dims: dict
    regular_quotient: bool | None = None
    witness: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"route": self.route, "is_log_regular": self.is_log_regular, "dims": dict(self.dims)}
        if self.regular_quotient is not None:
            out["regular_quotient"] = self.regular_quotient
        if self.witness:
            out["witness"] = self.witness
        return out


def log_regular_by_definition(P: PrelogRing) -> LogRegularityVerdict:
    """R/I_alpha regular and dim R = dim R/I_alpha + dim Q."""
    P = sharp_reduce(P).prelog
    quotient = quotient_by_I_alpha(P)
    dim_r = P.ring.dimension()
    dim_quot = quotient.dimension()
    dim_q = P.monoid.dim_chain()
    edim = quotient.embedding_dimension()
    regular = edim == dim_quot
    adds_up = dim_r == dim_quot + dim_q
    dims = {"dim_R": dim_r, "dim_R_mod_I_alpha": dim_quot, "dim_Q": dim_q}
    return LogRegularityVerdict(
        route="definition",
        is_log_regular=regular and adds_up,
        dims=dims,
        regular_quotient=regular,
        witness={"edim_R_mod_I_alpha": edim, "dimension_equality": adds_up},
    )
