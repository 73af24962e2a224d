"""Presented rings R = base[x]/I localized at a rational point, and toric ideals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import lattice as lat
from .arith import GaloisField, PLocalRing, Prime, PrimeField, RationalField, RationalFunctionField
from .errors import InputError, PointNotOnVariety
from .groebner import Ideal
from .monoid import AffineMonoid
from .poly import Poly, PolyRing, block_key, parse_coefficient

BASE_KINDS = ("Fq", "FpRational", "ZpLocal")


@dataclass(frozen=True)
class BaseSpec:
    kind: str
    p: int
    m: int = 1
    r: int = 0

    def __post_init__(self):
        if self.kind not in BASE_KINDS:
            raise InputError(f"unknown base {self.kind!r}; expected one of {BASE_KINDS}")
        Prime(self.p)
        if self.kind == "Fq" and not 1 <= self.m <= 6:
            raise InputError("Fq needs 1 <= m <= 6")
        if self.kind == "FpRational" and not 1 <= self.r <= 3:
            raise InputError("FpRational needs 1 <= r <= 3")

    @classmethod
    def from_json(cls, d: dict) -> "BaseSpec":
        if not isinstance(d, dict) or "base" not in d or "p" not in d:
            raise InputError("base descriptor needs 'base' and 'p'")
        kind = d["base"]
        if kind == "Fq":
            return cls("Fq", int(d["p"]), m=int(d.get("m", 1)))
        if kind == "FpRational":
            return cls("FpRational", int(d["p"]), r=int(d.get("r", 1)))
        return cls(kind, int(d["p"]))

    def to_json(self) -> dict:
        if self.kind == "Fq":
            return {"base": "Fq", "p": self.p, "m": self.m}
        if self.kind == "FpRational":
            return {"base": "FpRational", "p": self.p, "r": self.r}
        return {"base": "ZpLocal", "p": self.p}

    @cached_property
    def coefficient_domain(self):
        if self.kind == "Fq":
            return PrimeField(self.p) if self.m == 1 else GaloisField(self.p, self.m)
        if self.kind == "FpRational":
            return RationalFunctionField(self.p, self.r)
        return PLocalRing(self.p)

    @cached_property
    def residue_domain(self):
        if self.kind == "ZpLocal":
            return PrimeField(self.p)
        return self.coefficient_domain

    def residue(self, c):
        if self.kind == "ZpLocal":
            return self.coefficient_domain.residue(c)
        return c

    @property
    def p_degree(self) -> int:
        """r with [k : k^p] = p^r."""
        return self.r if self.kind == "FpRational" else 0

    @property
    def mixed(self) -> bool:
        return self.kind == "ZpLocal"

    def __str__(self) -> str:
        return str(self.coefficient_domain)


@dataclass(frozen=True)
class ResidueData:
    k: object
    r: int


class PresentedRing:
    """base[x_1..x_n]/(f_1..f_s) localized at a rational point.

    Generators are kept in the original coordinates; ``centered`` holds them
    after the substitution x -> x + point, so the point becomes the origin.
    For a ZpLocal base the maximal ideal is (p, x_1, ..., x_n) after centering.
    """

    def __init__(self, base: BaseSpec, variables: Sequence[str], generators: Sequence = (), point: Sequence | None = None):
        self.base = base
        self.ambient = PolyRing(base.coefficient_domain, tuple(variables))
        self.generators = tuple(g if isinstance(g, Poly) else self.ambient.parse(g) for g in generators)
        dom = base.coefficient_domain
        if point is None:
            point = [dom.zero] * self.ambient.nvars
        if len(point) != self.ambient.nvars:
            raise InputError(f"point has {len(point)} coordinates, expected {self.ambient.nvars}")
        self.point = tuple(parse_coefficient(dom, c) if isinstance(c, str) else self._coerce(c) for c in point)
        self.centered = tuple(self.center(g) for g in self.generators)
        for g, c in zip(self.generators, self.centered):
            if not self._vanishes_at_point(c):
                raise PointNotOnVariety(f"generator {g} does not vanish at the distinguished point")

    def _coerce(self, c):
        dom = self.base.coefficient_domain
        if isinstance(c, int):
            return dom.from_int(c)
        if isinstance(c, Fraction):
            return dom.from_fraction(c)
        return c

    def _vanishes_at_point(self, centered: Poly) -> bool:
        c = centered.constant_term()
        return self.base.residue_domain.is_zero(self.base.residue(c))

    def center(self, f: Poly) -> Poly:
        return f.shift(self.point)

    @property
    def nvars(self) -> int:
        return self.ambient.nvars

    @property
    def names(self) -> tuple[str, ...]:
        return self.ambient.names

    # -- fiber over the residue characteristic
    @cached_property
    def fiber_ring(self) -> PolyRing:
        return self.ambient.with_domain(self.base.residue_domain)

    def to_fiber(self, f: Poly) -> Poly:
        if f.ring == self.fiber_ring:
            return f
        return f.map_coefficients(self.base.residue, self.fiber_ring)

    @cached_property
    def fiber_ideal(self) -> Ideal:
        """(I, p)/p in k[x] (centered coordinates); equals I itself over fields."""
        return Ideal(self.fiber_ring, [self.to_fiber(g) for g in self.centered])

    @cached_property
    def ideal(self) -> Ideal:
        """I in the ambient ring (centered); Groebner over Z_(p) for ZpLocal."""
        return Ideal(self.ambient, self.centered)

    @cached_property
    def generic_ideal(self) -> Ideal:
        if not self.base.mixed:
            raise ValueError("generic fiber only exists over ZpLocal")
        qring = self.ambient.with_domain(RationalField())
        return Ideal(qring, [g.map_coefficients(Fraction, qring) for g in self.centered])

    def residue_data(self) -> ResidueData:
        return ResidueData(self.base.residue_domain, self.base.p_degree)

    def is_unit_at_point(self, f: Poly) -> bool:
        """Whether f (original coordinates) is a unit of the local ring."""
        c = self.center(f).constant_term()
        return not self.base.residue_domain.is_zero(self.base.residue(c))

    def with_generators(self, extra: Sequence[Poly]) -> "PresentedRing":
        return PresentedRing(self.base, self.names, self.generators + tuple(extra), self.point)

    # -- invariants
    def dimension(self) -> int:
        """Krull dimension, affine stand-in (equidimensional through the point)."""
        fiber = self.fiber_ideal.dimension()
        if not self.base.mixed:
            return fiber
        generic = self.generic_ideal.dimension()
        return max(fiber, 1 + generic if generic >= 0 else -1)

    def linear_part_rank(self) -> int:
        rows = self._cotangent_rows()
        return _rank_over(self.base.residue_domain, rows)

    def _cotangent_rows(self) -> list[list]:
        res = self.base.residue
        rows = []
        for g in self.centered:
            row = [res(g.linear_coefficient(i)) for i in range(self.nvars)]
            if self.base.mixed:
                c0 = Fraction(g.constant_term())
                row = [self.base.coefficient_domain.residue(c0 / self.base.p)] + row
            rows.append(row)
        return rows

    def embedding_dimension(self) -> int:
        """dim_k m/m^2, exact from the linear parts at the rational point."""
        n = self.nvars + (1 if self.base.mixed else 0)
        return n - self.linear_part_rank()

    def is_regular(self) -> bool:
        return self.embedding_dimension() == self.dimension()

    def is_regular_at_point(self) -> bool:
        return self.is_regular()

    def kahler_rank_at_point(self) -> int:
        """dim_k Omega_{R/F_p} (x) k from the Jacobian of the presentation.

        Over F_p(t) the differentials dt_j of the base are included.
        """
        if self.base.mixed:
            raise ValueError("Kaehler rank is only implemented in characteristic p")
        dom = self.base.coefficient_domain
        r = self.base.p_degree
        rows = []
        for g in self.centered:
            row = [g.linear_coefficient(i) for i in range(self.nvars)]
            if r:
                c0 = g.constant_term()
                row += [dom.diff(c0, j) for j in range(r)]
            rows.append(row)
        return self.nvars + r - _rank_over(dom, rows)

    def describe(self) -> dict:
        dom = self.base.coefficient_domain
        return {
            "base": self.base.to_json(),
            "variables": list(self.names),
            "ideal": [str(g) for g in self.generators],
            "point": [dom.to_json(c) for c in self.point],
        }

    def __repr__(self) -> str:
        gens = ", ".join(map(str, self.generators))
        return f"PresentedRing({self.ambient}/({gens}) at {self.point})"


def _rank_over(domain, rows: list[list]) -> int:
    """Rank of a matrix over a field domain (Gaussian elimination)."""
    a = [list(r) for r in rows]
    rk = 0
    ncols = len(a[0]) if a else 0
    for col in range(ncols):
        piv = next((i for i in range(rk, len(a)) if not domain.is_zero(a[i][col])), None)
        if piv is None:
            continue
        a[rk], a[piv] = a[piv], a[rk]
        inv = domain.inv(a[rk][col])
        for i in range(rk + 1, len(a)):
            if not domain.is_zero(a[i][col]):
                f = domain.mul(a[i][col], inv)
                a[i] = [domain.sub(x, domain.mul(f, y)) for x, y in zip(a[i], a[rk])]
        rk += 1
    return rk


def rank_over(domain, rows: list[list]) -> int:
    return _rank_over(domain, rows)


def toric_ideal(q: AffineMonoid, domain, names: Sequence[str] | None = None) -> Ideal:
    """Kernel of domain[y_1..y_m] -> domain[Q], y_i -> chi^{q_i}, for a field domain."""
    m = len(q.generators)
    names = tuple(names) if names is not None else tuple(f"y{i + 1}" for i in range(m))
    ring = PolyRing(domain, names)
    relations = lat.left_kernel(q.generators)
    if not relations:
        return Ideal(ring, [])
    ext = PolyRing(domain, ("_s",) + names)

    def binomial(u):
        plus = tuple([0] + [max(x, 0) for x in u])
        minus = tuple([0] + [max(-x, 0) for x in u])
        return ext.monomial(plus) - ext.monomial(minus)

    gens = [binomial(u) for u in relations]
    gens.append(ext.monomial((1,) + (1,) * m) - ext.one)
    saturated = Ideal(ext, gens, key=block_key(1))
    kept = [g for g in saturated.groebner if all(mono[0] == 0 for mono in g.terms)]
    return Ideal(ring, [ring.from_dict({mono[1:]: c for mono, c in g.terms.items()}) for g in kept])


def monoid_algebra(q: AffineMonoid, base: BaseSpec, names: Sequence[str] | None = None) -> tuple[PresentedRing, list[Poly]]:
    """base[Q] presented by its toric ideal, at the point sending units to 1 and the rest to 0.

    Returns the ring and the images y_i of the generators (the map iota).
    """
    field = RationalField() if base.mixed else base.coefficient_domain
    ideal = toric_ideal(q, field, names)
    ring = PolyRing(base.coefficient_domain, ideal.ring.names)
    gens = [g.map_coefficients(lambda c: ring.domain.from_fraction(Fraction(c)) if base.mixed else c, ring) for g in ideal.groebner]
    dom = base.coefficient_domain
    point = [dom.one if u else dom.zero for u in q.unit_mask]
    presented = PresentedRing(base, ring.names, gens, point)
    return presented, ring.gens
