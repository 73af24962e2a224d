"""Affine monoids Q in Z^d: group completion, units, sharpening, saturation, Spec."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from . import lattice as lat
from .config import current_budgets
from .errors import InputError, SearchBudgetExceeded, SectionVerificationFailed, UnsupportedMonoid

Vec = tuple[int, ...]


# ------------------------------------------------------------------ cones


def dual_cone(gens: Sequence[Vec], d: int) -> tuple[list[Vec], list[Vec]]:
    """Generators (rays, lineality basis) of {phi : <g, phi> >= 0 for all g}.

    Exact integer double description; rays are primitive and extreme.
    """
    lin: list[Vec] = [tuple(int(i == j) for j in range(d)) for i in range(d)]
    rays: list[Vec] = []
    seen: list[Vec] = []
    for a in gens:
        vals = [lat.dot(a, l) for l in lin]
        k = next((i for i, v in enumerate(vals) if v), None)
        if k is not None:
            l0 = lin[k] if vals[k] > 0 else tuple(-x for x in lin[k])
            a0 = abs(vals[k])
            new_lin = []
            for i, l in enumerate(lin):
                if i == k:
                    continue
                new_lin.append(lat.primitive([a0 * x - vals[i] * y for x, y in zip(l, l0)]))
            rays = [lat.primitive([a0 * x - lat.dot(a, r) * y for x, y in zip(r, l0)]) for r in rays]
            rays.append(lat.primitive(l0))
            lin = [l for l in new_lin if any(l)]
        else:
            pos = [r for r in rays if lat.dot(a, r) > 0]
            zero = [r for r in rays if lat.dot(a, r) == 0]
            neg = [r for r in rays if lat.dot(a, r) < 0]
            new = pos + zero
            constraints = seen + [a]
            zsets = {r: frozenset(i for i, c in enumerate(constraints) if lat.dot(c, r) == 0) for r in rays}
            for rp in pos:
                for rn in neg:
                    common = zsets[rp] & zsets[rn]
                    if any(r not in (rp, rn) and common <= zsets[r] for r in rays):
                        continue
                    ap, an = lat.dot(a, rp), lat.dot(a, rn)
                    new.append(lat.primitive([ap * x - an * y for x, y in zip(rn, rp)]))
            rays = list(dict.fromkeys(new))
        seen.append(tuple(a))
    return sorted(rays), lin


@dataclass(frozen=True)
class MonoidPrime:
    """The prime ideal Q minus F for a face F, cut out by a supporting functional."""

    face: frozenset  # indices of generators lying on the face
    functional: Vec  # zero on the face, positive on the rest of the cone

    def contains(self, v: Sequence[int]) -> bool:
        return lat.dot(self.functional, v) > 0


@dataclass(frozen=True)
class MonoidHom:
    """Z-linear map given by a rational matrix (rows = codomain coordinates)."""

    domain: "AffineMonoid"
    codomain: "AffineMonoid"
    matrix: tuple[tuple[Fraction, ...], ...]

    def __call__(self, v: Sequence[int]) -> Vec:
        out = []
        for row in self.matrix:
            x = sum(Fraction(a) * b for a, b in zip(row, v))
            if x.denominator != 1:
                raise ValueError(f"{tuple(v)} is not in the domain lattice")
            out.append(int(x))
        return tuple(out)

    @property
    def images(self) -> tuple[Vec, ...]:
        return tuple(self(g) for g in self.domain.generators)

    def verify(self) -> bool:
        return all(self.codomain.contains(x) for x in self.images)


# ------------------------------------------------------------------ monoid


@dataclass(frozen=True)
class AffineMonoid:
    ambient_rank: int
    generators: tuple[Vec, ...]

    def __post_init__(self):
        d = self.ambient_rank
        gens = []
        for g in self.generators:
            g = tuple(int(x) for x in g)
            if len(g) != d:
                raise InputError(f"generator {g} does not have length {d}")
            if any(g):
                gens.append(g)
        object.__setattr__(self, "generators", tuple(sorted(set(gens))))

    @classmethod
    def free(cls, n: int) -> "AffineMonoid":
        return cls(n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def index(self, v: Sequence[int]) -> int:
        return self.generators.index(tuple(v))

    # -- lattice data
    @cached_property
    def gp_basis(self) -> tuple[Vec, ...]:
        return tuple(tuple(r) for r in lat.hnf(self.generators)) if self.generators else ()

    def gp_lattice(self) -> tuple[tuple[Vec, ...], int]:
        return self.gp_basis, len(self.gp_basis)

    @property
    def rank(self) -> int:
        return len(self.gp_basis)

    def gp_coordinates(self, v: Sequence[int]) -> Vec | None:
        c = lat.solve_integer(self.gp_basis, v)
        return None if c is None else tuple(c)

    # -- cone data
    @cached_property
    def _dual(self) -> tuple[list[Vec], list[Vec]]:
        return dual_cone(self.generators, self.ambient_rank)

    @property
    def dual_rays(self) -> list[Vec]:
        return self._dual[0]

    @cached_property
    def positive_functional(self) -> Vec:
        """Sum of the dual rays: vanishes exactly on the unit face."""
        phi = [0] * self.ambient_rank
        for r in self.dual_rays:
            phi = [x + y for x, y in zip(phi, r)]
        return tuple(phi)

    def in_cone(self, v: Sequence[int]) -> bool:
        rays, lin = self._dual
        return all(lat.dot(r, v) >= 0 for r in rays) and all(lat.dot(l, v) == 0 for l in lin)

    @cached_property
    def unit_mask(self) -> tuple[bool, ...]:
        phi = self.positive_functional
        return tuple(lat.dot(phi, g) == 0 for g in self.generators)

    def units(self) -> tuple[Vec, ...]:
        """HNF basis of the unit group Q^x (a sublattice of Q^gp)."""
        ugens = [g for g, u in zip(self.generators, self.unit_mask) if u]
        return tuple(tuple(r) for r in lat.hnf(ugens)) if ugens else ()

    @property
    def is_sharp(self) -> bool:
        return not any(self.unit_mask)

    def is_unit(self, v: Sequence[int]) -> bool:
        return self.contains(v) and self.contains(tuple(-x for x in v))

    # -- membership
    @cached_property
    def _positive_unit_relation(self) -> tuple[int, ...]:
        """Strictly positive integer relation among the unit generators."""
        idx = [i for i, u in enumerate(self.unit_mask) if u]
        if not idx:
            return ()
        ker = lat.left_kernel([self.generators[i] for i in idx])
        budget = current_budgets().membership_nodes
        tried = 0
        for bound in range(1, 50):
            for coeffs in itertools.product(range(-bound, bound + 1), repeat=len(ker)):
                tried += 1
                if tried > budget:
                    raise SearchBudgetExceeded("no positive relation among unit generators found")
                v = lat.vecmat(coeffs, ker)
                if v and all(x > 0 for x in v):
                    return tuple(v)
        raise SearchBudgetExceeded("no positive relation among unit generators found")

    def representation(self, v: Sequence[int]) -> tuple[int, ...] | None:
        """Nonnegative integer coefficients expressing v in the generators, or None."""
        v = tuple(int(x) for x in v)
        if len(v) != self.ambient_rank:
            raise InputError(f"vector {v} has wrong length")
        if not self.generators:
            return () if not any(v) else None
        if self.gp_coordinates(v) is None or not self.in_cone(v):
            return None
        rays = self.dual_rays
        nonunit = [i for i, u in enumerate(self.unit_mask) if not u]
        unit = [i for i, u in enumerate(self.unit_mask) if u]
        # each dual ray gives an equality sum n_i r(g_i) = r(v) with r(g_i) >= 0
        weights = [[lat.dot(r, self.generators[i]) for r in rays] for i in nonunit]
        target = [lat.dot(r, v) for r in rays]
        unit_rows = [self.generators[i] for i in unit]
        budget = current_budgets().membership_nodes
        nodes = 0
        coeffs = [0] * len(nonunit)

        def finish(residual) -> tuple[int, ...] | None:
            c: list[int] = []
            if unit:
                sol = lat.solve_integer(unit_rows, residual)
                if sol is None:
                    return None
                # make unit coefficients nonnegative by adding a positive relation
                rel = self._positive_unit_relation
                shift = max([(-x + r - 1) // r for x, r in zip(sol, rel) if x < 0], default=0)
                c = [x + shift * r for x, r in zip(sol, rel)]
            elif any(residual):
                return None
            out = [0] * len(self.generators)
            for i, n in zip(nonunit, coeffs):
                out[i] = n
            for i, n in zip(unit, c):
                out[i] = n
            return tuple(out)

        def search(k: int, rem: list[int], residual: tuple[int, ...]):
            nonlocal nodes
            nodes += 1
            if nodes > budget:
                raise SearchBudgetExceeded(f"membership search exceeded {budget} nodes")
            if k == len(nonunit):
                return None if any(rem) else finish(residual)
            w = weights[k]
            cap = min((t // x for t, x in zip(rem, w) if x > 0), default=0)
            g = self.generators[nonunit[k]]
            for n in range(cap, -1, -1):
                coeffs[k] = n
                found = search(k + 1, [t - n * x for t, x in zip(rem, w)], tuple(a - n * b for a, b in zip(residual, g)))
                if found is not None:
                    return found
            coeffs[k] = 0
            return None

        return search(0, target, v)

    def contains(self, v: Sequence[int]) -> bool:
        return self.representation(v) is not None

    def membership(self, v: Sequence[int]) -> bool:
        return self.contains(v)

    # -- sharpening
    def sharpen(self) -> tuple["AffineMonoid", MonoidHom]:
        d = self.ambient_rank
        if self.is_sharp:
            ident = tuple(tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d))
            return self, MonoidHom(self, self, ident)
        basis = self.gp_basis
        rho = len(basis)
        ub = [lat.solve_integer(basis, u) for u in self.units()]
        diag, _, _ = lat.smith_normal_form(ub)
        if any(x != 1 for x in diag):
            raise UnsupportedMonoid("the sharpening has torsion in its group completion")
        kernel = lat.right_kernel(ub)  # rows k with <u, k> = 0 in basis coordinates
        if not kernel:
            kernel_rows: list[list[int]] = []
        else:
            kernel_rows = kernel
        _, _, pivots = lat.hnf_with_transform(basis)
        sub = [[row[c] for c in pivots] for row in basis]
        inv = lat.invert_rational(sub)  # coords = v[pivots] @ inv
        matrix = []
        for k in kernel_rows:
            row = [Fraction(0)] * d
            for a, c in enumerate(pivots):
                row[c] = sum(Fraction(k[b]) * inv[a][b] for b in range(rho))
            matrix.append(tuple(row))
        dbar = len(kernel_rows)
        hom_matrix = tuple(matrix)
        images = []
        for g, u in zip(self.generators, self.unit_mask):
            if not u:
                images.append(tuple(int(sum(r * x for r, x in zip(row, g))) for row in hom_matrix))
        qbar = AffineMonoid(dbar, tuple(images))
        return qbar, MonoidHom(self, qbar, hom_matrix)

    def section(self, pi: MonoidHom | None = None) -> MonoidHom:
        """s: Qbar -> Q with pi(s(x)) = x, verified on generators."""
        if pi is None:
            _, pi = self.sharpen()
        qbar = pi.codomain
        if pi.domain is not self and pi.domain != self:
            raise ValueError("pi does not start at this monoid")
        if qbar == self and self.is_sharp:
            return pi
        basis = self.gp_basis
        kmat = [[int(x) for x in row] for row in _kernel_part(pi, basis)]
        columns = []
        for j in range(qbar.ambient_rank):
            e = [int(i == j) for i in range(qbar.ambient_rank)]
            c = lat.solve_integer(lat.transpose(kmat), e)
            if c is None:
                raise SectionVerificationFailed("projection is not surjective on lattices")
            columns.append(lat.vecmat(c, basis))
        matrix = tuple(tuple(Fraction(columns[j][i]) for j in range(qbar.ambient_rank)) for i in range(self.ambient_rank))
        s = MonoidHom(qbar, self, matrix)
        for xi in qbar.generators:
            lifted = s(xi)
            if pi(lifted) != xi or not self.contains(lifted):
                raise SectionVerificationFailed(f"section fails on generator {xi}")
        return s

    # -- saturation
    def hilbert_basis_of_saturation(self) -> tuple[Vec, ...]:
        b = current_budgets()
        if self.rank > b.hilbert_rank or len(self.generators) > b.hilbert_generators:
            raise SearchBudgetExceeded(
                f"saturation limited to rank <= {b.hilbert_rank} and <= {b.hilbert_generators} generators"
            )
        basis = self.gp_basis
        rho = len(basis)
        if rho == 0:
            return ()
        coords = [tuple(lat.solve_integer(basis, g)) for g in self.generators]
        candidates: set[Vec] = set(coords)
        nodes = 0
        for subset in itertools.combinations(coords, rho):
            if lat.rational_rank(subset) < rho:
                continue
            diag, u, v = lat.smith_normal_form(subset)
            vinv = lat.invert_rational(v)
            sinv = lat.invert_rational(subset)
            for z in itertools.product(*(range(x) for x in diag)):
                nodes += 1
                if nodes > b.membership_nodes:
                    raise SearchBudgetExceeded("parallelepiped enumeration exceeded the node budget")
                y = [sum(Fraction(z[i]) * vinv[i][j] for i in range(rho)) for j in range(rho)]
                lam = [sum(y[i] * sinv[i][j] for i in range(rho)) for j in range(rho)]
                frac = [l - (l.numerator // l.denominator) for l in lam]
                x = [sum(frac[i] * subset[i][j] for i in range(rho)) for j in range(rho)]
                if any(c.denominator != 1 for c in x):
                    raise ArithmeticError("non-integral parallelepiped point")
                x = tuple(int(c) for c in x)
                if any(x):
                    candidates.add(x)
        ambient = sorted({tuple(lat.vecmat(c, basis)) for c in candidates})
        return tuple(sorted(_minimize(ambient, self.ambient_rank)))

    def saturate(self) -> "AffineMonoid":
        return AffineMonoid(self.ambient_rank, self.hilbert_basis_of_saturation())

    def is_saturated(self) -> bool:
        return all(self.contains(h) for h in self.hilbert_basis_of_saturation())

    # -- faces and dimension
    @cached_property
    def faces(self) -> tuple[frozenset, ...]:
        """Faces of cone(Q) as sets of generator indices, largest first."""
        full = frozenset(range(len(self.generators)))
        faces = {full}
        for r in self.dual_rays:
            z = frozenset(i for i, g in enumerate(self.generators) if lat.dot(r, g) == 0)
            faces |= {f & z for f in faces}
        return tuple(sorted(faces, key=lambda f: (-len(f), sorted(f))))

    def spec(self) -> list[MonoidPrime]:
        primes = []
        for f in self.faces:
            phi = [0] * self.ambient_rank
            for r in self.dual_rays:
                if all(lat.dot(r, self.generators[i]) == 0 for i in f):
                    phi = [x + y for x, y in zip(phi, r)]
            primes.append(MonoidPrime(f, tuple(phi)))
        return primes

    def dim_chain(self) -> int:
        faces = self.faces
        longest = {}
        for f in sorted(faces, key=len):
            below = [longest[g] for g in longest if g < f]
            longest[f] = 1 + max(below) if below else 0
        return max(longest.values())

    def dim_rank(self) -> int:
        return self.rank - len(self.units())

    def info(self) -> dict:
        qbar, _ = self.sharpen()
        return {
            "ambient_rank": self.ambient_rank,
            "generators": [list(g) for g in self.generators],
            "gp_rank": self.rank,
            "gp_basis": [list(b) for b in self.gp_basis],
            "units_basis": [list(u) for u in self.units()],
            "sharp": self.is_sharp,
            "sharpening_generators": [list(g) for g in qbar.generators],
            "saturated": self.is_saturated(),
            "num_primes": len(self.faces),
            "dim_chain": self.dim_chain(),
            "dim_rank": self.dim_rank(),
        }


def _kernel_part(pi: MonoidHom, basis) -> list[list[Fraction]]:
    """Matrix of pi in gp-basis coordinates (integral by construction)."""
    return [[sum(row[c] * b[c] for c in range(len(b))) for b in basis] for row in pi.matrix]


def _minimize(elements: list[Vec], d: int) -> list[Vec]:
    """Drop elements expressible through the others (greedy, largest first)."""
    kept = list(elements)
    changed = True
    while changed:
        changed = False
        for h in sorted(kept, key=lambda v: (sum(abs(x) for x in v), v), reverse=True):
            rest = [g for g in kept if g != h]
            if rest and AffineMonoid(d, tuple(rest)).contains(h):
                kept = rest
                changed = True
                break
    return kept


def spec_isomorphism(q: AffineMonoid, qbar: AffineMonoid, pi: MonoidHom) -> dict[frozenset, frozenset] | None:
    """The bijection Spec(Q) -> Spec(Qbar), p -> pi(p), if it is an order isomorphism."""
    nonunit = [i for i, u in enumerate(q.unit_mask) if not u]
    images = {i: pi(q.generators[i]) for i in nonunit}
    mapping = {}
    for face in q.faces:
        img = frozenset(qbar.index(images[i]) for i in face if i in images and any(images[i]))
        mapping[face] = img
    if len(set(mapping.values())) != len(mapping) or set(mapping.values()) != set(qbar.faces):
        return None
    for a, b in itertools.product(q.faces, repeat=2):
        if (a <= b) != (mapping[a] <= mapping[b]):
            return None
    return mapping
