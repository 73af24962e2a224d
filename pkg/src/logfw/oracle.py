"""Brute-force solver for log FW-derivations on finite rings.

A finite ring here is C[x]/J with J a monomial ideal and C one of F_q or
Z/p^2.  Every axiom instance (all pairs (a, b) for the sum and product rules,
every monoid generator for the log rule) becomes an F_p-linear constraint on
the unknown values D(a) and delta(q) in a finite module M = C'[x]/J', and the
solution space is computed exactly with numpy integer arithmetic mod p.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .arith import GaloisField
from .config import current_budgets
from .errors import InputError, OracleTooLarge
from .fwdiff import FWModulePresentation, fw_expand, presentation
from .monoid import AffineMonoid
from .poly import Poly
from .prelog import PrelogRing
from .ring import BaseSpec, PresentedRing

# ------------------------------------------------------------------ linear algebra mod p


def rref_mod(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p; returns (nonzero rows, pivot columns)."""
    a = np.array(a, dtype=np.int64) % p
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r] = a[r] * pow(int(a[r, c]), -1, p) % p
        col = a[:, c].copy()
        col[r] = 0
        mask = np.nonzero(col)[0]
        if mask.size:
            a[mask] = (a[mask] - np.outer(col[mask], a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def nullspace_mod(a: np.ndarray, p: int, ncols: int) -> np.ndarray:
    """Basis of {v : a v = 0} as columns of an (ncols x k) matrix."""
    if a.size == 0:
        return np.eye(ncols, dtype=np.int64)
    red, pivots = rref_mod(a, p)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = np.zeros((ncols, len(free)), dtype=np.int64)
    for j, f in enumerate(free):
        basis[f, j] = 1
        for i, pc in enumerate(pivots):
            basis[pc, j] = -red[i, f] % p
    return basis


def rank_mod(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    return len(rref_mod(a, p)[1])


def _restrict(basis: np.ndarray, constraints: np.ndarray, p: int, chunk: int = 4096) -> np.ndarray:
    """Restrict the column space ``basis`` to the kernel of ``constraints`` (rows over params)."""
    for start in range(0, constraints.shape[0], chunk):
        if basis.shape[1] == 0:
            return basis
        k = constraints[start:start + chunk] @ basis % p
        k = k[np.any(k, axis=1)]
        if k.shape[0]:
            basis = basis @ nullspace_mod(k, p, basis.shape[1]) % p
    return basis


# ------------------------------------------------------------------ finite rings


@dataclass
class FiniteRing:
    """C[x]/J with J generated by monomials; C = F_q (base Fq) or Z/p^2 (base ZpLocal)."""

    base: BaseSpec
    names: tuple[str, ...]
    monomials: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        self.names = tuple(self.names)
        self.monomials = tuple(tuple(m) for m in self.monomials)
        if self.base.kind == "FpRational":
            raise InputError("finite rings need a finite coefficient ring")
        n = len(self.names)
        bounds = []
        for i in range(n):
            pure = [m[i] for m in self.monomials if all(e == 0 for j, e in enumerate(m) if j != i) and m[i] > 0]
            if not pure:
                raise InputError(f"monomial ideal does not contain a power of {self.names[i]}")
            bounds.append(min(pure))
        self.standard = [
            m for m in itertools.product(*(range(b) for b in bounds))
            if not any(all(x >= y for x, y in zip(m, g)) for g in self.monomials)
        ]
        self.std_index = {m: i for i, m in enumerate(self.standard)}
        p = self.base.p
        if self.base.kind == "ZpLocal":
            self.modulus, self.cdim = p * p, 1
        else:
            self.modulus, self.cdim = p, self.base.m
        self.dim = self.cdim * len(self.standard)
        self.size = self.modulus ** self.dim

    @property
    def p(self) -> int:
        return self.base.p

    def _coeff_product(self, a: int, b: int) -> list[int]:
        """Product z^a z^b in C as a coefficient vector."""
        if self.cdim == 1:
            return [1]
        gf = self.base.coefficient_domain
        return gf.digits(gf.mul(self.p**a, self.p**b))

    @cached_property
    def structure(self) -> np.ndarray:
        """T[i, j, k]: coefficient of basis k in basis_i * basis_j."""
        d = self.dim
        t = np.zeros((d, d, d), dtype=np.int64)
        for (a, s), (b, u) in itertools.product(self.labels, repeat=2):
            m = tuple(x + y for x, y in zip(self.standard[s], self.standard[u]))
            if m not in self.std_index:
                continue
            target = self.std_index[m]
            for c, v in enumerate(self._coeff_product(a, b)):
                if v:
                    t[self.label_index[(a, s)], self.label_index[(b, u)], self.label_index[(c, target)]] = v
        return t % self.modulus

    @cached_property
    def labels(self) -> list[tuple[int, int]]:
        return [(a, s) for s in range(len(self.standard)) for a in range(self.cdim)]

    @cached_property
    def label_index(self) -> dict:
        return {lab: i for i, lab in enumerate(self.labels)}

    @cached_property
    def elements(self) -> np.ndarray:
        n = self.modulus
        idx = np.arange(self.size, dtype=np.int64)
        return np.stack([(idx // n**k) % n for k in range(self.dim)], axis=1)

    @cached_property
    def weights(self) -> np.ndarray:
        return np.array([self.modulus**k for k in range(self.dim)], dtype=np.int64)

    def index(self, vecs: np.ndarray) -> np.ndarray:
        return (vecs % self.modulus) @ self.weights

    def mul_by(self, v: np.ndarray, others: np.ndarray) -> np.ndarray:
        """v * others (rows) as vectors."""
        mat = np.einsum("i,ijk->jk", v, self.structure) % self.modulus
        return others @ mat % self.modulus

    def mul_rows(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.einsum("ni,nj,ijk->nk", a, b, self.structure) % self.modulus

    @cached_property
    def powers(self) -> list[np.ndarray]:
        """powers[k] = a^k for every element a, k = 0..p."""
        e = self.elements
        one = self.vector_of_one()
        out = [np.tile(one, (self.size, 1)), e.copy()]
        for _ in range(2, self.p + 1):
            out.append(self.mul_rows(out[-1], e))
        return out

    def vector_of_one(self) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[self.label_index[(0, self.std_index[(0,) * len(self.names)])]] = 1
        return v

    def from_poly(self, f: Poly) -> np.ndarray:
        """Image of a polynomial over the base coefficient domain."""
        v = np.zeros(self.dim, dtype=np.int64)
        dom = f.ring.domain
        for m, c in f.terms.items():
            if m not in self.std_index:
                continue
            s = self.std_index[m]
            if self.base.kind == "ZpLocal":
                v[self.label_index[(0, s)]] += dom.lift_p2(c)
            elif self.cdim == 1:
                v[self.label_index[(0, s)]] += int(c)
            else:
                for a, x in enumerate(dom.digits(c)):
                    v[self.label_index[(a, s)]] += x
        return v % self.modulus

    def basis_poly(self, i: int, ring) -> Poly:
        a, s = self.labels[i]
        dom = ring.domain
        coef = dom.one if self.cdim == 1 else self.p**a
        return ring.monomial(self.standard[s], coef)

    def presented(self) -> PresentedRing:
        gens = []
        for m in self.monomials:
            gens.append("*".join(f"{n}^{e}" for n, e in zip(self.names, m) if e) or "1")
        if self.base.kind == "ZpLocal":
            gens.append(str(self.p**2))
        return PresentedRing(self.base, self.names, gens)


@dataclass
class FiniteModule:
    """M = C'[x]/J' with J' containing J, C' = F_q (or F_p over Z/p^2), an R-module via the quotient map."""

    ring: FiniteRing
    monomials: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        r = self.ring
        base = BaseSpec("Fq", r.p, m=r.cdim) if r.base.kind == "ZpLocal" else r.base
        self.quotient = FiniteRing(base, r.names, tuple(tuple(m) for m in self.monomials))
        q = self.quotient
        for m in q.standard:
            if m not in r.std_index:
                raise InputError("module ideal must contain the ring ideal")
        self.dim = q.dim
        proj = np.zeros((r.dim, q.dim), dtype=np.int64)
        for i, (a, s) in enumerate(r.labels):
            mono = r.standard[s]
            if mono in q.std_index:
                proj[i, q.label_index[(a, q.std_index[mono])]] = 1
        self.projection = proj

    def action(self, v: np.ndarray) -> np.ndarray:
        """Matrix of multiplication by the ring element v on M (columns = images of basis)."""
        y = (v @ self.projection) % self.ring.p
        return np.einsum("k,kjl->lj", y, self.quotient.structure) % self.ring.p

    def actions(self, vs: np.ndarray) -> np.ndarray:
        y = (vs @ self.projection) % self.ring.p
        return np.einsum("nk,kjl->nlj", y, self.quotient.structure) % self.ring.p

    def action_of_fiber_poly(self, f: Poly) -> np.ndarray:
        """Multiplication by an element of the fiber ring k[x] (k = F_p or F_q)."""
        q = self.quotient
        y = np.zeros(q.dim, dtype=np.int64)
        dom = f.ring.domain
        for m, c in f.terms.items():
            if m not in q.std_index:
                continue
            s = q.std_index[m]
            if q.cdim == 1:
                y[q.label_index[(0, s)]] += int(c)
            else:
                for a, x in enumerate(dom.digits(c)):
                    y[q.label_index[(a, s)]] += x
        return np.einsum("k,kjl->lj", y % q.p, q.structure) % q.p


@dataclass
class FDerOracleResult:
    dimension: int
    basis: np.ndarray  # columns: parameter vectors (values on the additive basis, D(p), delta)
    parameters: int
    constraints: int


class FDerSolver:
    """All log FW-derivations (D, delta) from a finite prelog ring into a finite module."""

    def __init__(self, ring: FiniteRing, module: FiniteModule, monoid: AffineMonoid, alpha: Sequence[Poly]):
        limit = current_budgets().oracle_ring_size
        if ring.size > limit:
            raise OracleTooLarge(f"finite ring has {ring.size} elements (limit {limit})")
        self.ring = ring
        self.module = module
        self.monoid = monoid
        self.alpha = list(alpha)
        self.p = ring.p
        self.rho = monoid.rank
        m = module.dim
        self.mixed = ring.base.kind == "ZpLocal"
        self.n_params = (ring.dim + (1 if self.mixed else 0) + self.rho) * m
        self._build_tree()

    def _param_block(self, k: int) -> np.ndarray:
        m = self.module.dim
        blk = np.zeros((m, self.n_params), dtype=np.int64)
        blk[:, k * m:(k + 1) * m] = np.eye(m, dtype=np.int64)
        return blk

    @property
    def dp_block(self) -> np.ndarray:
        if not self.mixed:
            return np.zeros((self.module.dim, self.n_params), dtype=np.int64)
        return self._param_block(self.ring.dim)

    def delta_block(self, b: int) -> np.ndarray:
        return self._param_block(self.ring.dim + (1 if self.mixed else 0) + b)

    def p_element(self) -> int:
        return int(self.ring.index(self.ring.vector_of_one() * self.p))

    def pair_p(self, a: int, others: np.ndarray) -> np.ndarray:
        """P(a, b) for all b, via the explicit binomial formula."""
        r = self.ring
        pw = r.powers
        acc = np.zeros((len(others), r.dim), dtype=np.int64)
        for i in range(1, self.p):
            c = math.comb(self.p, i) // self.p
            acc = acc + c * r.mul_by(pw[i][a], pw[self.p - i][others])
        return acc % r.modulus

    def _build_tree(self) -> None:
        """Express D(a) for every a through the additive-basis parameters."""
        r = self.ring
        m = self.module.dim
        phi = np.zeros((r.size, m, self.n_params), dtype=np.int64)
        known = np.zeros(r.size, dtype=bool)
        known[0] = True  # D(0) = 0 follows from the sum rule at (0, 0)
        frontier = [0]
        basis_vecs = np.eye(r.dim, dtype=np.int64)
        basis_idx = r.index(basis_vecs)
        dp = self.dp_block
        while frontier:
            nxt = []
            for a in frontier:
                for i, e in enumerate(basis_idx):
                    s = int(r.index(r.elements[a] + basis_vecs[i]))
                    if known[s]:
                        continue
                    pab = self.pair_p(a, np.array([e]))[0]
                    corr = self.module.action(pab) @ dp
                    phi[s] = (phi[a] + self._param_block(i) - corr) % self.p
                    known[s] = True
                    nxt.append(s)
            frontier = nxt
        if not known.all():
            raise RuntimeError("additive basis does not span the finite ring")
        self.phi = phi

    def solve(self) -> FDerOracleResult:
        r, mod, p = self.ring, self.module, self.p
        m = mod.dim
        basis = np.eye(self.n_params, dtype=np.int64)
        count = 0
        all_idx = np.arange(r.size)
        actions_p = mod.actions(r.powers[p])  # action of a^p for every a
        if self.mixed:
            basis = _restrict(basis, (self.phi[self.p_element()] - self.dp_block) % p, p)
        # the log rule first: few rows, and it shrinks the space early
        rows = []
        for q, a in zip(self.monoid.generators, self.alpha):
            idx = int(r.index(r.from_poly(a)))
            coords = self.monoid.gp_coordinates(q)
            rhs = sum(c * self.delta_block(b) for b, c in enumerate(coords))
            rows.append((self.phi[idx] - actions_p[idx] @ rhs) % p)
            count += 1
        if rows:
            basis = _restrict(basis, np.concatenate(rows), p)
        dp_expr = self.phi[self.p_element()] if self.mixed else self.dp_block
        flat_phi = self.phi.reshape(r.size * m, self.n_params)
        phib = dpb = None
        for a in range(r.size):
            s = basis.shape[1]
            if s == 0:
                break
            if phib is None:
                phib = _mm(flat_phi, basis, p).reshape(r.size, m, s)
                dpb = _mm(dp_expr, basis, p)
            # sum rule for (a, b), all b
            sums = r.index(r.elements[a] + r.elements)
            corr = _mm(mod.actions(self.pair_p(a, all_idx)).reshape(-1, m), dpb, p).reshape(r.size, m, s)
            k_sum = (phib[sums] - phib[a][None] - phib + corr) % p
            # product rule for (a, b), all b
            prods = r.index(r.mul_by(r.elements[a], r.elements))
            left = _mm(actions_p.reshape(-1, m), phib[a], p).reshape(r.size, m, s)
            right = _mm(actions_p[a], phib.transpose(1, 0, 2).reshape(m, -1), p).reshape(m, r.size, s).transpose(1, 0, 2)
            k_prod = (phib[prods] - left - right) % p
            count += 2 * r.size
            stacked = np.concatenate([k_sum.reshape(-1, s), k_prod.reshape(-1, s)])
            stacked = stacked[np.any(stacked, axis=1)]
            if stacked.shape[0]:
                kernel = nullspace_mod(_compress(stacked, p), p, s)
                basis = basis @ kernel % p
                phib = dpb = None
        return FDerOracleResult(basis.shape[1], basis, self.n_params, count)

    # -- the comparison with a presentation
    def _relation_matrix(self, M: FWModulePresentation) -> tuple[np.ndarray, dict]:
        mod = self.module
        m = mod.dim
        g = len(M.generators)
        cols = {gen: j for j, gen in enumerate(M.generators)}
        rows = []
        for rel in M.rows:
            row = np.zeros((m, g * m), dtype=np.int64)
            for gen, c in rel.coeffs.items():
                j = cols[gen]
                row[:, j * m:(j + 1) * m] = mod.action_of_fiber_poly(c)
            rows.append(row)
        constraints = np.concatenate(rows) if rows else np.zeros((0, g * m), dtype=np.int64)
        return constraints % self.p, cols

    def presentation_image(self, M: FWModulePresentation) -> tuple[int, np.ndarray]:
        """dim Hom(FW-module, M) and the parameter vectors of the induced derivations."""
        mod, p = self.module, self.p
        m = mod.dim
        g = len(M.generators)
        constraints, cols = self._relation_matrix(M)
        hom = nullspace_mod(constraints, p, g * m)
        # induced derivation: D(a) = sum_gen coeff(w(a))_gen * u(gen), delta_b = u(WLog b)
        r = self.ring
        ring = M.ring
        induce = np.zeros((self.n_params, g * m), dtype=np.int64)
        targets = [(i, r.basis_poly(i, ring.ambient)) for i in range(r.dim)]
        if self.mixed:
            targets.append((r.dim, ring.ambient.from_int(p)))
        for k, f in targets:
            w = fw_expand(f, ring)
            for gen, c in w.coeffs.items():
                j = cols[gen]
                induce[k * m:(k + 1) * m, j * m:(j + 1) * m] = mod.action_of_fiber_poly(c)
        offset = r.dim + (1 if self.mixed else 0)
        for gen, j in cols.items():
            if gen.kind == "log":
                b = gen.index
                induce[(offset + b) * m:(offset + b + 1) * m, j * m:(j + 1) * m] = np.eye(m, dtype=np.int64)
        return hom.shape[1], induce @ hom % p

    def generator_values(self, M: FWModulePresentation, result: FDerOracleResult) -> np.ndarray:
        """Each oracle solution read off on the generators: D(p), D(x_i), delta_b (columns)."""
        r, m = self.ring, self.module.dim
        g = len(M.generators)
        read = np.zeros((g * m, self.n_params), dtype=np.int64)
        offset = r.dim + (1 if self.mixed else 0)
        for j, gen in enumerate(M.generators):
            blk = slice(j * m, (j + 1) * m)
            if gen.kind == "p":
                read[blk] = self.phi[self.p_element()]
            elif gen.kind == "x":
                mono = tuple(int(k == gen.index) for k in range(len(r.names)))
                if mono in r.std_index:
                    read[blk] = self.phi[int(r.index(r.from_poly(M.ring.ambient.gen(gen.index))))]
            elif gen.kind == "log":
                read[blk] = self.delta_block(gen.index)
            else:
                raise InputError("finite rings have no base-field generators")
        return read @ result.basis % self.p

    def oracle_satisfies(self, M: FWModulePresentation, result: FDerOracleResult) -> bool:
        """Whether every brute-force solution kills every relation row of M."""
        constraints, _ = self._relation_matrix(M)
        if not constraints.size or not result.basis.size:
            return True
        return not np.any(constraints @ self.generator_values(M, result) % self.p)


def _mm(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact a @ b mod p through float64 BLAS (entries < p, inner sums far below 2^53)."""
    if a.shape[-1] * (p - 1) ** 2 >= 2**52:
        return (a @ b) % p
    return np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64) % p


def _compress(a: np.ndarray, p: int) -> np.ndarray:
    """Row-reduce a tall constraint block to at most ncols rows."""
    if a.shape[0] <= a.shape[1]:
        return a
    return rref_mod(a, p)[0]


@dataclass
class OracleComparison:
    oracle_dimension: int
    hom_dimension: int
    image_rank: int
    joint_rank: int
    oracle_satisfies_relations: bool = True

    @property
    def equal(self) -> bool:
        return self.oracle_satisfies_relations and (
            self.oracle_dimension == self.hom_dimension == self.image_rank == self.joint_rank
        )


def compare_with_presentation(solver: FDerSolver, M: FWModulePresentation, result: FDerOracleResult | None = None) -> OracleComparison:
    """Subspace equality between oracle solutions and derivations induced by Hom(FW-module, M)."""
    result = result or solver.solve()
    hom_dim, image = solver.presentation_image(M)
    p = solver.p
    image_rank = rank_mod(image.T, p) if image.size else 0
    joint = np.concatenate([result.basis, image], axis=1)
    joint_rank = rank_mod(joint.T, p) if joint.size else 0
    satisfied = solver.oracle_satisfies(M, result)
    return OracleComparison(result.dimension, hom_dim, image_rank, joint_rank, satisfied)


@dataclass
class OracleFixture:
    name: str
    base: BaseSpec
    names: tuple[str, ...]
    ring_monomials: tuple[tuple[int, ...], ...]
    module_monomials: tuple[tuple[int, ...], ...]
    monoid: AffineMonoid
    alpha: dict  # generator vector -> polynomial string

    def build(self) -> tuple[FDerSolver, PrelogRing]:
        ring = FiniteRing(self.base, self.names, self.ring_monomials)
        module = FiniteModule(ring, self.module_monomials)
        presented = ring.presented()
        alpha = tuple(presented.ambient.parse(self.alpha[tuple(g)]) for g in self.monoid.generators)
        prelog = PrelogRing(presented, self.monoid, alpha)
        return FDerSolver(ring, module, self.monoid, alpha), prelog

    def with_full_module(self) -> "OracleFixture":
        """Same ring and prelog, target module R/p."""
        return OracleFixture(self.name + "_full", self.base, self.names, self.ring_monomials, self.ring_monomials, self.monoid, self.alpha)

    def run(self) -> OracleComparison:
        solver, prelog = self.build()
        return compare_with_presentation(solver, presentation(prelog, sharpen=False))


def brute_force_fder(ring: FiniteRing, module: FiniteModule, monoid: AffineMonoid, alpha: Sequence[Poly]) -> FDerOracleResult:
    return FDerSolver(ring, module, monoid, alpha).solve()


def relation_span(ring: FiniteRing, M: FWModulePresentation) -> np.ndarray:
    """RREF of the F_p-span of the relation submodule inside (R/p)^g, R the finite ring."""
    fiber = FiniteModule(ring, ring.monomials)
    d = fiber.dim
    g = len(M.generators)
    cols = {gen: j for j, gen in enumerate(M.generators)}
    vecs = []
    for rel in M.rows:
        block = np.zeros((g * d, d), dtype=np.int64)
        for gen, c in rel.coeffs.items():
            j = cols[gen]
            block[j * d:(j + 1) * d] = fiber.action_of_fiber_poly(c)
        vecs.append(block.T)
    if not vecs:
        return np.zeros((0, g * d), dtype=np.int64)
    return rref_mod(np.concatenate(vecs), ring.p)[0]


def same_module(ring: FiniteRing, a: FWModulePresentation, b: FWModulePresentation) -> bool:
    """Whether two presentations on the same generators define the same quotient of (R/p)^g."""
    sa, sb = relation_span(ring, a), relation_span(ring, b)
    return sa.shape == sb.shape and bool(np.array_equal(sa, sb))


def _box(n: int, e: int) -> tuple[tuple[int, ...], ...]:
    """Generators of m^e in n variables."""
    return tuple(m for m in itertools.product(range(e + 1), repeat=n) if sum(m) == e)


def standard_fixtures() -> list[OracleFixture]:
    """Finite-ring fixtures used by the oracle tests and scripts."""
    fq = lambda p, m=1: BaseSpec("Fq", p, m=m)  # noqa: E731
    zp = lambda p: BaseSpec("ZpLocal", p)  # noqa: E731
    trivial = AffineMonoid(0, ())
    n1, n2 = AffineMonoid.free(1), AffineMonoid.free(2)
    std2 = {(1, 0): "x", (0, 1): "y"}
    nz = AffineMonoid(2, ((1, 0), (0, 1), (0, -1)))
    return [
        OracleFixture("f2_x3_trivial", fq(2), ("x",), ((3,),), ((3,),), trivial, {}),
        OracleFixture("f2_x3_n", fq(2), ("x",), ((3,),), ((3,),), n1, {(1,): "x"}),
        OracleFixture("f3_x2_n_residue", fq(3), ("x",), ((2,),), ((1,),), n1, {(1,): "x"}),
        OracleFixture("f3_x4_n_square", fq(3), ("x",), ((4,),), ((4,),), n1, {(1,): "x^2"}),
        OracleFixture("f2_x3_numerical", fq(2), ("x",), ((3,),), ((3,),), AffineMonoid(1, ((2,), (3,))), {(2,): "x^2", (3,): "0"}),
        OracleFixture("f3_x2_nonsharp", fq(3), ("x",), ((2,),), ((2,),), nz, {(1, 0): "x", (0, 1): "1 + x", (0, -1): "1 - x"}),
        OracleFixture("f4_x2_trivial", fq(2, 2), ("x",), ((2,),), ((2,),), trivial, {}),
        OracleFixture("f3_m2_trivial", fq(3), ("x", "y"), _box(2, 2), _box(2, 2), trivial, {}),
        OracleFixture("f2_m3_n2", fq(2), ("x", "y"), _box(2, 3), _box(2, 3), n2, std2),
        OracleFixture("f2_m3_xy", fq(2), ("x", "y"), _box(2, 3), _box(2, 3), n1, {(1,): "x*y"}),
        OracleFixture("f2_squares_n2", fq(2), ("x", "y"), ((2, 0), (0, 2)), ((2, 0), (0, 2)), n2, std2),
        OracleFixture("f3_m3_trivial_residue", fq(3), ("x", "y"), _box(2, 3), _box(2, 1), trivial, {}),
        OracleFixture("f2_m2_3vars_trivial", fq(2), ("x", "y", "z"), _box(3, 2), _box(3, 2), trivial, {}),
        OracleFixture("z4_trivial_residue", zp(2), ("x",), ((1,),), ((1,),), trivial, {}),
        OracleFixture("z4_x2_n", zp(2), ("x",), ((2,),), ((2,),), n1, {(1,): "x"}),
        OracleFixture("z9_x2_n", zp(3), ("x",), ((2,),), ((2,),), n1, {(1,): "x"}),
        OracleFixture("z4_x2_alpha_2x", zp(2), ("x",), ((2,),), ((2,),), n1, {(1,): "2*x"}),
        OracleFixture("z4_squares_sum", zp(2), ("x", "y"), ((2, 0), (0, 2)), ((2, 0), (0, 2)), n1, {(1,): "x + y"}),
        OracleFixture("z9_x3_units", zp(3), ("x",), ((3,),), ((3,),), AffineMonoid(1, ((1,), (-1,))), {(1,): "1 + x", (-1,): "1 - x + x^2"}),
        OracleFixture("f2_m4_n2", fq(2), ("x", "y"), _box(2, 4), _box(2, 2), n2, std2),
    ]
