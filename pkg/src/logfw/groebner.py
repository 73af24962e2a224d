"""Buchberger's algorithm over fields and over the DVR Z_(p), plus ideal dimension."""

from __future__ import annotations

import itertools
from functools import cached_property
from typing import Callable, Iterable, Sequence

from .arith import PLocalRing
from .config import current_budgets
from .errors import BudgetExceeded
from .poly import Mono, Poly, PolyRing, grevlex_key


def _divides(a: Mono, b: Mono) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Mono, b: Mono) -> Mono:
    return tuple(max(x, y) for x, y in zip(a, b))


def _quo(a: Mono, b: Mono) -> Mono:
    return tuple(x - y for x, y in zip(a, b))


class _Coeffs:
    """Coefficient policy: fields divide freely, Z_(p) divides by valuation."""

    def __init__(self, domain):
        self.d = domain
        self.dvr = isinstance(domain, PLocalRing)

    def quotient(self, c, lc):
        """c / lc if lc divides c in the coefficient ring, else None."""
        if not self.dvr:
            return self.d.mul(c, self.d.inv(lc))
        return self.d.divide(c, lc)

    def spair_multipliers(self, a, b):
        if not self.dvr:
            return self.d.inv(a), self.d.inv(b)
        target = self.d.p ** max(self.d.valuation(a), self.d.valuation(b))
        return self.d.divide(target, a), self.d.divide(target, b)

    def normalize(self, f: Poly, key) -> Poly:
        if f.is_zero():
            return f
        _, lc = f.leading(key)
        if not self.dvr:
            return f.scale(self.d.inv(lc))
        return f.scale(self.d.divide(self.d.p ** self.d.valuation(lc), lc))

    def leading_divides(self, g_lc, c) -> bool:
        if not self.dvr:
            return True
        return self.d.valuation(g_lc) <= self.d.valuation(c)


def reduce(f: Poly, basis: Sequence[Poly], key=grevlex_key, full: bool = True) -> Poly:
    """Remainder of f by ``basis``; with ``full`` every term is reduced."""
    if not basis or f.is_zero():
        return f
    pol = _Coeffs(f.ring.domain)
    leads = [g.leading(key) for g in basis]
    d = f.ring.domain
    remainder: dict = {}
    p = dict(f.terms)
    while p:
        m = max(p, key=key)
        c = p[m]
        for g, (lm, lc) in zip(basis, leads):
            if _divides(lm, m) and pol.leading_divides(lc, c):
                q = pol.quotient(c, lc)
                mono = _quo(m, lm)
                for gm, gc in g.terms.items():
                    t = tuple(x + y for x, y in zip(gm, mono))
                    v = d.sub(p.get(t, d.zero), d.mul(q, gc))
                    if d.is_zero(v):
                        p.pop(t, None)
                    else:
                        p[t] = v
                break
        else:
            remainder[m] = p.pop(m)
            if not full:
                remainder.update(p)
                break
    return Poly(f.ring, remainder)


def _spoly(f: Poly, g: Poly, key, pol: _Coeffs) -> Poly:
    fm, fc = f.leading(key)
    gm, gc = g.leading(key)
    lcm = _lcm(fm, gm)
    a, b = pol.spair_multipliers(fc, gc)
    return f.mul_term(_quo(lcm, fm), a) - g.mul_term(_quo(lcm, gm), b)


def groebner_basis(polys: Iterable[Poly], key=grevlex_key, pair_budget: int | None = None) -> list[Poly]:
    """Reduced Groebner basis (monic over fields), sorted by decreasing leading monomial."""
    budget = current_budgets().groebner_pairs if pair_budget is None else pair_budget
    polys = [f for f in polys if not f.is_zero()]
    if not polys:
        return []
    pol = _Coeffs(polys[0].ring.domain)
    basis: list[Poly] = []
    for f in polys:
        r = reduce(f, basis, key)
        if not r.is_zero():
            basis.append(pol.normalize(r, key))
    pairs = set(itertools.combinations(range(len(basis)), 2))
    done: set = set()
    spent = 0
    while pairs:
        # smallest lcm first (normal selection strategy)
        i, j = min(pairs, key=lambda ij: (key(_lcm(basis[ij[0]].leading(key)[0], basis[ij[1]].leading(key)[0])), ij))
        pairs.discard((i, j))
        done.add((i, j))
        spent += 1
        if spent > budget:
            raise BudgetExceeded(f"Groebner pair budget {budget} exhausted")
        fi, fj = basis[i], basis[j]
        mi, ci = fi.leading(key)
        mj, cj = fj.leading(key)
        lcm = _lcm(mi, mj)
        coprime_coeffs = not pol.dvr or pol.d.is_unit(ci) or pol.d.is_unit(cj)
        if coprime_coeffs and lcm == tuple(x + y for x, y in zip(mi, mj)):
            continue
        if not pol.dvr and _chain_skip(i, j, lcm, basis, pairs, key):
            continue
        r = reduce(_spoly(fi, fj, key, pol), basis, key)
        if r.is_zero():
            continue
        basis.append(pol.normalize(r, key))
        n = len(basis) - 1
        pairs.update((k, n) for k in range(n))
    return _interreduce(basis, key, pol)


def _chain_skip(i, j, lcm, basis, pending, key) -> bool:
    for k, g in enumerate(basis):
        if k in (i, j):
            continue
        if not _divides(g.leading(key)[0], lcm):
            continue
        if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
            return True
    return False


def _interreduce(basis: list[Poly], key, pol: _Coeffs) -> list[Poly]:
    # drop elements whose leading term is divisible by another one
    minimal: list[Poly] = []
    items = sorted(basis, key=lambda g: key(g.leading(key)[0]))
    for g in items:
        gm, gc = g.leading(key)
        if any(_divides(h.leading(key)[0], gm) and pol.leading_divides(h.leading(key)[1], gc) for h in minimal):
            continue
        minimal.append(g)
    out = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        lm, lc = g.leading(key)
        tail = reduce(Poly(g.ring, {m: c for m, c in g.terms.items() if m != lm}), others, key)
        out.append(pol.normalize(Poly(g.ring, {lm: lc, **tail.terms}), key))
    out.sort(key=lambda g: key(g.leading(key)[0]), reverse=True)
    return out


def independent_set_dimension(leading: Sequence[Mono], nvars: int) -> int:
    """Krull dimension of k[x]/LT via the largest set of variables avoided by every leading monomial."""
    if any(not any(m) for m in leading):
        return -1
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in leading]
    for size in range(nvars, -1, -1):
        for subset in itertools.combinations(range(nvars), size):
            s = set(subset)
            if all(not supp <= s for supp in supports):
                return size
    return 0


class Ideal:
    """Ideal of a polynomial ring with a lazily cached reduced Groebner basis."""

    def __init__(self, ring: PolyRing, generators: Iterable[Poly], key: Callable = grevlex_key):
        self.ring = ring
        self.generators = tuple(g for g in generators)
        for g in self.generators:
            if g.ring != ring:
                raise TypeError("generator lives in a different ring")
        self.key = key

    @cached_property
    def groebner(self) -> tuple[Poly, ...]:
        return tuple(groebner_basis(self.generators, self.key))

    def normal_form(self, f: Poly) -> Poly:
        return reduce(f, self.groebner, self.key)

    def contains(self, f: Poly) -> bool:
        return self.normal_form(f).is_zero()

    def is_unit_ideal(self) -> bool:
        d = self.ring.domain
        return any(g.is_constant() and d.is_unit(g.constant_term()) for g in self.groebner)

    def is_zero_ideal(self) -> bool:
        return not self.groebner

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.generators)

    def equals(self, other: "Ideal") -> bool:
        return self.contains_ideal(other) and other.contains_ideal(self)

    def dimension(self) -> int:
        """Krull dimension of ring/I (field coefficients; -1 for the unit ideal)."""
        if not self.ring.domain.is_field:
            raise ValueError("dimension via independent sets needs field coefficients")
        return independent_set_dimension([g.leading(self.key)[0] for g in self.groebner], self.ring.nvars)

    def __repr__(self) -> str:
        return f"Ideal({', '.join(map(str, self.generators))})"


def ideal_dimension(ideal: Ideal) -> int:
    return ideal.dimension()


def normal_form(f: Poly, ideal: Ideal) -> Poly:
    return ideal.normal_form(f)


def divide_exact(h: Poly, f: Poly, key=grevlex_key) -> Poly:
    """h / f over a field coefficient domain; raises if f does not divide h."""
    d = h.ring.domain
    fm, fc = f.leading(key)
    inv = d.inv(fc)
    q: dict = {}
    r = h
    while not r.is_zero():
        m, c = r.leading(key)
        if not _divides(fm, m):
            raise ArithmeticError("inexact polynomial division")
        mono = _quo(m, fm)
        coef = d.mul(c, inv)
        q[mono] = coef
        r = r - f.mul_term(mono, coef)
    return Poly(h.ring, q)


def colon(ideal: Ideal, f: Poly) -> Ideal:
    """I : f = {g : g f in I} via I cap (f) computed by elimination."""
    ring = ideal.ring
    if f.is_zero():
        return Ideal(ring, [ring.one])
    ext = PolyRing(ring.domain, ("_t",) + ring.names)

    def lift(g: Poly, tdeg: int = 0) -> Poly:
        return ext.from_dict({(tdeg,) + m: c for m, c in g.terms.items()})

    gens = [lift(g, 1) for g in ideal.generators]
    gens.append(lift(f) - lift(f, 1))
    elim = Ideal(ext, gens, key=_block1)
    inter = [ring.from_dict({m[1:]: c for m, c in g.terms.items()}) for g in elim.groebner if all(m[0] == 0 for m in g.terms)]
    return Ideal(ring, [divide_exact(h, f) for h in inter])


def _block1(m: Mono):
    return (m[0], grevlex_key(m[1:]))
