"""Sparse multivariate polynomials over the coefficient domains of ``arith``."""

from __future__ import annotations

import ast
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .errors import InputError

Mono = tuple[int, ...]


def grevlex_key(m: Mono):
    """Sort key realizing graded reverse lexicographic order (larger is bigger)."""
    return (sum(m), tuple(-e for e in reversed(m)))


def block_key(k: int) -> Callable[[Mono], tuple]:
    """Elimination order: grevlex on the first k variables, ties broken by grevlex on the rest."""

    def key(m: Mono):
        return (grevlex_key(m[:k]), grevlex_key(m[k:]))

    return key


@dataclass(frozen=True)
class PolyRing:
    domain: object
    names: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != len(self.names):
            raise InputError(f"duplicate variable names in {self.names}")

    @property
    def nvars(self) -> int:
        return len(self.names)

    def with_domain(self, domain) -> "PolyRing":
        return PolyRing(domain, self.names)

    def from_dict(self, terms: Mapping[Mono, object]) -> "Poly":
        d = self.domain
        return Poly(self, {m: c for m, c in terms.items() if not d.is_zero(c)})

    def const(self, c) -> "Poly":
        if self.domain.is_zero(c):
            return self.zero
        return Poly(self, {(0,) * self.nvars: c})

    def from_int(self, n: int) -> "Poly":
        return self.const(self.domain.from_int(n))

    @property
    def zero(self) -> "Poly":
        return Poly(self, {})

    @property
    def one(self) -> "Poly":
        return self.const(self.domain.one)

    def monomial(self, m: Mono, c=None) -> "Poly":
        return self.from_dict({tuple(m): self.domain.one if c is None else c})

    def gen(self, i: int) -> "Poly":
        e = [0] * self.nvars
        e[i] = 1
        return self.monomial(tuple(e))

    @property
    def gens(self) -> list["Poly"]:
        return [self.gen(i) for i in range(self.nvars)]

    def parse(self, text: str) -> "Poly":
        return parse_poly(self, text)

    def __str__(self) -> str:
        return f"{self.domain}[{', '.join(self.names)}]"


class Poly:
    """Immutable polynomial; ``terms`` maps exponent tuples to nonzero coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- basic protocol
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, int):
            return self == self.ring.from_int(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise TypeError(f"mixing {self.ring} and {other.ring}")
            return other
        if isinstance(other, int):
            return self.ring.from_int(other)
        if isinstance(other, Fraction):
            return self.ring.const(self.ring.domain.from_fraction(other))
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        d = self.ring.domain
        out = dict(self.terms)
        for m, c in other.terms.items():
            if m in out:
                v = d.add(out[m], c)
                if d.is_zero(v):
                    del out[m]
                else:
                    out[m] = v
            else:
                out[m] = c
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        d = self.ring.domain
        return Poly(self.ring, {m: d.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        d = self.ring.domain
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                c = d.mul(c1, c2)
                out[m] = d.add(out[m], c) if m in out else c
        return Poly(self.ring, {m: c for m, c in out.items() if not d.is_zero(c)})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = self.ring.one, self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> "Poly":
        d = self.ring.domain
        if d.is_zero(c):
            return self.ring.zero
        return Poly(self.ring, {m: v for m, v in ((m, d.mul(c, v)) for m, v in self.terms.items()) if not d.is_zero(v)})

    def mul_term(self, mono: Mono, c) -> "Poly":
        d = self.ring.domain
        out = {}
        for m, v in self.terms.items():
            w = d.mul(c, v)
            if not d.is_zero(w):
                out[tuple(x + y for x, y in zip(m, mono))] = w
        return Poly(self.ring, out)

    # -- structure
    def leading(self, key=grevlex_key) -> tuple[Mono, object]:
        m = max(self.terms, key=key)
        return m, self.terms[m]

    def sorted_terms(self, key=grevlex_key) -> list[tuple[Mono, object]]:
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.domain.zero)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def linear_coefficient(self, i: int):
        e = [0] * self.ring.nvars
        e[i] = 1
        return self.terms.get(tuple(e), self.ring.domain.zero)

    def map_coefficients(self, f, ring: PolyRing) -> "Poly":
        return ring.from_dict({m: f(c) for m, c in self.terms.items()})

    def diff(self, i: int) -> "Poly":
        d = self.ring.domain
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                e = list(m)
                e[i] -= 1
                v = d.mul(d.from_int(m[i]), c)
                if not d.is_zero(v):
                    out[tuple(e)] = v
        return Poly(self.ring, out)

    def frobenius(self) -> "Poly":
        """f^p in characteristic p, computed termwise."""
        d = self.ring.domain
        p = d.characteristic
        return Poly(self.ring, {tuple(e * p for e in m): d.frobenius(c) for m, c in self.terms.items()})

    def evaluate(self, point: Sequence):
        d = self.ring.domain
        acc = d.zero
        for m, c in self.terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v = d.mul(v, d.pow(x, e))
            acc = d.add(acc, v)
        return acc

    def shift(self, point: Sequence) -> "Poly":
        """Substitute x_i -> x_i + a_i."""
        if all(self.ring.domain.is_zero(a) for a in point):
            return self
        ring = self.ring
        shifted = [ring.gen(i) + ring.const(a) for i, a in enumerate(point)]
        powers: dict = {}
        acc = ring.zero
        for m, c in self.terms.items():
            term = ring.const(c)
            for i, e in enumerate(m):
                if e:
                    key = (i, e)
                    if key not in powers:
                        powers[key] = shifted[i] ** e
                    term = term * powers[key]
            acc = acc + term
        return acc

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        d = self.ring.domain
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(self.ring.names, m) if e)
            cs = d.format(c)
            if " " in cs:
                cs = f"({cs})"
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            else:
                parts.append(f"{cs}*{mono}")
        out = parts[0]
        for part in parts[1:]:
            out += f" - {part[1:]}" if part.startswith("-") else f" + {part}"
        return out

    def __repr__(self) -> str:
        return f"Poly({self})"


# ----------------------------------------------------------------- parser

_ALLOWED = (
    ast.Expression, ast.BinOp, ast.UnaryOp, ast.Add, ast.Sub, ast.Mult, ast.Div,
    ast.Pow, ast.USub, ast.UAdd, ast.Name, ast.Load, ast.Constant,
)


def parse_poly(ring: PolyRing, text: str) -> Poly:
    """Parse ``x^2*y - 3*z + t`` style input.

    Names are ring variables or base symbols (``z`` for F_q, ``t``/``t1``.. for
    F_p(t)).  Division is allowed only by nonzero constants.
    """
    if not isinstance(text, (str, int)):
        raise InputError(f"expected a polynomial string, got {text!r}")
    src = str(text).replace("^", "**")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise InputError(f"cannot parse {text!r}: {exc.msg}") from None
    for node in ast.walk(tree):
        if not isinstance(node, _ALLOWED):
            raise InputError(f"unsupported syntax {type(node).__name__} in {text!r}")
    symbols = dict(ring.domain.symbols())
    variables = {n: ring.gen(i) for i, n in enumerate(ring.names)}
    clash = set(symbols) & set(variables)
    if clash:
        raise InputError(f"variable names {sorted(clash)} clash with base symbols")

    def ev(node) -> Poly:
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant):
            if isinstance(node.value, bool) or not isinstance(node.value, int):
                raise InputError(f"only integer literals are allowed in {text!r}")
            return ring.from_int(node.value)
        if isinstance(node, ast.Name):
            if node.id in variables:
                return variables[node.id]
            if node.id in symbols:
                return ring.const(symbols[node.id])
            raise InputError(f"unknown symbol {node.id!r} in {text!r}")
        if isinstance(node, ast.UnaryOp):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                exponent = _const_int(node.right, text)
                if exponent < 0:
                    raise InputError(f"negative exponent in {text!r}")
                return ev(node.left) ** exponent
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                if not b.is_constant() or b.is_zero():
                    raise InputError(f"division by a non-constant or zero in {text!r}")
                try:
                    inv = ring.domain.inv(b.constant_term())
                except ZeroDivisionError:
                    raise InputError(f"division by a non-unit in {text!r}") from None
                return a.scale(inv)
        raise InputError(f"unsupported expression in {text!r}")

    return ev(tree)


def _const_int(node, text) -> int:
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return node.value
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_const_int(node.operand, text)
    raise InputError(f"exponents must be integer literals in {text!r}")


def parse_coefficient(domain, text) -> object:
    """Parse a base-coefficient literal such as ``3``, ``z+1`` or ``1/t``."""
    ring = PolyRing(domain, ())
    f = parse_poly(ring, text)
    return f.constant_term()
