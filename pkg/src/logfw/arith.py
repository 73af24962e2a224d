"""Exact coefficient domains and the divided-power polynomials P, P_n.

Every domain object is an immutable value with hashable elements.  Domains
share a small duck-typed interface (``add``, ``mul``, ``neg``, ``inv``,
``frobenius``, ``from_int``, ``is_zero`` ...), so polynomial code never has to
know which coefficient model it is running over.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InputError, NonLiftableCoefficient


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Prime(int):
    """An int that is known to be prime."""

    def __new__(cls, p: int):
        if isinstance(p, bool) or not isinstance(p, int) or not is_prime(p):
            raise InputError(f"{p!r} is not a prime")
        return super().__new__(cls, p)


def valuation(n: int, p: int) -> int:
    if n == 0:
        return math.inf  # type: ignore[return-value]
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


# ---------------------------------------------------------------- prime fields


@dataclass(frozen=True)
class PrimeField:
    p: int
    is_field = True

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def order(self) -> int:
        return self.p

    zero = 0
    one = 1

    def from_int(self, n: int) -> int:
        return n % self.p

    def from_fraction(self, x: Fraction) -> int:
        if x.denominator % self.p == 0:
            raise InputError(f"{x} has no image in F_{self.p}")
        return x.numerator * pow(x.denominator, -1, self.p) % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, -1, self.p)

    def pow(self, a: int, n: int) -> int:
        return pow(a, n, self.p)

    def is_zero(self, a: int) -> bool:
        return a == 0

    def is_unit(self, a: int) -> bool:
        return a != 0

    def frobenius(self, a: int) -> int:
        return a

    def pth_root(self, a: int) -> int:
        return a

    def lift_p2(self, a: int) -> int:
        return a

    def elements(self) -> list[int]:
        return list(range(self.p))

    def format(self, a: int) -> str:
        return str(a)

    def to_json(self, a: int):
        return a

    def symbols(self) -> dict:
        return {}

    def __str__(self) -> str:
        return f"F_{self.p}"


# -------------------------------------------------------- finite fields F_{p^m}

# Conway polynomials, coefficients listed from the constant term up (monic).
CONWAY = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (7, 2): (3, 6, 1),
}


def _poly_mulmod(a, b, g, p):
    m = len(g) - 1
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    for k in range(len(out) - 1, m - 1, -1):
        c = out[k]
        if c:
            for i in range(m + 1):
                out[k - m + i] = (out[k - m + i] - c * g[i]) % p
    return (out + [0] * m)[:m]


def _is_irreducible(g: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= m/2 (tiny sizes only)."""
    m = len(g) - 1
    for d in range(1, m // 2 + 1):
        for code in range(p**d):
            h = [(code // p**i) % p for i in range(d)] + [1]
            r = list(g)
            while len(r) - 1 >= d:
                c = r[-1]
                shift = len(r) - 1 - d
                for i in range(d + 1):
                    r[shift + i] = (r[shift + i] - c * h[i]) % p
                r.pop()
            if not any(r):
                return False
    return True


def find_irreducible(p: int, m: int) -> tuple[int, ...]:
    if (p, m) in CONWAY:
        return CONWAY[(p, m)]
    for code in range(p**m):
        g = tuple((code // p**i) % p for i in range(m)) + (1,)
        if g[0] and _is_irreducible(g, p):
            return g
    raise InputError(f"no irreducible polynomial of degree {m} over F_{p}")


@dataclass(frozen=True)
class GaloisField:
    """F_{p^m} = F_p[z]/(g); element ``c`` encodes sum c_i z^i via base-p digits."""

    p: int
    m: int
    modulus: tuple[int, ...] = field(default=(), compare=False)
    is_field = True

    def __post_init__(self):
        if self.m < 2:
            raise InputError("use PrimeField for m = 1")
        if not self.modulus:
            object.__setattr__(self, "modulus", find_irreducible(self.p, self.m))
        q = self.p**self.m
        vecs = [self._digits(c) for c in range(q)]
        mul = [[self._code(_poly_mulmod(vecs[a], vecs[b], self.modulus, self.p)) for b in range(q)] for a in range(q)]
        add = [[self._code([(x + y) % self.p for x, y in zip(vecs[a], vecs[b])]) for b in range(q)] for a in range(q)]
        object.__setattr__(self, "_mul", mul)
        object.__setattr__(self, "_add", add)
        object.__setattr__(self, "_neg", [self._code([-x % self.p for x in v]) for v in vecs])
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if mul[a][b] == 1:
                    inv[a] = b
                    break
        object.__setattr__(self, "_inv", inv)

    def _digits(self, c: int) -> list[int]:
        return [(c // self.p**i) % self.p for i in range(self.m)]

    def _code(self, v) -> int:
        return sum(x * self.p**i for i, x in enumerate(v))

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def order(self) -> int:
        return self.p**self.m

    zero = 0
    one = 1

    @property
    def generator(self) -> int:
        return self.p  # the class of z

    def from_int(self, n: int) -> int:
        return n % self.p

    def from_fraction(self, x: Fraction) -> int:
        return self.mul(self.from_int(x.numerator), self.inv(self.from_int(x.denominator)))

    def add(self, a, b):
        return self._add[a][b]

    def sub(self, a, b):
        return self._add[a][self._neg[b]]

    def neg(self, a):
        return self._neg[a]

    def mul(self, a, b):
        return self._mul[a][b]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return self._inv[a]

    def pow(self, a, n):
        result, base = 1, a
        if n < 0:
            base, n = self.inv(a), -n
        while n:
            if n & 1:
                result = self._mul[result][base]
            base = self._mul[base][base]
            n >>= 1
        return result

    def is_zero(self, a) -> bool:
        return a == 0

    def is_unit(self, a) -> bool:
        return a != 0

    def frobenius(self, a):
        return self.pow(a, self.p)

    def pth_root(self, a):
        return self.pow(a, self.p ** (self.m - 1))

    def lift_p2(self, a):
        if a < self.p:
            return a
        raise NonLiftableCoefficient(f"{self.format(a)} in {self} has no canonical lift mod p^2")

    def elements(self) -> list[int]:
        return list(range(self.order))

    def digits(self, a) -> list[int]:
        return self._digits(a)

    def from_digits(self, v) -> int:
        return self._code([x % self.p for x in v])

    def format(self, a) -> str:
        parts = []
        for i, c in reversed(list(enumerate(self._digits(a)))):
            if c == 0:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if not mono:
                parts.append(str(c))
            else:
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts) if parts else "0"

    def to_json(self, a):
        return self.format(a)

    def symbols(self) -> dict:
        return {"z": self.generator}

    def __str__(self) -> str:
        return f"F_{self.p}^{self.m}"


# ------------------------------------------------- rational function fields F_p(t)

Mono = tuple[int, ...]


def _mp_add(a: dict, b: dict, p: int) -> dict:
    out = dict(a)
    for m, c in b.items():
        v = (out.get(m, 0) + c) % p
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _mp_scale(a: dict, c: int, p: int) -> dict:
    c %= p
    if c == 0:
        return {}
    return {m: v * c % p for m, v in a.items()}


def _mp_mul(a: dict, b: dict, p: int) -> dict:
    out: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            out[m] = (out.get(m, 0) + c1 * c2) % p
    return {m: c for m, c in out.items() if c}


def _mp_divexact(a: dict, b: dict, p: int) -> dict:
    """Exact division in F_p[t] (lex long division); raises if not exact."""
    lm_b = max(b)
    inv_lc = pow(b[lm_b], -1, p)
    q: dict = {}
    r = dict(a)
    while r:
        lm = max(r)
        if any(x < y for x, y in zip(lm, lm_b)):
            raise ArithmeticError("inexact polynomial division")
        mono = tuple(x - y for x, y in zip(lm, lm_b))
        c = r[lm] * inv_lc % p
        q[mono] = c
        r = _mp_add(r, _mp_scale(_mp_mul({mono: 1}, b, p), -c, p), p)
    return q


def _dense_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    def trim(v):
        while v and v[-1] == 0:
            v.pop()
        return v

    a, b = trim(list(a)), trim(list(b))
    while b:
        inv = pow(b[-1], -1, p)
        while len(a) >= len(b) and a:
            c = a[-1] * inv % p
            s = len(a) - len(b)
            for i, y in enumerate(b):
                a[s + i] = (a[s + i] - c * y) % p
            trim(a)
        a, b = b, a
    return a


@functools.lru_cache(maxsize=None)
def _sympy_ring(p: int, r: int):
    from sympy.polys.domains import GF
    from sympy.polys.orderings import lex
    from sympy.polys.rings import ring

    names = ",".join(f"_t{j}" for j in range(r))
    R, *_ = ring(names, GF(p), lex)
    return R


def _mp_gcd(a: dict, b: dict, p: int, r: int) -> dict:
    if not a:
        return b
    if not b:
        return a
    if r == 1:
        da = [0] * (max(m[0] for m in a) + 1)
        for m, c in a.items():
            da[m[0]] = c
        db = [0] * (max(m[0] for m in b) + 1)
        for m, c in b.items():
            db[m[0]] = c
        g = _dense_gcd(da, db, p)
        return {(i,): c for i, c in enumerate(g) if c}
    R = _sympy_ring(p, r)
    g = R.from_dict(dict(a)).gcd(R.from_dict(dict(b)))
    return {tuple(m): int(c) % p for m, c in g.items() if int(c) % p}


class RatFunc:
    """Reduced fraction num/den over F_p[t_1..t_r] with monic (lex) denominator."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: tuple, den: tuple):
        self.num = num
        self.den = den
        self._hash = hash((num, den))

    def __eq__(self, other):
        return isinstance(other, RatFunc) and self.num == other.num and self.den == other.den

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"RatFunc({self.num!r}, {self.den!r})"


@dataclass(frozen=True)
class RationalFunctionField:
    """F_p(t_1, ..., t_r), r <= 3."""

    p: int
    r: int
    is_field = True

    def __post_init__(self):
        if not 1 <= self.r <= 3:
            raise InputError("rational function fields support 1 <= r <= 3")

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def names(self) -> tuple[str, ...]:
        return ("t",) if self.r == 1 else tuple(f"t{j + 1}" for j in range(self.r))

    def _unit(self) -> Mono:
        return (0,) * self.r

    def make(self, num: dict, den: dict | None = None) -> RatFunc:
        p = self.p
        if den is None:
            den = {self._unit(): 1}
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return RatFunc((), ((self._unit(), 1),))
        g = _mp_gcd(num, den, p, self.r)
        if len(g) != 1 or max(g) != self._unit():
            num = _mp_divexact(num, g, p)
            den = _mp_divexact(den, g, p)
        lc = den[max(den)]
        if lc != 1:
            inv = pow(lc, -1, p)
            num = _mp_scale(num, inv, p)
            den = _mp_scale(den, inv, p)
        return RatFunc(tuple(sorted(num.items())), tuple(sorted(den.items())))

    @property
    def zero(self) -> RatFunc:
        return RatFunc((), ((self._unit(), 1),))

    @property
    def one(self) -> RatFunc:
        return RatFunc(((self._unit(), 1),), ((self._unit(), 1),))

    def gen(self, j: int) -> RatFunc:
        e = [0] * self.r
        e[j] = 1
        return RatFunc(((tuple(e), 1),), ((self._unit(), 1),))

    def from_int(self, n: int) -> RatFunc:
        n %= self.p
        return self.make({self._unit(): n}) if n else self.zero

    def from_fraction(self, x: Fraction) -> RatFunc:
        return self.mul(self.from_int(x.numerator), self.inv(self.from_int(x.denominator)))

    def _parts(self, a: RatFunc):
        return dict(a.num), dict(a.den)

    def add(self, a: RatFunc, b: RatFunc) -> RatFunc:
        p = self.p
        if not a.num:
            return b
        if not b.num:
            return a
        if a.den == b.den:
            return self.make(_mp_add(dict(a.num), dict(b.num), p), dict(a.den))
        an, ad = self._parts(a)
        bn, bd = self._parts(b)
        return self.make(_mp_add(_mp_mul(an, bd, p), _mp_mul(bn, ad, p), p), _mp_mul(ad, bd, p))

    def neg(self, a: RatFunc) -> RatFunc:
        return RatFunc(tuple((m, -c % self.p) for m, c in a.num), a.den)

    def sub(self, a: RatFunc, b: RatFunc) -> RatFunc:
        return self.add(a, self.neg(b))

    def mul(self, a: RatFunc, b: RatFunc) -> RatFunc:
        if not a.num or not b.num:
            return self.zero
        p = self.p
        an, ad = self._parts(a)
        bn, bd = self._parts(b)
        # both inputs are reduced, so cancelling crosswise leaves a reduced product
        g1, g2 = _mp_gcd(an, bd, p, self.r), _mp_gcd(bn, ad, p, self.r)
        an, bd = _mp_divexact(an, g1, p), _mp_divexact(bd, g1, p)
        bn, ad = _mp_divexact(bn, g2, p), _mp_divexact(ad, g2, p)
        return self._monic(_mp_mul(an, bn, p), _mp_mul(ad, bd, p))

    def _monic(self, num: dict, den: dict) -> RatFunc:
        lc = den[max(den)]
        if lc != 1:
            inv = pow(lc, -1, self.p)
            num, den = _mp_scale(num, inv, self.p), _mp_scale(den, inv, self.p)
        return RatFunc(tuple(sorted(num.items())), tuple(sorted(den.items())))

    def inv(self, a: RatFunc) -> RatFunc:
        if not a.num:
            raise ZeroDivisionError("inverse of 0")
        return self.make(dict(a.den), dict(a.num))

    def pow(self, a: RatFunc, n: int) -> RatFunc:
        if n < 0:
            a, n = self.inv(a), -n
        if not a.num:
            return self.one if n == 0 else self.zero
        # powers of coprime polynomials stay coprime
        num, den = self._parts(a)
        rn, rd = {self._unit(): 1}, {self._unit(): 1}
        while n:
            if n & 1:
                rn, rd = _mp_mul(rn, num, self.p), _mp_mul(rd, den, self.p)
            num, den = _mp_mul(num, num, self.p), _mp_mul(den, den, self.p)
            n >>= 1
        return self._monic(rn, rd)

    def is_zero(self, a: RatFunc) -> bool:
        return not a.num

    def is_unit(self, a: RatFunc) -> bool:
        return bool(a.num)

    def frobenius(self, a: RatFunc) -> RatFunc:
        # (sum c t^m)^p = sum c t^(pm) in characteristic p; stays reduced and monic
        p = self.p
        return RatFunc(
            tuple((tuple(e * p for e in m), c) for m, c in a.num),
            tuple((tuple(e * p for e in m), c) for m, c in a.den),
        )

    def pth_root(self, a: RatFunc) -> RatFunc | None:
        p = self.p
        if any(e % p for m, _ in a.num + a.den for e in m):
            return None
        return RatFunc(
            tuple((tuple(e // p for e in m), c) for m, c in a.num),
            tuple((tuple(e // p for e in m), c) for m, c in a.den),
        )

    def _mp_diff(self, a: dict, j: int) -> dict:
        out = {}
        for m, c in a.items():
            if m[j] and (m[j] * c) % self.p:
                e = list(m)
                e[j] -= 1
                out[tuple(e)] = m[j] * c % self.p
        return out

    def diff(self, a: RatFunc, j: int) -> RatFunc:
        p = self.p
        n, d = self._parts(a)
        top = _mp_add(_mp_mul(self._mp_diff(n, j), d, p), _mp_scale(_mp_mul(n, self._mp_diff(d, j), p), -1, p), p)
        return self.make(top, _mp_mul(d, d, p))

    def lift_p2(self, a):
        raise NonLiftableCoefficient("F_p(t) has no canonical lift mod p^2")

    def _fmt_poly(self, terms) -> str:
        parts = []
        for m, c in sorted(terms, reverse=True):
            mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(self.names, m) if e)
            if not mono:
                parts.append(str(c))
            else:
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts) if parts else "0"

    def format(self, a: RatFunc) -> str:
        num = self._fmt_poly(a.num)
        if a.den == ((self._unit(), 1),):
            return num
        den = self._fmt_poly(a.den)
        if len(a.num) > 1:
            num = f"({num})"
        if len(a.den) > 1:
            den = f"({den})"
        return f"{num}/{den}"

    def to_json(self, a):
        return self.format(a)

    def symbols(self) -> dict:
        return {n: self.gen(j) for j, n in enumerate(self.names)}

    def __str__(self) -> str:
        return f"F_{self.p}({','.join(self.names)})"


# ---------------------------------------------------- characteristic 0 domains


@dataclass(frozen=True)
class RationalField:
    is_field = True
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def from_fraction(self, x: Fraction) -> Fraction:
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return 1 / Fraction(a)

    def pow(self, a, n):
        return Fraction(a) ** n

    def is_zero(self, a) -> bool:
        return a == 0

    def is_unit(self, a) -> bool:
        return a != 0

    def format(self, a) -> str:
        return str(a)

    def to_json(self, a):
        return str(a)

    def symbols(self) -> dict:
        return {}

    def __str__(self) -> str:
        return "Q"


@dataclass(frozen=True)
class PLocalRing:
    """Z_(p): rationals whose denominator is prime to p.  A DVR, not a field."""

    p: int
    is_field = False
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def from_fraction(self, x: Fraction) -> Fraction:
        x = Fraction(x)
        if x.denominator % self.p == 0:
            raise InputError(f"{x} is not in Z_({self.p})")
        return x

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def valuation(self, a) -> int:
        return valuation(Fraction(a).numerator, self.p)

    def is_unit(self, a) -> bool:
        return a != 0 and Fraction(a).numerator % self.p != 0

    def inv(self, a):
        if not self.is_unit(a):
            raise ZeroDivisionError(f"{a} is not a unit of Z_({self.p})")
        return 1 / Fraction(a)

    def divide(self, a, b):
        """a/b if it lies in Z_(p), else None."""
        if b == 0:
            return None
        q = Fraction(a) / Fraction(b)
        return q if q.denominator % self.p else None

    def pow(self, a, n):
        return Fraction(a) ** n

    def is_zero(self, a) -> bool:
        return a == 0

    def residue(self, a) -> int:
        a = Fraction(a)
        return a.numerator * pow(a.denominator, -1, self.p) % self.p

    def lift_p2(self, a) -> int:
        a = Fraction(a)
        q = self.p * self.p
        return a.numerator * pow(a.denominator, -1, q) % q

    def format(self, a) -> str:
        return str(a)

    def to_json(self, a):
        return str(a)

    def symbols(self) -> dict:
        return {}

    def __str__(self) -> str:
        return f"Z_({self.p})"


@dataclass(frozen=True)
class ZModP2:
    """Z/p^2, the canonical lift target; elements are ints in [0, p^2)."""

    p: int
    is_field = False

    @property
    def modulus(self) -> int:
        return self.p * self.p

    @property
    def characteristic(self) -> int:
        return self.modulus

    zero = 0
    one = 1

    def from_int(self, n: int) -> int:
        return n % self.modulus

    def add(self, a, b):
        return (a + b) % self.modulus

    def sub(self, a, b):
        return (a - b) % self.modulus

    def neg(self, a):
        return -a % self.modulus

    def mul(self, a, b):
        return a * b % self.modulus

    def pow(self, a, n):
        return pow(a, n, self.modulus)

    def is_zero(self, a) -> bool:
        return a % self.modulus == 0

    def is_unit(self, a) -> bool:
        return a % self.p != 0

    def inv(self, a):
        return pow(a, -1, self.modulus)

    def lift_p2(self, a) -> int:
        return a % self.modulus

    def divide_by_p(self, a) -> int:
        """Exact division of a multiple of p, landing in F_p."""
        if a % self.p:
            raise ArithmeticError(f"{a} is not divisible by {self.p}")
        return (a // self.p) % self.p

    def format(self, a) -> str:
        return str(a)

    def to_json(self, a):
        return a

    def symbols(self) -> dict:
        return {}

    def __str__(self) -> str:
        return f"Z/{self.modulus}"


# ------------------------------------------------------------- P and P_n


def _lift_scalar(x, p: int) -> int:
    q = p * p
    if isinstance(x, bool):
        raise NonLiftableCoefficient("booleans are not ring elements")
    if isinstance(x, int):
        return x % q
    if isinstance(x, Fraction):
        if x.denominator % p == 0:
            raise NonLiftableCoefficient(f"{x} is not p-integral")
        return x.numerator * pow(x.denominator, -1, q) % q
    raise NonLiftableCoefficient(f"cannot lift {type(x).__name__} to Z/p^2")


def _dict_mul_mod(a: dict, b: dict, q: int) -> dict:
    out: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            out[m] = (out.get(m, 0) + c1 * c2) % q
    return {m: c for m, c in out.items() if c}


def _dict_pow_mod(a: dict, n: int, q: int, unit: tuple) -> dict:
    result = {unit: 1}
    base = a
    while n:
        if n & 1:
            result = _dict_mul_mod(result, base, q)
        base = _dict_mul_mod(base, base, q)
        n >>= 1
    return result


def p_sum_correction(values: Sequence, p: int):
    """P_n(values) = ((sum v)^p - sum v^p) / p, reduced to characteristic p.

    Scalars (int, Fraction in Z_(p)) give an int in [0, p).  Polynomials
    (``logfw.poly.Poly``) give a polynomial over F_p; their coefficients must
    admit a canonical lift to Z/p^2 (F_p, Z/p^2, Z_(p)).
    """
    p = int(Prime(p))
    q = p * p
    values = list(values)
    if not values:
        return 0
    if all(not hasattr(v, "terms") for v in values):
        lifted = [_lift_scalar(v, p) for v in values]
        total = pow(sum(lifted), p, q) - sum(pow(v, p, q) for v in lifted)
        return ZModP2(p).divide_by_p(total % q)
    ring = next(v.ring for v in values if hasattr(v, "terms"))
    unit = (0,) * ring.nvars
    lifts = []
    for v in values:
        if hasattr(v, "terms"):
            lifts.append({m: ring.domain.lift_p2(c) % q for m, c in v.terms.items()})
        else:
            lifts.append({unit: _lift_scalar(v, p)})
    total: dict = {}
    for d in lifts:
        for m, c in d.items():
            total[m] = (total.get(m, 0) + c) % q
    acc = _dict_pow_mod({m: c for m, c in total.items() if c}, p, q, unit)
    for d in lifts:
        for m, c in _dict_pow_mod(d, p, q, unit).items():
            acc[m] = (acc.get(m, 0) - c) % q
    target = ring.with_domain(PrimeField(p))
    zp2 = ZModP2(p)
    return target.from_dict({m: zp2.divide_by_p(c) for m, c in acc.items() if c})


def divided_binomial_sum(a, b, p: int):
    """P(a, b) = sum_{0<i<p} (C(p,i)/p) a^i b^(p-i), evaluated with the ring's own operators."""
    total = None
    for i in range(1, p):
        term = (math.comb(p, i) // p) * (a**i) * (b ** (p - i))
        total = term if total is None else total + term
    return 0 * a if total is None else total


def fermat_quotient(n: int, p: int) -> int:
    """q_p(n) = (n^p - n)/p mod p, exact for any integer n."""
    p = int(p)
    q = p * p
    return ((pow(n, p, q) - n) % q) // p % p


def coeff_fw_value(c, domain) -> dict:
    """Expansion of w(c) for a base coefficient c.

    Keys: ``"p"`` for the w(p) component (Z_(p)), ``j`` for the w(t_j)
    component (F_p(t)); values are residue-field elements.  Finite fields and
    F_p give the empty expansion.
    """
    if isinstance(domain, PLocalRing):
        p = domain.p
        c = Fraction(c)
        a, b = c.numerator, c.denominator
        # w(n) = -q(n) w(p) on Z, then the quotient rule for a/b
        num = (-pow(b, p, p) * fermat_quotient(a, p) + pow(a, p, p) * fermat_quotient(b, p)) % p
        coef = num * pow(pow(b, 2 * p, p), -1, p) % p
        return {"p": coef} if coef else {}
    if isinstance(domain, RationalFunctionField):
        out = {}
        for j in range(domain.r):
            d = domain.diff(c, j)
            if not domain.is_zero(d):
                out[j] = domain.frobenius(d)
        return out
    if isinstance(domain, (PrimeField, GaloisField)):
        return {}
    raise InputError(f"no FW value defined over {domain}")
