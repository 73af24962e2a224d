"""Integer lattice kernels: Hermite and Smith normal forms, kernels, integer solves."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = list[list[int]]


def _copy(rows: Sequence[Sequence[int]]) -> Matrix:
    return [list(map(int, r)) for r in rows]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(rows: Sequence[Sequence[int]]) -> Matrix:
    return [list(c) for c in zip(*rows)] if rows else []


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(r, c)) for c in bt] for r in a]


def vecmat(v: Sequence[int], rows: Sequence[Sequence[int]]) -> list[int]:
    if not rows:
        return []
    return [sum(c * r[j] for c, r in zip(v, rows)) for j in range(len(rows[0]))]


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, x)
    return tuple(v) if g in (0, 1) else tuple(x // g for x in v)


def hnf_with_transform(rows: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, list[int]]:
    """Row-style Hermite normal form.

    Returns (H, U, pivots) with H = U * rows, U unimodular, H in row echelon
    form with positive pivots and entries above each pivot reduced into
    [0, pivot).  Zero rows of H are kept at the bottom.
    """
    a = _copy(rows)
    m = len(a)
    n = len(a[0]) if m else 0
    u = identity(m)
    pivots: list[int] = []
    r = 0
    for col in range(n):
        if r == m:
            break
        # Euclid down the column until a single nonzero entry remains at row r
        while True:
            nz = [i for i in range(r, m) if a[i][col] != 0]
            if not nz:
                break
            k = min(nz, key=lambda i: abs(a[i][col]))
            a[r], a[k] = a[k], a[r]
            u[r], u[k] = u[k], u[r]
            done = True
            for i in range(r + 1, m):
                if a[i][col]:
                    q = a[i][col] // a[r][col]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if a[i][col]:
                        done = False
            if done:
                break
        if r < m and a[r][col] != 0:
            if a[r][col] < 0:
                a[r] = [-x for x in a[r]]
                u[r] = [-x for x in u[r]]
            for i in range(r):
                q = a[i][col] // a[r][col]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
            pivots.append(col)
            r += 1
    return a, u, pivots


def hnf(rows: Sequence[Sequence[int]]) -> Matrix:
    """Nonzero rows of the Hermite normal form (a canonical lattice basis)."""
    h, _, pivots = hnf_with_transform(rows)
    return [list(r) for r in h[: len(pivots)]]


def rank(rows: Sequence[Sequence[int]]) -> int:
    return len(hnf_with_transform(rows)[2]) if rows else 0


def left_kernel(rows: Sequence[Sequence[int]]) -> Matrix:
    """HNF basis of {u in Z^m : u * rows = 0}."""
    m = len(rows)
    if m == 0:
        return []
    _, u, pivots = hnf_with_transform(rows)
    kernel = [u[i] for i in range(len(pivots), m)]
    return hnf(kernel) if kernel else []


def right_kernel(rows: Sequence[Sequence[int]]) -> Matrix:
    """HNF basis of {v : rows * v = 0}, as rows."""
    if not rows:
        return []
    return left_kernel(transpose(rows))


def solve_integer(rows: Sequence[Sequence[int]], v: Sequence[int]) -> list[int] | None:
    """An integer c with c * rows = v, or None."""
    m = len(rows)
    if m == 0:
        return [] if not any(v) else None
    h, u, pivots = hnf_with_transform(rows)
    residual = list(v)
    coeffs = [0] * m
    for i, col in enumerate(pivots):
        if residual[col] % h[i][col]:
            return None
        q = residual[col] // h[i][col]
        coeffs[i] = q
        residual = [x - q * y for x, y in zip(residual, h[i])]
    if any(residual):
        return None
    return vecmat(coeffs, u)


def in_lattice(rows: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    return solve_integer(rows, v) is not None


def smith_normal_form(a: Sequence[Sequence[int]]) -> tuple[list[int], Matrix, Matrix]:
    """(diag, U, V) with U * a * V = D, U and V unimodular, d_1 | d_2 | ... ."""
    a = _copy(a)
    m = len(a)
    n = len(a[0]) if m else 0
    u = identity(m)
    v = identity(n)
    t = 0
    while t < min(m, n):
        nz = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        a[t], a[i] = a[i], a[t]
        u[t], u[i] = u[i], u[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        for row in v:
            row[t], row[j] = row[j], row[t]
        changed = True
        while changed:
            changed = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[t])]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        u[t], u[i] = u[i], u[t]
                        changed = True
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    for row in a:
                        row[j] -= q * row[t]
                    for row in v:
                        row[j] -= q * row[t]
                    if a[t][j]:
                        for row in a:
                            row[t], row[j] = row[j], row[t]
                        for row in v:
                            row[t], row[j] = row[j], row[t]
                        changed = True
            if not changed:
                # enforce divisibility of the remaining block by the pivot
                bad = [(i, j) for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % a[t][t]]
                if bad:
                    i, _ = bad[0]
                    a[t] = [x + y for x, y in zip(a[t], a[i])]
                    u[t] = [x + y for x, y in zip(u[t], u[i])]
                    changed = True
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    diag = [a[i][i] for i in range(min(m, n)) if a[i][i]]
    return diag, u, v


def invert_rational(a: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next(i for i in range(col, n) if aug[i][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    return [row[n:] for row in aug]


def rational_rank(rows: Sequence[Sequence]) -> int:
    a = [[Fraction(x) for x in r] for r in rows]
    rk = 0
    ncols = len(a[0]) if a else 0
    for col in range(ncols):
        piv = next((i for i in range(rk, len(a)) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[rk], a[piv] = a[piv], a[rk]
        for i in range(rk + 1, len(a)):
            if a[i][col]:
                f = a[i][col] / a[rk][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[rk])]
        rk += 1
    return rk
