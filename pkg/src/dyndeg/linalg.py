"""Exact integer matrix helpers and polynomial root moduli.

Matrices are plain tuples of tuples of Python ints so that entries never
overflow. Only the numerics of root finding go through mpmath.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

import mpmath
import sympy
from mpmath.libmp import NoConvergence

IntMatrix = tuple[tuple[int, ...], ...]


def as_matrix(rows: Sequence[Sequence[int]]) -> IntMatrix:
    m = tuple(tuple(int(x) for x in row) for row in rows)
    if not m or any(len(row) != len(m) for row in m):
        raise ValueError("expected a nonempty square matrix")
    return m


def identity(k: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(k)) for i in range(k))


def matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def matpow(a: IntMatrix, n: int) -> IntMatrix:
    if n < 0:
        raise ValueError("negative matrix power")
    result = identity(len(a))
    base = a
    while n:
        if n & 1:
            result = matmul(result, base)
        n >>= 1
        if n:
            base = matmul(base, base)
    return result


def transpose(a: IntMatrix) -> IntMatrix:
    return tuple(zip(*a))


def det(a: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    m = [list(row) for row in a]
    k = len(m)
    if k == 0:
        return 1
    sign = 1
    prev = 1
    for i in range(k - 1):
        if m[i][i] == 0:
            for r in range(i + 1, k):
                if m[r][i] != 0:
                    m[i], m[r] = m[r], m[i]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(i + 1, k):
            for c in range(i + 1, k):
                m[r][c] = (m[r][c] * m[i][i] - m[r][i] * m[i][c]) // prev
        prev = m[i][i]
    return sign * m[k - 1][k - 1]


def adjugate(a: IntMatrix) -> IntMatrix:
    k = len(a)
    if k == 1:
        return ((1,),)
    out = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            minor = [row[:j] + row[j + 1:] for r, row in enumerate(a) if r != i]
            # adj[j][i] = cofactor(i, j)
            out[j][i] = (-1) ** (i + j) * det(minor)
    return as_matrix(out)


def inverse_integer(a: IntMatrix) -> IntMatrix:
    """Inverse of a unimodular matrix; raises if det is not +-1."""
    d = det(a)
    if d not in (1, -1):
        raise ValueError(f"matrix is not in GL(k, Z) (det = {d})")
    return tuple(tuple(d * x for x in row) for row in adjugate(a))


def rank(rows: Sequence[Sequence[int | Fraction]]) -> int:
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def int_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q using integer row operations only."""
    m = [list(row) for row in rows]
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pr = m[r]
        for i in range(r + 1, len(m)):
            if m[i][c]:
                f, p = m[i][c], pr[c]
                row = [p * x - f * y for x, y in zip(m[i], pr)]
                g = 0
                for x in row:
                    g = gcd(g, x)
                m[i] = [x // g for x in row] if g else row
        r += 1
    return r


def char_poly(a: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Characteristic polynomial det(xI - A), highest coefficient first.

    Berkowitz's algorithm: division free, so every intermediate value is an
    integer.
    """
    a = [list(map(int, row)) for row in a]
    k = len(a)
    # coefficient vector for the leading 1x1 principal submatrix
    vec = [1, -a[0][0]]
    for r in range(1, k):
        # partition the (r+1)x(r+1) leading block as [[M, C], [R, a_rr]]
        R = a[r][:r]
        C = [a[i][r] for i in range(r)]
        M = [row[:r] for row in a[:r]]
        # Toeplitz column: 1, -a_rr, -R C, -R M C, -R M^2 C, ...
        col = [1, -a[r][r]]
        w = C
        for _ in range(r):
            col.append(-sum(x * y for x, y in zip(R, w)))
            w = [sum(M[i][j] * w[j] for j in range(r)) for i in range(r)]
        new = []
        for i in range(r + 2):
            new.append(sum(col[i - j] * vec[j] for j in range(min(i, r) + 1) if 0 <= i - j < len(col)))
        vec = new
    return tuple(vec)


def root_moduli(coeffs: Sequence[int], digits: int = 30) -> list[mpmath.mpf]:
    """Moduli of all complex roots of an integer polynomial, with multiplicity.

    The polynomial is split into irreducible factors over Z first so that the
    simultaneous (Durand-Kerner) iteration only ever sees simple roots.
    Precision is doubled on non-convergence before giving up.
    """
    x = sympy.Symbol("x")
    poly = sympy.Poly(list(coeffs), x, domain="ZZ")
    if poly.degree() <= 0:
        return []
    _, factors = poly.factor_list()
    moduli: list[mpmath.mpf] = []
    for factor, mult in factors:
        fc = [int(c) for c in factor.all_coeffs()]
        if len(fc) == 2:
            with mpmath.workdps(digits):
                mods = [abs(mpmath.mpf(-fc[1]) / fc[0])]
        else:
            mods = _polyroot_moduli(fc, digits)
        moduli.extend(m for m in mods for _ in range(mult))
    return moduli


def _polyroot_moduli(coeffs: list[int], digits: int) -> list:
    last_err: Exception | None = None
    for attempt in range(4):
        dps = digits * 2 ** attempt
        with mpmath.workdps(dps):
            try:
                roots = mpmath.polyroots(coeffs, maxsteps=200 * (attempt + 1), extraprec=2 * dps)
            except NoConvergence as exc:
                last_err = exc
                continue
            return [abs(mpmath.mpc(r)) for r in roots]
    raise ArithmeticError(f"root iteration did not converge for {coeffs}") from last_err
