"""Degree theory of monomial self-maps of P^k.

The map attached to an integer matrix A sends x_i to prod_j x_j^{a_ij} on
the torus. Per-iterate degrees are always computed from the exact power
A^n, never by multiplying per-step degrees: degrees of monomial maps are
not multiplicative under composition.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import mpmath

from . import linalg
from .linalg import IntMatrix
from .polytope import MAX_DIM, LatticePolytope, convex_hull, mixed_volume, simplex
from .profiles import DegreeProfile, DegreeSequence

SPECTRAL_MAX_DIM = 8


class DominanceError(ValueError):
    """The map (or one of its blocks) is not dominant."""


class DimensionCapError(ValueError):
    """A computation was requested beyond its supported dimension."""


class FibrationError(ValueError):
    pass


@dataclass(frozen=True)
class ExponentMatrix:
    entries: IntMatrix

    def __post_init__(self):
        entries = linalg.as_matrix(self.entries)
        object.__setattr__(self, "entries", entries)
        if linalg.det(entries) == 0:
            raise DominanceError("exponent matrix is singular, so the monomial map is not dominant")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> ExponentMatrix:
        return cls(linalg.as_matrix(rows))

    @classmethod
    def diag(cls, *entries: int) -> ExponentMatrix:
        k = len(entries)
        return cls(tuple(tuple(entries[i] if i == j else 0 for j in range(k)) for i in range(k)))

    @property
    def k(self) -> int:
        return len(self.entries)

    @cached_property
    def det(self) -> int:
        return linalg.det(self.entries)

    def __matmul__(self, other: ExponentMatrix) -> ExponentMatrix:
        return ExponentMatrix(linalg.matmul(self.entries, other.entries))

    def __pow__(self, n: int) -> ExponentMatrix:
        return ExponentMatrix(linalg.matpow(self.entries, n))

    def conjugate(self, M: Sequence[Sequence[int]]) -> ExponentMatrix:
        """M A M^{-1} for M in GL(k, Z)."""
        M = linalg.as_matrix(M)
        return ExponentMatrix(linalg.matmul(linalg.matmul(M, self.entries), linalg.inverse_integer(M)))

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


def _as_exponent_matrix(A) -> ExponentMatrix:
    return A if isinstance(A, ExponentMatrix) else ExponentMatrix.from_rows(A)


def homogenized_exponents(A) -> list[tuple[int, ...]]:
    """Exponent vectors in Z^{k+1} of the reduced homogeneous lift.

    Entry i is the monomial placed in homogeneous coordinate i; coordinate 0
    is the one dehomogenized away (x_i = X_i / X_0).
    """
    A = _as_exponent_matrix(A)
    k = A.k
    vecs = [(0,) * (k + 1)]
    for row in A.entries:
        vecs.append((-sum(row),) + tuple(row))
    shift = [min(v[j] for v in vecs) for j in range(k + 1)]
    return [tuple(x - s for x, s in zip(v, shift)) for v in vecs]


def homogenization_degree(A) -> int:
    return sum(homogenized_exponents(A)[0])


def newton_polytope(A) -> LatticePolytope:
    """conv{0, rows of A}: the Newton polytope of the affine components."""
    A = _as_exponent_matrix(A)
    return convex_hull([(0,) * A.k] + [tuple(r) for r in A.entries])


def delta_p(A, p: int, method: str = "auto") -> int:
    """lambda_p of the monomial map of A.

    ``method="auto"`` uses closed forms at p in {0, 1, k} and mixed volumes
    otherwise; ``method="mixed-volume"`` forces the mixed volume
    MV(P, ..., P, Delta, ..., Delta) with p copies of the Newton polytope P.
    """
    A = _as_exponent_matrix(A)
    k = A.k
    if not 0 <= p <= k:
        raise ValueError(f"order p = {p} outside 0..{k}")
    if method == "auto":
        if p == 0:
            return 1
        if p == k:
            return abs(A.det)
        if p == 1:
            return homogenization_degree(A)
    elif method != "mixed-volume":
        raise ValueError(f"unknown method {method!r}")
    if k > MAX_DIM:
        raise DimensionCapError(f"intermediate degrees need k <= {MAX_DIM}, got k = {k}")
    P = newton_polytope(A)
    mv = mixed_volume([P] * p + [simplex(k)] * (k - p))
    if mv.denominator != 1:
        raise ArithmeticError(f"non-integral mixed volume {mv}")
    return int(mv)


def degree_sequence(A, p: int, N: int, method: str = "auto") -> DegreeSequence:
    A = _as_exponent_matrix(A)
    if N < 1:
        raise ValueError("N must be at least 1")
    vals = []
    power = A
    for n in range(1, N + 1):
        vals.append(delta_p(power, p, method))
        if n < N:
            power = power @ A
    return DegreeSequence(p, tuple(vals))


def char_poly(A) -> tuple[int, ...]:
    """Integer characteristic polynomial, highest degree first."""
    entries = A.entries if isinstance(A, ExponentMatrix) else linalg.as_matrix(A)
    return linalg.char_poly(entries)


def dynamical_degrees_exact(A) -> DegreeProfile:
    """d_p = product of the p largest eigenvalue moduli of A."""
    A = _as_exponent_matrix(A)
    k = A.k
    if k > SPECTRAL_MAX_DIM:
        raise DimensionCapError(f"spectral degrees need k <= {SPECTRAL_MAX_DIM}, got k = {k}")
    cp = linalg.char_poly(A.entries)
    with mpmath.workdps(30):
        moduli = sorted(linalg.root_moduli(cp, digits=30), reverse=True)
        vals = [mpmath.mpf(1)]
        for mu in moduli:
            vals.append(vals[-1] * mu)
        out = [float(v) for v in vals]
    top = abs(A.det)
    out[0], out[k] = 1.0, float(top)
    return DegreeProfile(tuple(out), "eigenvalue-exact", 0.0, {0: 1, k: top}, cp)


def block_fibration(A, l: int) -> tuple[ExponentMatrix, ExponentMatrix]:
    """Split a block-lower-triangular A into base block B and fiber block D.

    The first l torus coordinates carry the base, so A preserves the
    coordinate projection exactly when its top-right l x (k-l) block is zero.
    """
    entries = A.entries if isinstance(A, ExponentMatrix) else linalg.as_matrix(A)
    k = len(entries)
    if not 1 <= l < k:
        raise FibrationError(f"base dimension l = {l} must satisfy 1 <= l < {k}")
    if any(entries[i][j] for i in range(l) for j in range(l, k)):
        raise FibrationError("matrix does not preserve the coordinate fibration (top-right block nonzero)")
    B = tuple(row[:l] for row in entries[:l])
    D = tuple(row[l:] for row in entries[l:])
    if linalg.det(B) == 0:
        raise DominanceError("base block is singular: induced base map is not dominant")
    if linalg.det(D) == 0:
        raise DominanceError("fiber block is singular: fiber restriction is not dominant")
    return ExponentMatrix(B), ExponentMatrix(D)


def relative_degrees_exact(D) -> DegreeProfile:
    """Relative degrees d_0(f|pi), ..., d_{k-l}(f|pi) for a coordinate fibration.

    Restricted to a fiber, f^n is the monomial map of D^n up to a constant
    factor, so the relative degrees are the dynamical degrees of D.
    """
    return dynamical_degrees_exact(D)


def block_lower_triangular(B, D, C) -> ExponentMatrix:
    """Assemble [[B, 0], [C, D]]."""
    B = linalg.as_matrix(B.entries if isinstance(B, ExponentMatrix) else B)
    D = linalg.as_matrix(D.entries if isinstance(D, ExponentMatrix) else D)
    l, m = len(B), len(D)
    rows = [list(B[i]) + [0] * m for i in range(l)]
    rows += [list(C[i]) + list(D[i]) for i in range(m)]
    return ExponentMatrix.from_rows(rows)
