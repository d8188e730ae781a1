"""Exact lattice polytopes in dimension at most 4.

Hulls are built by an incremental beneath-beyond sweep. Every orientation
test is an integer determinant, so collinear and coplanar lattice points are
handled without tolerances. Lower-dimensional point sets are kept in their
ambient space and simply have volume zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from math import factorial, gcd
from typing import Iterable, Sequence

import numpy as np

from .linalg import det, int_rank

MAX_DIM = 4

Point = tuple[int, ...]


class PolytopeError(ValueError):
    pass


@dataclass(frozen=True)
class LatticePolytope:
    """Convex hull of lattice points, stored by its vertices only."""

    dim: int
    vertices: tuple[Point, ...]

    @cached_property
    def volume(self) -> Fraction:
        return _hull(self.vertices, self.dim)[1]

    @cached_property
    def affine_dim(self) -> int:
        return len(_affine_frame(self.vertices)) - 1

    def __len__(self):
        return len(self.vertices)

    def __add__(self, other: LatticePolytope) -> LatticePolytope:
        return minkowski_sum(self, other)

    def __rmul__(self, factor: int) -> LatticePolytope:
        return dilate(self, factor)

    def contains(self, point: Sequence[int]) -> bool:
        pts = self.vertices + (tuple(point),)
        return set(convex_hull(pts).vertices) == set(self.vertices)


def _check_dim(d: int):
    if d < 1:
        raise PolytopeError("ambient dimension must be at least 1")
    if d > MAX_DIM:
        raise PolytopeError(f"dimension {d} exceeds the cap of {MAX_DIM}")


def convex_hull(points: Iterable[Sequence[int]]) -> LatticePolytope:
    pts = sorted({tuple(int(x) for x in p) for p in points})
    if not pts:
        raise PolytopeError("convex hull of an empty point set")
    d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise PolytopeError("points of mixed dimension")
    _check_dim(d)
    verts, vol = _hull(tuple(pts), d)
    poly = LatticePolytope(d, tuple(sorted(verts)))
    poly.__dict__["volume"] = vol
    return poly


def simplex(d: int, scale: int = 1) -> LatticePolytope:
    """scale times the standard simplex conv{0, e_1, ..., e_d}."""
    pts = [(0,) * d] + [tuple(scale * int(i == j) for j in range(d)) for i in range(d)]
    return convex_hull(pts)


def dilate(P: LatticePolytope, factor: int) -> LatticePolytope:
    if factor < 0:
        raise PolytopeError("negative dilation")
    if factor == 0:
        return LatticePolytope(P.dim, ((0,) * P.dim,))
    return LatticePolytope(P.dim, tuple(sorted(tuple(factor * x for x in v) for v in P.vertices)))


def minkowski_sum(P: LatticePolytope, Q: LatticePolytope) -> LatticePolytope:
    if P.dim != Q.dim:
        raise PolytopeError(f"dimension mismatch: {P.dim} vs {Q.dim}")
    pv, qv = sorted((P.vertices, Q.vertices))
    return _minkowski_cached(pv, qv)


@lru_cache(maxsize=4096)
def _minkowski_cached(pv: tuple[Point, ...], qv: tuple[Point, ...]) -> LatticePolytope:
    return convex_hull(tuple(a + b for a, b in zip(p, q)) for p in pv for q in qv)


def volume(P: LatticePolytope) -> Fraction:
    return P.volume


def mixed_volume(bodies: Sequence[LatticePolytope]) -> Fraction:
    """Mixed volume normalized so that the standard simplex gives 1.

    Inclusion-exclusion over nonempty subsets S of the bodies:
    sum (-1)^(k - |S|) vol(sum of S). This equals k! times the classical
    mixed volume.
    """
    k = len(bodies)
    if k == 0:
        raise PolytopeError("no bodies given")
    d = bodies[0].dim
    _check_dim(d)
    if any(b.dim != d for b in bodies):
        raise PolytopeError("bodies live in different dimensions")
    if k != d:
        raise PolytopeError(f"need exactly {d} bodies in dimension {d}, got {k}")
    keys = [b.vertices for b in bodies]
    total = Fraction(0)
    for size in range(1, k + 1):
        sign = -1 if (k - size) % 2 else 1
        for S in combinations(range(k), size):
            total += sign * _sum_of(tuple(sorted(keys[i] for i in S))).volume
    return total


@lru_cache(maxsize=4096)
def _sum_of(keys: tuple[tuple[Point, ...], ...]) -> LatticePolytope:
    # keys sorted, so every ordering of the same bodies shares one entry
    if len(keys) == 1:
        return LatticePolytope(len(keys[0][0]), keys[0])
    return _minkowski_cached(*sorted((_sum_of(keys[:-1]).vertices, keys[-1])))


# hull internals


def _affine_frame(pts: Sequence[Point]) -> list[int]:
    """Indices of a maximal affinely independent subset (first point first)."""
    base = pts[0]
    frame = [0]
    echelon: list[tuple[int, list[Fraction]]] = []  # (pivot column, row)
    for idx in range(1, len(pts)):
        v = [Fraction(a - b) for a, b in zip(pts[idx], base)]
        for col, row in echelon:
            if v[col]:
                f = v[col] / row[col]
                v = [x - f * y for x, y in zip(v, row)]
        piv = next((c for c, x in enumerate(v) if x), None)
        if piv is not None:
            echelon.append((piv, v))
            frame.append(idx)
            if len(frame) == len(base) + 1:
                break
    return frame


def _hull(pts: Sequence[Point], d: int) -> tuple[list[Point], Fraction]:
    pts = sorted(set(pts))
    frame = _affine_frame(pts)
    e = len(frame) - 1
    if e == 0:
        return [pts[0]], Fraction(0)
    if e < d:
        # project onto e coordinates on which the affine hull maps injectively
        base = pts[frame[0]]
        dirs = [[a - b for a, b in zip(pts[i], base)] for i in frame[1:]]
        for cols in combinations(range(d), e):
            if det([[row[c] for c in cols] for row in dirs]) != 0:
                break
        proj = {tuple(p[c] for c in cols): p for p in pts}
        verts, _ = _hull(list(proj), e)
        return [proj[v] for v in verts], Fraction(0)
    if d == 1:
        lo, hi = pts[0], pts[-1]
        return [lo, hi], Fraction(hi[0] - lo[0])
    # far points first: interior points then die on the first visibility scan
    n = len(pts)
    tot = [sum(p[c] for p in pts) for c in range(d)]
    pts.sort(key=lambda p: -sum((n * x - t) ** 2 for x, t in zip(p, tot)))
    return _beneath_beyond(pts, _affine_frame(pts), d)


def _normal(points: Sequence[Point]) -> tuple[int, ...]:
    """Primitive integer normal to the hyperplane through d points in Z^d."""
    p0 = points[0]
    vecs = [[a - b for a, b in zip(p, p0)] for p in points[1:]]
    d = len(p0)
    if d == 2:
        (x, y), = vecs
        n = [y, -x]
    elif d == 3:
        (a1, a2, a3), (b1, b2, b3) = vecs
        n = [a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1]
    elif d == 4:
        (a1, a2, a3, a4), (b1, b2, b3, b4), (c1, c2, c3, c4) = vecs
        # 2x2 minors of the first two rows
        m12 = a1 * b2 - a2 * b1
        m13 = a1 * b3 - a3 * b1
        m14 = a1 * b4 - a4 * b1
        m23 = a2 * b3 - a3 * b2
        m24 = a2 * b4 - a4 * b2
        m34 = a3 * b4 - a4 * b3
        n = [
            c2 * m34 - c3 * m24 + c4 * m23,
            -(c1 * m34 - c3 * m14 + c4 * m13),
            c1 * m24 - c2 * m14 + c4 * m12,
            -(c1 * m23 - c2 * m13 + c3 * m12),
        ]
    else:
        n = [(-1) ** j * det([row[:j] + row[j + 1:] for row in vecs]) for j in range(d)]
    g = 0
    for x in n:
        g = gcd(g, x)
    return tuple(x // g for x in n) if g else tuple(n)


def _dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def _exact_dtype(pts: Sequence[Point], d: int):
    """int64 when a Hadamard bound rules out overflow in n . x, else object."""
    m = max(abs(x) for p in pts for x in p) or 1
    bound = d * m * int((2 * m * max(d - 1, 1) ** 0.5 + 1) ** (d - 1) + 1)
    return np.int64 if bound < 2 ** 62 else object


def _beneath_beyond(pts: list[Point], frame: list[int], d: int) -> tuple[list[Point], Fraction]:
    # centroid of the initial simplex, scaled by d + 1 to stay integral
    csum = tuple(sum(pts[i][c] for i in frame) for c in range(d))
    scale = d + 1
    dtype = _exact_dtype(pts, d)
    X = np.array(pts, dtype=dtype)

    facets: dict[int, tuple[tuple[int, ...], tuple[int, ...], int]] = {}
    ridges: dict[frozenset, set[int]] = {}
    next_id = 0

    def add_facet(verts: tuple[int, ...]):
        nonlocal next_id
        n = _normal([pts[i] for i in verts])
        b = _dot(n, pts[verts[0]])
        if _dot(n, csum) - scale * b > 0:
            n = tuple(-x for x in n)
            b = -b
        fid = next_id
        next_id += 1
        facets[fid] = (verts, n, b)
        for skip in range(d):
            r = frozenset(verts[:skip] + verts[skip + 1:])
            ridges.setdefault(r, set()).add(fid)

    def drop_facet(fid: int):
        verts, _, _ = facets.pop(fid)
        for skip in range(d):
            r = frozenset(verts[:skip] + verts[skip + 1:])
            owners = ridges[r]
            owners.discard(fid)
            if not owners:
                del ridges[r]

    for skip in range(d + 1):
        add_facet(tuple(frame[:skip] + frame[skip + 1:]))

    in_frame = set(frame)
    candidates = np.array([i for i in range(len(pts)) if i not in in_frame], dtype=np.int64)
    while len(candidates):
        fids = list(facets)
        N = np.array([facets[f][1] for f in fids], dtype=dtype)
        B = np.array([facets[f][2] for f in fids], dtype=dtype)
        outside = (X[candidates] @ N.T) > B
        keep = outside.any(axis=1)
        candidates = candidates[keep]
        if not len(candidates):
            break
        # furthest point (in unnormalized height) first, quickhull style
        heights = (X[candidates] @ N.T) - B
        pick = int(np.argmax(heights.max(axis=1)))
        idx = int(candidates[pick])
        visible = [fids[j] for j in np.flatnonzero(heights[pick] > 0)]
        vis = set(visible)
        horizon = []
        for fid in visible:
            verts = facets[fid][0]
            for skip in range(d):
                r = verts[:skip] + verts[skip + 1:]
                if any(o not in vis for o in ridges[frozenset(r)]):
                    horizon.append(r)
        for fid in visible:
            drop_facet(fid)
        for r in horizon:
            add_facet(r + (idx,))
        candidates = np.delete(candidates, pick)

    # true vertices: the supporting hyperplanes through them span R^d
    planes = list({(n, b) for _, n, b in facets.values()})
    used = sorted({i for verts, _, _ in facets.values() for i in verts})
    vertices = []
    for i in used:
        normals = [n for n, b in planes if _dot(n, pts[i]) == b]
        if len(normals) >= d and int_rank(normals) == d:
            vertices.append(pts[i])

    apex = pts[frame[0]]
    total = 0
    for verts, _, _ in facets.values():
        total += abs(det([[a - b for a, b in zip(pts[i], apex)] for i in verts]))
    return vertices, Fraction(total, factorial(d))


