"""Dominant rational self-maps of P^k given by homogeneous polynomials.

A map is a tuple of k+1 homogeneous integer polynomials of one common
degree. Composition substitutes and then divides out the common factor of
the components, which is exactly where algebraic stability fails.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Sequence

from . import linalg
from . import poly as P
from .parser import ParseError, parse_polynomials
from .poly import HomogeneousPoly
from .profiles import DegreeSequence

DOMINANCE_TRIES = 3


class RationalMapError(ValueError):
    pass


class NonDominantError(RationalMapError):
    pass


@dataclass(frozen=True)
class ProjectiveRationalMap:
    components: tuple[HomogeneousPoly, ...]
    reduced: bool = False

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise RationalMapError("a map needs at least one component")
        nvars = comps[0].nvars
        if len(comps) != nvars:
            raise RationalMapError(f"{len(comps)} components for {nvars} homogeneous variables")
        if any(c.nvars != nvars for c in comps):
            raise RationalMapError("components use different variable counts")
        if len({c.degree for c in comps}) != 1:
            raise RationalMapError("components have different degrees")
        if all(c.is_zero() for c in comps):
            raise NonDominantError("all components vanish identically")
        object.__setattr__(self, "components", comps)

    @classmethod
    def from_terms(cls, terms: Sequence[P.Terms], degree: int | None = None,
                   reduced: bool = False) -> ProjectiveRationalMap:
        nvars = len(terms)
        if degree is None:
            degree = max(P.total_degree(t) for t in terms)
        return cls(tuple(HomogeneousPoly(nvars, degree, t) for t in terms), reduced)

    @property
    def k(self) -> int:
        return len(self.components) - 1

    @property
    def nvars(self) -> int:
        return len(self.components)

    @property
    def degree(self) -> int:
        return self.components[0].degree

    def terms(self) -> list[P.Terms]:
        return [dict(c.terms) for c in self.components]

    def __call__(self, point: Sequence) -> tuple:
        return tuple(c(point) for c in self.components)

    def __matmul__(self, other: ProjectiveRationalMap) -> ProjectiveRationalMap:
        return compose(self, other)

    def __str__(self):
        return "[" + " : ".join(str(c) for c in self.components) + "]"

    def to_text(self) -> str:
        return ", ".join(str(c) for c in self.components)

    def same_as(self, other: ProjectiveRationalMap) -> bool:
        """Equality as maps: the reduced representatives agree up to a scalar."""
        a, b = gcd_reduce(self), gcd_reduce(other)
        return a.degree == b.degree and a.terms() == b.terms()


def parse_map(text: str, k: int) -> ProjectiveRationalMap:
    """Parse ``"x1*x2, x0*x2, x0*x1"`` style input in variables x0..xk."""
    names = [f"x{i}" for i in range(k + 1)]
    comps = parse_polynomials(text, names)
    if len(comps) != k + 1:
        raise ParseError(f"expected {k + 1} components for P^{k}, found {len(comps)}")
    degrees = []
    for i, c in enumerate(comps):
        if not P.is_homogeneous(c):
            raise ParseError(f"component {i + 1} is not homogeneous")
        if c:
            degrees.append(P.total_degree(c))
    if not degrees:
        raise ParseError("all components are zero")
    if len(set(degrees)) != 1:
        raise ParseError(f"components have mixed degrees {sorted(set(degrees))}")
    return ProjectiveRationalMap.from_terms(comps, degrees[0])


def identity_map(k: int) -> ProjectiveRationalMap:
    return linear_map(linalg.identity(k + 1))


def linear_map(M: Sequence[Sequence[int]]) -> ProjectiveRationalMap:
    """x -> M x."""
    M = linalg.as_matrix(M)
    n = len(M)
    comps = []
    for row in M:
        comps.append({tuple(int(i == j) for i in range(n)): c for j, c in enumerate(row) if c})
    return ProjectiveRationalMap.from_terms(comps, 1)


def monomial_map(A) -> ProjectiveRationalMap:
    """Polynomial form of the monomial map of an exponent matrix."""
    from .monomial import homogenized_exponents

    exps = homogenized_exponents(A)
    return ProjectiveRationalMap.from_terms([{e: 1} for e in exps], sum(exps[0]), reduced=True)


def _normalize_sign(comps: list[P.Terms]) -> list[P.Terms]:
    for c in comps:
        if c:
            lead = c[max(c)]
            if lead < 0:
                return [P.scale(x, -1) for x in comps]
            break
    return comps


def gcd_reduce(f: ProjectiveRationalMap) -> ProjectiveRationalMap:
    """Divide out the integer content and the polynomial gcd of the components."""
    if f.reduced:
        return f
    comps = f.terms()
    nonzero = [c for c in comps if c]
    n = f.nvars
    cont = P.content(nonzero)
    if cont > 1:
        comps = [{e: c // cont for e, c in t.items()} for t in comps]
        nonzero = [c for c in comps if c]
    mono = P.monomial_gcd(nonzero)
    if any(mono):
        comps = [P.shift_down(t, mono) for t in comps]
        nonzero = [c for c in comps if c]
    g = P.poly_gcd(nonzero, n)
    gdeg = P.total_degree(g)
    if gdeg > 0:
        comps = [P.exact_div(t, g, n) if t else {} for t in comps]
        # the gcd is only primitive up to sign; content can reappear
        cont = P.content([c for c in comps if c])
        if cont > 1:
            comps = [{e: c // cont for e, c in t.items()} for t in comps]
    degree = f.degree - sum(mono) - max(gdeg, 0)
    return ProjectiveRationalMap.from_terms(_normalize_sign(comps), degree, reduced=True)


def compose(f: ProjectiveRationalMap, g: ProjectiveRationalMap, reduce: bool = True) -> ProjectiveRationalMap:
    """f o g, i.e. substitute g's components into f, then reduce."""
    if f.nvars != g.nvars:
        raise RationalMapError(f"cannot compose maps of P^{f.k} and P^{g.k}")
    images = g.terms()
    cache: dict = {}
    comps = [P.substitute(c, images, g.nvars, cache) for c in f.terms()]
    if not any(comps):
        raise NonDominantError("composition vanishes identically (g maps into the indeterminacy of f)")
    raw = ProjectiveRationalMap.from_terms(comps, f.degree * g.degree)
    return gcd_reduce(raw) if reduce else raw


def iterate(f: ProjectiveRationalMap, n: int) -> ProjectiveRationalMap:
    h = gcd_reduce(f)
    for _ in range(n - 1):
        h = compose(f, h)
    return h


def jacobian_rank_full(f: ProjectiveRationalMap, point: Sequence[int]) -> bool:
    derivs = [[c.derivative(j)(point) for j in range(f.nvars)] for c in f.components]
    return linalg.det(derivs) != 0


def is_dominant(f: ProjectiveRationalMap, rng: random.Random | None = None,
                tries: int = DOMINANCE_TRIES) -> bool:
    """Probabilistic dominance test.

    The lift F: C^{k+1} -> C^{k+1} is dominant iff the projective map is,
    and then its Jacobian determinant is a nonzero polynomial. It is
    evaluated at ``tries`` random integer points; a false answer can only be
    wrong if every point hits the zero set of that determinant.
    """
    rng = rng or random.Random(0)
    h = gcd_reduce(f)
    for _ in range(tries):
        point = [rng.randint(-97, 97) for _ in range(h.nvars)]
        if jacobian_rank_full(h, point):
            return True
    return False


def degree_sequence_d1(f: ProjectiveRationalMap, N: int) -> DegreeSequence:
    """Degrees of the reduced iterates f, f^2, ..., f^N.

    Each iterate is obtained as reduce(f o h_{n-1}) from the previous reduced
    iterate.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    h = gcd_reduce(f)
    vals = [h.degree]
    for _ in range(N - 1):
        try:
            h = compose(f, h)
        except NonDominantError as exc:
            raise NonDominantError("iterate degenerated; the input map is not dominant") from exc
        vals.append(h.degree)
    return DegreeSequence(1, tuple(vals))


def estimate_d1(seq: DegreeSequence | Sequence[int]) -> tuple[float, float]:
    """(estimate, upper_bound) for the first dynamical degree.

    The degree sequence is submultiplicative, so d_1 = inf_n deg(f^n)^{1/n}
    and the running minimum is a rigorous upper bound. The estimate is the
    last ratio deg(f^N)/deg(f^{N-1}) when the tail is nondecreasing, else the
    last root deg(f^N)^{1/N}; it is clipped to the bound.
    """
    vals = list(seq)
    if not vals or any(v < 1 for v in vals):
        raise ValueError("degree sequence must be nonempty with entries >= 1")
    upper = min(v ** (1.0 / n) for n, v in enumerate(vals, start=1))
    N = len(vals)
    tail = vals[-3:]
    if N >= 3 and all(a <= b for a, b in zip(tail, tail[1:])):
        est = vals[-1] / vals[-2]
    else:
        est = vals[-1] ** (1.0 / N)
    return min(est, upper), upper


def conjugate(f: ProjectiveRationalMap, M: Sequence[Sequence[int]]) -> ProjectiveRationalMap:
    """M o f o M^{-1}; the inverse is replaced by the adjugate, equal projectively."""
    M = linalg.as_matrix(M)
    if linalg.det(M) == 0:
        raise RationalMapError("conjugating matrix is singular")
    if len(M) != f.nvars:
        raise RationalMapError("matrix size does not match the map")
    inner = compose(f, linear_map(linalg.adjugate(M)))
    return compose(linear_map(M), inner)


def growth_rate_gap(a: Sequence[int], b: Sequence[int]) -> float:
    """max_n |log a_n - log b_n| / n."""
    return max(abs(math.log(x) - math.log(y)) / n for n, (x, y) in enumerate(zip(a, b), start=1))
