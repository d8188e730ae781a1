"""Fibered systems and the comparison of their dynamical degrees.

Three families preserve the coordinate projection pi: P^l x P^m -> P^l (or
the torus projection for monomial maps):

* ``ProductSystem``: f(y, z) = (g(y), h(z)).
* ``SkewSystem``: f(y, z) = (g(y), tau_y(z)) with tau_y polynomial in the
  affine base coordinates.
* ``MonomialTriangularSystem``: a block-lower-triangular exponent matrix.

The verifiers compare degree profiles against the max-product formula
d_p(f) = max_j d_j(g) d_{p-j}(f|pi) and its consequences.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence, Union

import numpy as np

from . import poly as P
from .cohomology import CohomologyClass, MultiProjSpace, cup, integrate
from .monomial import (
    ExponentMatrix,
    block_fibration,
    block_lower_triangular,
    delta_p,
    dynamical_degrees_exact,
    homogenized_exponents,
    relative_degrees_exact,
)
from .parser import ParseError, parse_polynomials
from .profiles import DegreeProfile, DegreeSequence, check_log_concavity
from .rational import (
    NonDominantError,
    ProjectiveRationalMap,
    compose,
    gcd_reduce,
    is_dominant,
    monomial_map,
)

EXACT_TOL = 1e-9
ORBIT_RESAMPLES = 5


class UnsupportedError(ValueError):
    """The requested quantity is outside what this family can certify."""


class DegenerateOrbitError(RuntimeError):
    pass


# factor maps


@dataclass(frozen=True)
class Factor:
    """A self-map of a single projective space, monomial or rational."""

    map: Union[ExponentMatrix, ProjectiveRationalMap]
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def dim(self) -> int:
        return self.map.k

    @property
    def is_monomial(self) -> bool:
        return isinstance(self.map, ExponentMatrix)

    def lam(self, a: int, n: int) -> int:
        """lambda_a(map^n)."""
        if not 0 <= a <= self.dim:
            raise ValueError(f"order {a} outside 0..{self.dim}")
        if a == 0 or n == 0:
            return 1
        key = (a, n)
        if key not in self._cache:
            if self.is_monomial:
                self._cache[key] = delta_p(self.map ** n, a)
            elif self.dim == 1:
                # holomorphic on a curve: degrees are multiplicative
                self._cache[key] = gcd_reduce(self.map).degree ** n
            elif a == 1:
                self._cache[key] = self._rational_d1(n)
            else:
                raise UnsupportedError(
                    f"lambda_{a} of a rational map of P^{self.dim} is out of scope")
        return self._cache[key]

    def _rational_d1(self, n: int) -> int:
        its = self._cache.setdefault("iterates", [gcd_reduce(self.map)])
        while len(its) < n:
            its.append(compose(self.map, its[-1]))
        return its[n - 1].degree

    def profile(self) -> DegreeProfile:
        if self.is_monomial:
            return dynamical_degrees_exact(self.map)
        if self.dim == 1:
            d = gcd_reduce(self.map).degree
            return DegreeProfile((1.0, float(d)), "degree-exact", 0.0, {0: 1, 1: d})
        raise UnsupportedError(f"full degree profile of a rational map of P^{self.dim} is out of scope")


def _as_factor(m) -> Factor:
    if isinstance(m, Factor):
        return m
    if isinstance(m, (ExponentMatrix, ProjectiveRationalMap)):
        return Factor(m)
    return Factor(ExponentMatrix.from_rows(m))


# systems


@dataclass(frozen=True)
class ProductSystem:
    """f = g x h on P^l x P^m, fibered over the first factor."""

    base: Factor
    fiber: Factor

    def __init__(self, base, fiber):
        object.__setattr__(self, "base", _as_factor(base))
        object.__setattr__(self, "fiber", _as_factor(fiber))

    @property
    def l(self) -> int:
        return self.base.dim

    @property
    def m(self) -> int:
        return self.fiber.dim

    @property
    def k(self) -> int:
        return self.l + self.m

    @property
    def space(self) -> MultiProjSpace:
        return MultiProjSpace((self.l, self.m))

    def pullback_kahler_power(self, p: int, n: int) -> CohomologyClass:
        """(f^n)^*(omega^p) with omega = t1 + t2.

        On a product each Kunneth monomial t1^a t2^b pulls back to
        lambda_a(g^n) lambda_b(h^n) t1^a t2^b.
        """
        coeffs = {}
        for a in range(max(0, p - self.m), min(p, self.l) + 1):
            coeffs[(a, p - a)] = comb(p, a) * self.base.lam(a, n) * self.fiber.lam(p - a, n)
        return CohomologyClass(self.space, p, coeffs)

    def lam(self, p: int, n: int) -> int:
        """lambda_p(f^n) = <(f^n)^* omega^p, omega^{k-p}>."""
        w = CohomologyClass.kahler(self.space)
        return _as_int(integrate(cup(self.pullback_kahler_power(p, n), w ** (self.k - p))))


@dataclass(frozen=True)
class MonomialTriangularSystem:
    matrix: ExponentMatrix
    l: int

    def __init__(self, matrix, l: int):
        A = matrix if isinstance(matrix, ExponentMatrix) else ExponentMatrix.from_rows(matrix)
        block_fibration(A, l)
        object.__setattr__(self, "matrix", A)
        object.__setattr__(self, "l", int(l))

    @property
    def k(self) -> int:
        return self.matrix.k

    @property
    def blocks(self) -> tuple[ExponentMatrix, ExponentMatrix]:
        return block_fibration(self.matrix, self.l)


@dataclass(frozen=True)
class SkewSystem:
    """f(y, z) = (g(y), tau_y(z)) over P^l with fibers P^m.

    ``fiber_terms`` are polynomials in the homogeneous fiber variables
    z0..zm followed by the affine base coordinates y1..yl; they must be
    homogeneous in the z variables of one common degree.
    """

    base: ProjectiveRationalMap
    fiber_terms: tuple
    m: int

    def __post_init__(self):
        terms = tuple(dict(t) for t in self.fiber_terms)
        object.__setattr__(self, "fiber_terms", terms)
        if len(terms) != self.m + 1:
            raise ValueError(f"fiber family needs {self.m + 1} components")
        zpos = range(self.m + 1)
        degs = set()
        for i, t in enumerate(terms):
            if not P.is_homogeneous(t, zpos):
                raise ParseError(f"fiber component {i + 1} is not homogeneous in z")
            if t:
                degs.add(sum(next(iter(t))[j] for j in zpos))
        if len(degs) != 1:
            raise ParseError("fiber components have mixed z-degrees")

    @property
    def l(self) -> int:
        return self.base.k

    @property
    def k(self) -> int:
        return self.l + self.m

    @property
    def fiber_degree(self) -> int:
        t = next(t for t in self.fiber_terms if t)
        e = next(iter(t))
        return sum(e[: self.m + 1])

    @classmethod
    def parse(cls, base_text: str, fiber_text: str, l: int, m: int) -> SkewSystem:
        from .rational import parse_map

        base = parse_map(base_text, l)
        names = [f"z{i}" for i in range(m + 1)] + [f"y{j}" for j in range(1, l + 1)]
        return cls(base, tuple(parse_polynomials(fiber_text, names)), m)

    @classmethod
    def from_monomial(cls, A, l: int) -> SkewSystem:
        """The skew form of a block-lower-triangular monomial map.

        On the fiber over y the map is z_i -> y^{c_i} z^{d_i}; negative powers
        of y are cleared by a common monomial factor, which is a scalar on
        each fiber.
        """
        A = A if isinstance(A, ExponentMatrix) else ExponentMatrix.from_rows(A)
        B, D = block_fibration(A, l)
        m = A.k - l
        C = [row[:l] for row in A.entries[l:]]
        zexp = homogenized_exponents(D)
        yexp = [(0,) * l] + [tuple(r) for r in C]
        shift = [min(v[j] for v in yexp) for j in range(l)]
        comps = []
        for ze, ye in zip(zexp, yexp):
            comps.append({tuple(ze) + tuple(y - s for y, s in zip(ye, shift)): 1})
        return cls(monomial_map(B), tuple(comps), m)

    def generic_fiber_degree(self) -> int:
        """Degree in z of the family after removing its gcd over Z[z, y]."""
        nonzero = [t for t in self.fiber_terms if t]
        n = self.m + 1 + self.l
        mono = P.monomial_gcd(nonzero)
        g = P.poly_gcd([P.shift_down(t, mono) for t in nonzero], n)
        gz = max((sum(e[: self.m + 1]) for e in g), default=0)
        return self.fiber_degree - sum(mono[: self.m + 1]) - gz

    def fiber_map_at(self, y: Sequence[Fraction]) -> ProjectiveRationalMap:
        """tau_y as an integer polynomial map of P^m, scaled to clear denominators."""
        nz = self.m + 1
        specialized = []
        for t in self.fiber_terms:
            acc: dict = {}
            for e, c in t.items():
                v = Fraction(c)
                for yj, k in zip(y, e[nz:]):
                    if k:
                        v *= Fraction(yj) ** k
                if v:
                    ze = e[:nz]
                    acc[ze] = acc.get(ze, 0) + v
            specialized.append({e: v for e, v in acc.items() if v})
        den = 1
        for t in specialized:
            for v in t.values():
                den = den * v.denominator // math.gcd(den, v.denominator)
        comps = [{e: int(v * den) for e, v in t.items()} for t in specialized]
        if not any(comps):
            raise NonDominantError("fiber map vanishes identically at this base point")
        return ProjectiveRationalMap.from_terms(comps, self.fiber_degree)


def _as_int(x: Fraction) -> int:
    if x.denominator != 1:
        raise ArithmeticError(f"expected an integer, got {x}")
    return int(x)


# relative sequences


@dataclass(frozen=True)
class RelativeSequence:
    p: int
    values: tuple[int, ...]
    base_point: tuple[Fraction, ...] | None = None
    resamples: int = 0

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)


def relative_sequence_product(sys: ProductSystem, p: int, N: int) -> RelativeSequence:
    if not 0 <= p <= sys.m:
        raise ValueError(f"relative order p = {p} outside 0..{sys.m}")
    return RelativeSequence(p, tuple(sys.fiber.lam(p, n) for n in range(1, N + 1)))


def relative_sequence_triangular(sys: MonomialTriangularSystem, p: int, N: int) -> RelativeSequence:
    _, D = sys.blocks
    if not 0 <= p <= D.k:
        raise ValueError(f"relative order p = {p} outside 0..{D.k}")
    return RelativeSequence(p, tuple(delta_p(D ** n, p) for n in range(1, N + 1)))


def random_base_point(l: int, rng: random.Random, height: int = 12) -> tuple[Fraction, ...]:
    pts = []
    for _ in range(l):
        num = 0
        while num == 0:
            num = rng.randint(-height, height)
        pts.append(Fraction(num, rng.randint(1, height)))
    return tuple(pts)


def _apply_base(g: ProjectiveRationalMap, y: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Image of the affine point y under g, in affine coordinates."""
    den = 1
    for v in y:
        den = den * v.denominator // math.gcd(den, v.denominator)
    hom = [den] + [int(v * den) for v in y]
    img = g(hom)
    if all(v == 0 for v in img):
        raise DegenerateOrbitError("orbit hit the indeterminacy locus of the base map")
    if img[0] == 0:
        raise DegenerateOrbitError("orbit left the affine chart of the base")
    return tuple(Fraction(v, img[0]) for v in img[1:])


def _orbit_degrees(sys: SkewSystem, N: int, y: tuple[Fraction, ...], generic: int) -> list[int]:
    rng = random.Random(hash(y) & 0xFFFF)
    values = []
    h = None
    point = y
    for n in range(1, N + 1):
        try:
            tau = gcd_reduce(sys.fiber_map_at(point))
        except NonDominantError as exc:
            raise DegenerateOrbitError(f"step {n}: {exc}") from exc
        if tau.degree != generic:
            raise DegenerateOrbitError(
                f"step {n}: fiber map drops to degree {tau.degree} (generic {generic})")
        if not is_dominant(tau, rng):
            raise DegenerateOrbitError(f"step {n}: fiber map is not dominant here")
        try:
            h = tau if h is None else compose(tau, h)
        except NonDominantError as exc:
            raise DegenerateOrbitError(f"step {n}: {exc}") from exc
        values.append(h.degree)
        if n < N:
            point = _apply_base(sys.base, point)
    return values


def relative_sequence_orbit(sys: SkewSystem, N: int, y: Sequence | None = None,
                            rng: random.Random | None = None) -> RelativeSequence:
    """lambda_1(f^n | pi) from the fiber restriction of f^n over a base point.

    The restriction of f^n to the fiber over y is
    tau_{g^{n-1}(y)} o ... o tau_y, and its reduced degree is the relative
    degree when y is generic. A given ``y`` is tried first; on a detected
    degeneracy fresh random points are drawn, up to five times.
    """
    rng = rng or random.Random(0)
    generic = sys.generic_fiber_degree()
    candidates = [tuple(Fraction(v) for v in y)] if y is not None else []
    failures = []
    for attempt in range(ORBIT_RESAMPLES + (1 if candidates else 0)):
        point = candidates[0] if attempt == 0 and candidates else random_base_point(sys.l, rng)
        try:
            values = _orbit_degrees(sys, N, point, generic)
        except DegenerateOrbitError as exc:
            failures.append(f"y = {tuple(str(v) for v in point)}: {exc}")
            continue
        return RelativeSequence(1, tuple(values), point, attempt)
    raise DegenerateOrbitError("every sampled base point degenerated:\n  " + "\n  ".join(failures))


# pairings on product spaces


@dataclass(frozen=True)
class ABCTables:
    p: int
    a: dict[int, tuple[int, ...]]  # q -> a_{q,p}(1..N)
    b: tuple[int, ...]
    c: tuple[int, ...] | None  # lambda_p(g^n), only for p <= l


def a_qp(sys: ProductSystem, q: int, p: int, n: int) -> int:
    """<(f^n)^* omega^p, omega_Y^{l-p+q} omega^{k-l-q}> on P^l x P^m."""
    l, m = sys.l, sys.m
    if not (0 <= q <= m and q <= p <= l + q):
        raise ValueError(f"a_(q={q}, p={p}) undefined for l = {l}, m = {m}")
    space = sys.space
    w = CohomologyClass.kahler(space)
    dual = cup(CohomologyClass.monomial(space, (l - p + q, 0)), w ** (m - q))
    return _as_int(integrate(cup(sys.pullback_kahler_power(p, n), dual)))


def abc_sequences(sys: ProductSystem, p: int, N: int) -> ABCTables:
    if not isinstance(sys, ProductSystem):
        raise UnsupportedError("a, b, c sequences are implemented for product systems only")
    l, m = sys.l, sys.m
    if not 0 <= p <= sys.k:
        raise ValueError(f"order p = {p} outside 0..{sys.k}")
    qs = range(max(0, p - l), min(p, m) + 1)
    a = {q: tuple(a_qp(sys, q, p, n) for n in range(1, N + 1)) for q in qs}
    b = tuple(sum(a[q][i] for q in qs) for i in range(N))
    c = tuple(sys.base.lam(p, n) for n in range(1, N + 1)) if p <= l else None
    return ABCTables(p, a, b, c)


# profiles of whole systems


@dataclass(frozen=True)
class SystemProfiles:
    total: DegreeProfile
    base: DegreeProfile
    relative: DegreeProfile


def _ratio_estimate(seq: Sequence[int]) -> tuple[float, float]:
    """Last ratio of an integer sequence and a relative tolerance from its drift."""
    r1 = seq[-1] / seq[-2]
    r0 = seq[-2] / seq[-3]
    return r1, max(4 * abs(r1 - r0) / r1, 1e-12)


def system_profiles(sys, N: int = 60) -> SystemProfiles:
    if isinstance(sys, MonomialTriangularSystem):
        B, D = sys.blocks
        return SystemProfiles(dynamical_degrees_exact(sys.matrix), dynamical_degrees_exact(B),
                              relative_degrees_exact(D))
    if isinstance(sys, ProductSystem):
        base, rel = sys.base.profile(), sys.fiber.profile()
        if sys.base.is_monomial and sys.fiber.is_monomial:
            C = [[0] * sys.l for _ in range(sys.m)]
            total = dynamical_degrees_exact(block_lower_triangular(sys.base.map, sys.fiber.map, C))
        else:
            # growth of lambda_p(f^n) on the product space, independent of the max formula
            vals, tol = [1.0], 0.0
            for p in range(1, sys.k + 1):
                seq = [sys.lam(p, n) for n in range(N - 2, N + 1)]
                est, t = _ratio_estimate(seq)
                vals.append(est)
                tol = max(tol, t)
            total = DegreeProfile(tuple(vals), "sequence-estimate", tol, {0: 1})
        return SystemProfiles(total, base, rel)
    raise UnsupportedError(f"degree profiles are not available for {type(sys).__name__}")


# verifiers


@dataclass(frozen=True)
class OrderCheck:
    p: int
    status: str  # holds | fails | indistinguishable
    witness: int
    witnesses: tuple[int, ...]
    residual: float
    expected: float
    observed: float

    @property
    def holds(self) -> bool:
        return self.status == "holds"


@dataclass(frozen=True)
class ProductFormulaReport:
    checks: tuple[OrderCheck, ...]
    tolerance: float
    max_degree_ok: bool

    @property
    def holds(self) -> bool:
        return all(c.holds for c in self.checks) and self.max_degree_ok

    @property
    def status(self) -> str:
        if any(c.status == "fails" for c in self.checks) or not self.max_degree_ok:
            return "fails"
        if any(c.status == "indistinguishable" for c in self.checks):
            return "indistinguishable"
        return "holds"

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "tolerance": self.tolerance,
            "max_degree_ok": self.max_degree_ok,
            "orders": [
                {"p": c.p, "status": c.status, "witness": c.witness, "witnesses": list(c.witnesses),
                 "residual": c.residual, "expected": c.expected, "observed": c.observed}
                for c in self.checks
            ],
        }


def _tolerance(*profiles: DegreeProfile) -> float:
    return max([EXACT_TOL] + [pr.tolerance for pr in profiles if not pr.is_exact])


def verify_product_formula(d_f: DegreeProfile, d_g: DegreeProfile, d_rel: DegreeProfile) -> ProductFormulaReport:
    """Check d_p(f) = max_j d_j(g) d_{p-j}(f|pi) order by order.

    Residuals are taken in log scale. The witness is the smallest maximizing
    j; all j within tolerance of the maximum are listed in ``witnesses``.
    With estimated inputs, a candidate gap smaller than the tolerance makes
    the order "indistinguishable" rather than "holds".
    """
    k, l = len(d_f) - 1, len(d_g) - 1
    if l > k or len(d_rel) != k - l + 1:
        raise ValueError(f"profile lengths {len(d_f)}, {len(d_g)}, {len(d_rel)} are inconsistent")
    tol = _tolerance(d_f, d_g, d_rel)
    estimated = tol > EXACT_TOL
    checks = []
    for p in range(k + 1):
        js = range(max(0, p - k + l), min(p, l) + 1)
        cands = {j: math.log(d_g[j]) + math.log(d_rel[p - j]) for j in js}
        best = max(cands.values())
        witnesses = tuple(j for j, v in cands.items() if best - v <= tol)
        observed = math.log(d_f[p])
        residual = abs(observed - best)
        others = [v for j, v in cands.items() if j not in witnesses]
        if residual > tol:
            status = "fails"
        elif estimated and (len(witnesses) > 1 or (others and best - max(others) <= 2 * tol)):
            status = "indistinguishable"
        else:
            status = "holds"
        checks.append(OrderCheck(p, status, witnesses[0], witnesses, residual, math.exp(best), d_f[p]))
    max_ok = max(d_f) * (1 + tol) >= max(d_g)
    return ProductFormulaReport(tuple(checks), tol, max_ok)


def verify_equal_dimension(d_f: DegreeProfile, d_g: DegreeProfile) -> ProductFormulaReport:
    """Same-dimension semi-conjugacy: the relative profile is trivial."""
    return verify_product_formula(d_f, d_g, DegreeProfile((1.0,), "eigenvalue-exact", 0.0, {0: 1}))


def distinct_consecutive(profile: DegreeProfile | Sequence[float], tol: float = EXACT_TOL) -> bool:
    """1 = d_0 < ... < d_p > ... > d_k with no two consecutive values equal."""
    vals = [math.log(v) for v in profile]
    steps = [b - a for a, b in zip(vals, vals[1:])]
    if any(abs(s) <= tol for s in steps):
        return False
    # strictly up, then strictly down
    signs = [s > 0 for s in steps]
    return signs == sorted(signs, reverse=True)


@dataclass(frozen=True)
class DistinctDegreesReport:
    f_distinct: bool
    g_distinct: bool
    rel_distinct: bool

    @property
    def vacuous(self) -> bool:
        return not self.f_distinct

    @property
    def holds(self) -> bool:
        return self.vacuous or (self.g_distinct and self.rel_distinct)

    def to_dict(self) -> dict:
        return {"f_distinct": self.f_distinct, "g_distinct": self.g_distinct,
                "rel_distinct": self.rel_distinct, "vacuous": self.vacuous, "holds": self.holds}


def verify_distinct_degrees(d_f: DegreeProfile, d_g: DegreeProfile, d_rel: DegreeProfile) -> DistinctDegreesReport:
    tol = _tolerance(d_f, d_g, d_rel)
    return DistinctDegreesReport(distinct_consecutive(d_f, tol), distinct_consecutive(d_g, tol),
                             distinct_consecutive(d_rel, tol))


@dataclass(frozen=True)
class PowerRuleReport:
    n: int
    errors: tuple[float, ...]
    tolerance: float = EXACT_TOL

    @property
    def holds(self) -> bool:
        return all(e <= self.tolerance for e in self.errors)

    def to_dict(self) -> dict:
        return {"n": self.n, "relative_errors": list(self.errors), "tolerance": self.tolerance,
                "holds": self.holds}


def verify_power_rule(source, n: int) -> PowerRuleReport:
    """Compare the profile of the n-th power against the n-th power of the profile.

    ``source`` is an exponent matrix or a monomial-triangular system; for
    the latter the relative profile (fiber block) is checked too.
    """
    if isinstance(source, MonomialTriangularSystem):
        B, D = source.blocks
        pairs = [(source.matrix, source.matrix ** n), (D, D ** n)]
    else:
        A = source if isinstance(source, ExponentMatrix) else ExponentMatrix.from_rows(source)
        pairs = [(A, A ** n)]
    errors = []
    for M, Mn in pairs:
        base = dynamical_degrees_exact(M)
        powered = dynamical_degrees_exact(Mn)
        for x, y in zip(base.power(n), powered):
            errors.append(abs(x - y) / x)
    return PowerRuleReport(n, tuple(errors))


@dataclass(frozen=True)
class RelativeProfileReport:
    d0_is_one: bool
    all_at_least_one: bool
    log_concave: bool

    @property
    def holds(self) -> bool:
        return self.d0_is_one and self.all_at_least_one and self.log_concave


def verify_relative_profile(d_rel: DegreeProfile, tol: float = EXACT_TOL) -> RelativeProfileReport:
    """d_0(f|pi) = 1 exactly, every d_p(f|pi) >= 1, and log-concavity."""
    d0 = d_rel.exact.get(0) == 1 and d_rel[0] == 1.0
    return RelativeProfileReport(d0, all(v >= 1 - tol for v in d_rel),
                                 bool(check_log_concavity(d_rel.values, tol)))


@dataclass(frozen=True)
class ConvergenceReport:
    p: int
    target: float
    roots: tuple[float, ...]  # b_p(n)^{1/n}
    gaps: tuple[float, ...]
    decay_slope: float  # fitted slope of log(b_p(n) / d^n) per step

    def gap_at(self, n: int) -> float:
        return self.gaps[n - 1]

    def decreasing_from(self, n0: int) -> bool:
        tail = self.gaps[n0 - 1:]
        return all(b < a for a, b in zip(tail, tail[1:]))

    def to_dict(self) -> dict:
        return {"p": self.p, "target": self.target, "roots": list(self.roots), "gaps": list(self.gaps),
                "decay_slope": self.decay_slope}


def verify_b_convergence(sys: ProductSystem, p: int, N: int) -> ConvergenceReport:
    """Convergence of b_p(n)^{1/n} to the exact d_p(f)."""
    target = system_profiles(sys).total[p]
    tables = abc_sequences(sys, p, N)
    logs = [math.log(b) for b in tables.b]
    roots = tuple(math.exp(x / n) for n, x in enumerate(logs, start=1))
    gaps = tuple(abs(r - target) for r in roots)
    ns = np.arange(1, N + 1, dtype=float)
    resid = np.array(logs) - ns * math.log(target)
    half = N // 2
    slope = float(np.polyfit(ns[half:], resid[half:], 1)[0]) if N - half >= 2 else 0.0
    return ConvergenceReport(p, target, roots, gaps, slope)


def degree_sequence_of(sys, p: int, N: int) -> DegreeSequence:
    """lambda_p(f^n) for the whole system, where it is certifiable."""
    if isinstance(sys, MonomialTriangularSystem):
        return DegreeSequence(p, tuple(delta_p(sys.matrix ** n, p) for n in range(1, N + 1)))
    if isinstance(sys, ProductSystem):
        return DegreeSequence(p, tuple(sys.lam(p, n) for n in range(1, N + 1)))
    raise UnsupportedError(f"lambda_p sequences are not available for {type(sys).__name__}")

