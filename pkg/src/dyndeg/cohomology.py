"""Cohomology ring of a product of projective spaces.

H^*(P^{n_1} x ... x P^{n_r}) = Q[t_1, ..., t_r] / (t_i^{n_i + 1}), with t_i the
pull-back of the hyperplane class of the i-th factor. The top monomial
t_1^{n_1} ... t_r^{n_r} integrates to 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as cartesian
from typing import Iterable, Mapping

Exponent = tuple[int, ...]


class CohomologyError(ValueError):
    pass


@dataclass(frozen=True)
class MultiProjSpace:
    factor_dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(n) for n in self.factor_dims)
        if not dims or any(n < 1 for n in dims):
            raise CohomologyError(f"factor dimensions must be positive, got {dims}")
        object.__setattr__(self, "factor_dims", dims)

    @property
    def total_dim(self) -> int:
        return sum(self.factor_dims)

    @property
    def nfactors(self) -> int:
        return len(self.factor_dims)

    @property
    def top(self) -> Exponent:
        return self.factor_dims

    def basis(self, p: int) -> list[Exponent]:
        """Kunneth monomials of total degree p."""
        ranges = [range(n + 1) for n in self.factor_dims]
        return [e for e in cartesian(*ranges) if sum(e) == p]

    def __str__(self):
        return " x ".join(f"P^{n}" for n in self.factor_dims)


@dataclass(frozen=True)
class CohomologyClass:
    """A (p, p) class stored sparsely over the Kunneth basis."""

    space: MultiProjSpace
    degree: int
    coefficients: Mapping[Exponent, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if not 0 <= self.degree <= self.space.total_dim:
            raise CohomologyError(f"degree {self.degree} outside 0..{self.space.total_dim}")
        clean: dict[Exponent, Fraction] = {}
        for e, c in self.coefficients.items():
            e = tuple(int(x) for x in e)
            if len(e) != self.space.nfactors:
                raise CohomologyError(f"exponent {e} has wrong length for {self.space}")
            if sum(e) != self.degree:
                raise CohomologyError(f"exponent {e} is not of degree {self.degree}")
            if any(x < 0 or x > n for x, n in zip(e, self.space.factor_dims)):
                raise CohomologyError(f"exponent {e} out of range for {self.space}")
            c = Fraction(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
                if not clean[e]:
                    del clean[e]
        object.__setattr__(self, "coefficients", clean)

    # constructors

    @classmethod
    def zero(cls, space: MultiProjSpace, degree: int) -> CohomologyClass:
        return cls(space, degree, {})

    @classmethod
    def one(cls, space: MultiProjSpace) -> CohomologyClass:
        return cls(space, 0, {(0,) * space.nfactors: 1})

    @classmethod
    def monomial(cls, space: MultiProjSpace, exponent: Iterable[int], coeff=1) -> CohomologyClass:
        exponent = tuple(exponent)
        return cls(space, sum(exponent), {exponent: coeff})

    @classmethod
    def generator(cls, space: MultiProjSpace, i: int) -> CohomologyClass:
        e = [0] * space.nfactors
        e[i] = 1
        return cls.monomial(space, e)

    @classmethod
    def kahler(cls, space: MultiProjSpace, weights: Iterable[int] | None = None) -> CohomologyClass:
        """sum_i w_i t_i; all weights 1 by default."""
        weights = [1] * space.nfactors if weights is None else list(weights)
        cls_ = cls.zero(space, 1)
        for i, w in enumerate(weights):
            cls_ = cls_ + w * cls.generator(space, i)
        return cls_

    # ring structure

    def _check_same(self, other: CohomologyClass):
        if self.space != other.space:
            raise CohomologyError(f"space mismatch: {self.space} vs {other.space}")

    def __add__(self, other: CohomologyClass) -> CohomologyClass:
        self._check_same(other)
        if self.degree != other.degree:
            raise CohomologyError("cannot add classes of different degrees")
        coeffs = dict(self.coefficients)
        for e, c in other.coefficients.items():
            coeffs[e] = coeffs.get(e, 0) + c
        return CohomologyClass(self.space, self.degree, coeffs)

    def __neg__(self) -> CohomologyClass:
        return CohomologyClass(self.space, self.degree, {e: -c for e, c in self.coefficients.items()})

    def __sub__(self, other: CohomologyClass) -> CohomologyClass:
        return self + (-other)

    def __rmul__(self, scalar) -> CohomologyClass:
        s = Fraction(scalar)
        return CohomologyClass(self.space, self.degree, {e: s * c for e, c in self.coefficients.items()})

    def __mul__(self, other):
        if isinstance(other, CohomologyClass):
            return cup(self, other)
        return self.__rmul__(other)

    def __pow__(self, n: int) -> CohomologyClass:
        result = CohomologyClass.one(self.space)
        for _ in range(n):
            result = cup(result, self)
        return result

    def __getitem__(self, exponent) -> Fraction:
        return self.coefficients.get(tuple(exponent), Fraction(0))

    def is_zero(self) -> bool:
        return not self.coefficients

    def __repr__(self):
        if not self.coefficients:
            return f"0 (deg {self.degree} on {self.space})"
        terms = []
        for e, c in sorted(self.coefficients.items(), reverse=True):
            mono = "*".join(f"t{i + 1}^{x}" if x > 1 else f"t{i + 1}" for i, x in enumerate(e) if x)
            terms.append(f"{c}*{mono}" if mono else f"{c}")
        return " + ".join(terms)


def cup(c1: CohomologyClass, c2: CohomologyClass) -> CohomologyClass:
    c1._check_same(c2)
    space = c1.space
    deg = c1.degree + c2.degree
    if deg > space.total_dim:
        raise CohomologyError(f"cup product degree {deg} exceeds dimension {space.total_dim}")
    out: dict[Exponent, Fraction] = {}
    dims = space.factor_dims
    for e1, a in c1.coefficients.items():
        for e2, b in c2.coefficients.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            if any(x > n for x, n in zip(e, dims)):
                continue
            out[e] = out.get(e, 0) + a * b
    return CohomologyClass(space, deg, out)


def integrate(c: CohomologyClass) -> Fraction:
    """Coefficient of the top monomial; zero below top degree."""
    if c.degree < c.space.total_dim:
        return Fraction(0)
    return c[c.space.top]


def mass(c: CohomologyClass, kahler: CohomologyClass) -> Fraction:
    """<c, kahler^{k-p}>."""
    if kahler.degree != 1:
        raise CohomologyError("the Kahler class must have degree 1")
    if kahler.space != c.space:
        raise CohomologyError("space mismatch")
    gens = [kahler[tuple(int(i == j) for j in range(c.space.nfactors))] for i in range(c.space.nfactors)]
    if any(g <= 0 for g in gens):
        raise CohomologyError("Kahler class needs strictly positive coefficients")
    return integrate(cup(c, kahler ** (c.space.total_dim - c.degree)))


def alpha_range(l: int, m: int, p: int) -> range:
    return range(max(0, p - m), min(l, p) + 1)


def alpha_coeffs(c: CohomologyClass) -> dict[int, Fraction]:
    """Pairings of c against t1^{l-j} t2^{m-p+j}, keyed by j.

    Only defined on two-factor spaces P^l x P^m, where it returns the
    coefficient of t1^j t2^{p-j}.
    """
    if c.space.nfactors != 2:
        raise CohomologyError("alpha coefficients need a two-factor space")
    l, m = c.space.factor_dims
    p = c.degree
    out = {}
    for j in alpha_range(l, m, p):
        dual = CohomologyClass.monomial(c.space, (l - j, m - p + j))
        out[j] = integrate(cup(c, dual))
    return out


def is_effective(c: CohomologyClass) -> bool:
    return all(v >= 0 for v in c.coefficients.values())

