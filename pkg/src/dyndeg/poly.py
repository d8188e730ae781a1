"""Sparse integer polynomials as ``{exponent tuple: int}`` dicts.

Multiplication, powers and substitution are done here directly. The
multivariate gcd is delegated to sympy's sparse polynomial rings, after the
cheap cases (integer content, monomial factors, monomial components) have
been peeled off.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Mapping, Sequence

from sympy import ZZ
from sympy.polys.rings import ring

Exponent = tuple[int, ...]
Terms = dict[Exponent, int]


def add(a: Mapping[Exponent, int], b: Mapping[Exponent, int], sign: int = 1) -> Terms:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + sign * c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def mul(a: Mapping[Exponent, int], b: Mapping[Exponent, int]) -> Terms:
    if len(a) > len(b):
        a, b = b, a
    out: Terms = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            v = out.get(e, 0) + c1 * c2
            if v:
                out[e] = v
            else:
                del out[e]
    return out


def power(a: Mapping[Exponent, int], n: int, nvars: int) -> Terms:
    if len(a) == 1:
        (e, c), = a.items()
        return {tuple(n * x for x in e): c ** n}
    result: Terms = {(0,) * nvars: 1}
    base = dict(a)
    while n:
        if n & 1:
            result = mul(result, base)
        n >>= 1
        if n:
            base = mul(base, base)
    return result


def scale(a: Mapping[Exponent, int], c: int) -> Terms:
    return {e: c * v for e, v in a.items()} if c else {}


def content(polys: Iterable[Mapping[Exponent, int]]) -> int:
    g = 0
    for p in polys:
        for c in p.values():
            g = gcd(g, c)
            if g == 1:
                return 1
    return g


def monomial_gcd(polys: Sequence[Mapping[Exponent, int]]) -> Exponent:
    exps = [e for p in polys for e in p]
    return tuple(min(col) for col in zip(*exps))


def shift_down(a: Mapping[Exponent, int], e0: Exponent) -> Terms:
    return {tuple(x - y for x, y in zip(e, e0)): c for e, c in a.items()}


def total_degree(a: Mapping[Exponent, int]) -> int:
    return max((sum(e) for e in a), default=-1)


def is_homogeneous(a: Mapping[Exponent, int], positions: Sequence[int] | None = None) -> bool:
    """All terms share one degree, counted only over ``positions`` if given."""
    if positions is None:
        degs = {sum(e) for e in a}
    else:
        degs = {sum(e[i] for i in positions) for e in a}
    return len(degs) <= 1


def substitute(f: Mapping[Exponent, int], images: Sequence[Mapping[Exponent, int]], nvars: int,
               cache: dict | None = None) -> Terms:
    """f(images[0], ..., images[n-1]) with a shared cache of powers."""
    cache = {} if cache is None else cache
    out: Terms = {}
    one = {(0,) * nvars: 1}
    for e, c in f.items():
        term: Terms = {(0,) * nvars: c}
        for j, x in enumerate(e):
            if x:
                key = (j, x)
                if key not in cache:
                    cache[key] = power(images[j], x, nvars)
                term = mul(term, cache[key])
        out = add(out, term)
    return out if out else {}


def _sympy_ring(nvars: int):
    return ring([f"v{i}" for i in range(nvars)], ZZ)[0]


def poly_gcd(polys: Sequence[Mapping[Exponent, int]], nvars: int) -> Terms:
    """Primitive gcd of nonzero polynomials (content and monomial part excluded)."""
    if any(len(p) == 1 for p in polys):
        return {(0,) * nvars: 1}
    R = _sympy_ring(nvars)
    ordered = sorted(polys, key=len)
    g = R.from_dict(dict(ordered[0]))
    for p in ordered[1:]:
        g = g.gcd(R.from_dict(dict(p)))
        if g.is_ground:
            return {(0,) * nvars: 1}
    return {tuple(e): int(c) for e, c in g.items()}


def exact_div(a: Mapping[Exponent, int], b: Mapping[Exponent, int], nvars: int) -> Terms:
    R = _sympy_ring(nvars)
    q = R.from_dict(dict(a)).exquo(R.from_dict(dict(b)))
    return {tuple(e): int(c) for e, c in q.items()}


@dataclass(frozen=True)
class HomogeneousPoly:
    nvars: int
    degree: int
    terms: Mapping[Exponent, int]

    def __post_init__(self):
        clean = {tuple(int(x) for x in e): int(c) for e, c in self.terms.items() if c}
        for e in clean:
            if len(e) != self.nvars or sum(e) != self.degree:
                raise ValueError(f"term {e} does not fit degree {self.degree} in {self.nvars} variables")
        object.__setattr__(self, "terms", clean)

    def is_zero(self) -> bool:
        return not self.terms

    def __call__(self, point: Sequence) -> object:
        total = 0
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t *= x ** k
            total += t
        return total

    def derivative(self, j: int) -> HomogeneousPoly:
        out: Terms = {}
        for e, c in self.terms.items():
            if e[j]:
                e2 = e[:j] + (e[j] - 1,) + e[j + 1:]
                out[e2] = out.get(e2, 0) + c * e[j]
        return HomogeneousPoly(self.nvars, max(self.degree - 1, 0), out)

    def to_str(self, names: Sequence[str] | None = None) -> str:
        names = names or [f"x{i}" for i in range(self.nvars)]
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(f"{names[i]}^{k}" if k > 1 else names[i] for i, k in enumerate(e) if k)
            if not mono:
                s = str(abs(c))
            elif abs(c) == 1:
                s = mono
            else:
                s = f"{abs(c)}*{mono}"
            parts.append(("-" if c < 0 else "+", s))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, s in parts[1:]:
            text += f" {sign} {s}"
        return text

    def __str__(self):
        return self.to_str()
