"""Containers for dynamical degree profiles and per-iterate degree sequences."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

LOG_CONCAVITY_EPS = 1e-9
EXACT_METHODS = ("eigenvalue-exact", "degree-exact")


@dataclass(frozen=True)
class DegreeProfile:
    """Dynamical degrees d_0, ..., d_k of one map.

    ``values`` are float shadows accurate to at least 12 digits when
    ``method`` is exact. ``exact`` holds known integer values (d_0, and d_k
    for monomial maps) keyed by order. ``charpoly`` records the integer
    characteristic data the values came from, when there is one.
    Estimated profiles carry a relative ``tolerance``.
    """

    values: tuple[float, ...]
    method: str = "eigenvalue-exact"
    tolerance: float = 0.0
    exact: dict[int, int] = field(default_factory=dict)
    charpoly: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))

    @property
    def is_exact(self) -> bool:
        return self.method in EXACT_METHODS

    @property
    def dim(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, p: int) -> float:
        return self.values[p]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def power(self, n: int) -> DegreeProfile:
        return DegreeProfile(
            tuple(v ** n for v in self.values),
            self.method,
            self.tolerance * n,
            {p: v ** n for p, v in self.exact.items()},
        )

    def to_dict(self) -> dict:
        out = {
            "values": list(self.values),
            "method": self.method,
            "tolerance": self.tolerance,
            "exact": {str(p): str(v) for p, v in self.exact.items()},
        }
        if self.charpoly is not None:
            out["charpoly"] = [str(c) for c in self.charpoly]
        return out

    @classmethod
    def from_dict(cls, d: dict) -> DegreeProfile:
        cp = d.get("charpoly")
        return cls(
            tuple(d["values"]),
            d.get("method", "eigenvalue-exact"),
            float(d.get("tolerance", 0.0)),
            {int(p): int(v) for p, v in d.get("exact", {}).items()},
            tuple(int(c) for c in cp) if cp is not None else None,
        )


@dataclass(frozen=True)
class DegreeSequence:
    """lambda_p(f^n) for n = 1..N, exact integers."""

    p: int
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))

    def __getitem__(self, n: int) -> int:
        """1-based: seq[n] is the degree of the n-th iterate."""
        if n < 1:
            raise IndexError("degree sequences start at n = 1")
        return self.values[n - 1]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def check_submultiplicative(self) -> tuple[int, int] | None:
        """First (n, m) with seq[n+m] > seq[n] * seq[m], or None."""
        N = len(self.values)
        for n in range(1, N):
            for m in range(1, N - n + 1):
                if self[n + m] > self[n] * self[m]:
                    return n, m
        return None


@dataclass(frozen=True)
class LogConcavityResult:
    ok: bool
    violation: int | None = None

    def __bool__(self):
        return self.ok


def check_log_concavity(values: Sequence[float] | Sequence[int] | DegreeProfile,
                        eps: float = LOG_CONCAVITY_EPS) -> LogConcavityResult:
    """Check v[p-1] v[p+1] <= v[p]^2 for every interior p.

    Integer inputs are compared exactly; anything else is allowed a relative
    slack of ``eps``.
    """
    vals = list(values)
    exact = all(isinstance(v, int) for v in vals)
    for p in range(1, len(vals) - 1):
        lhs = vals[p - 1] * vals[p + 1]
        rhs = vals[p] ** 2
        if exact:
            if lhs > rhs:
                return LogConcavityResult(False, p)
        elif lhs > rhs * (1 + eps):
            return LogConcavityResult(False, p)
    return LogConcavityResult(True)


def log_residual(a: float, b: float) -> float:
    return abs(math.log(a) - math.log(b))
