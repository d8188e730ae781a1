import os
import random

import pytest
from hypothesis import HealthCheck, settings

from dyndeg import linalg

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def random_nonsingular(rng: random.Random, k: int, lo: int = -5, hi: int = 5):
    while True:
        M = [[rng.randint(lo, hi) for _ in range(k)] for _ in range(k)]
        if linalg.det(M) != 0:
            return M


def random_unimodular(rng: random.Random, k: int, steps: int = 4):
    """Product of a few elementary integer row operations and sign flips."""
    M = [[int(i == j) for j in range(k)] for i in range(k)]
    for _ in range(steps):
        i, j = rng.sample(range(k), 2) if k > 1 else (0, 0)
        c = rng.choice([-2, -1, 1, 2])
        if i != j:
            M[i] = [a + c * b for a, b in zip(M[i], M[j])]
        if rng.random() < 0.3:
            M[i] = [-a for a in M[i]]
    return M


@pytest.fixture
def rng():
    return random.Random(20240601)


ACCEPTANCE_LINES: dict[int, str] = {}


def record_acceptance(number: int, ok: bool, text: str):
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {text}"
    ACCEPTANCE_LINES[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
