import itertools
import math
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import random_nonsingular, random_unimodular
from dyndeg import linalg
from dyndeg.monomial import (
    DimensionCapError,
    DominanceError,
    ExponentMatrix,
    FibrationError,
    block_fibration,
    char_poly,
    degree_sequence,
    delta_p,
    dynamical_degrees_exact,
    homogenization_degree,
    homogenized_exponents,
    newton_polytope,
    relative_degrees_exact,
)
from dyndeg.polytope import simplex
from dyndeg.profiles import check_log_concavity
from test_polytope import _scipy_mixed_volume

GOLDEN = ExponentMatrix.from_rows([[2, 1], [1, 1]])
PHI2 = (3 + math.sqrt(5)) / 2


def numpy_profile(M):
    mods = sorted(np.abs(np.linalg.eigvals(np.array(M, dtype=float))), reverse=True)
    return [1.0] + list(np.cumprod(mods))


def test_singular_rejected():
    with pytest.raises(DominanceError):
        ExponentMatrix.from_rows([[1, 2], [2, 4]])


def test_homogenization_examples():
    assert homogenization_degree(GOLDEN) == 3
    # [Z^3 : X^2 Y : X Y Z] in coordinates (Z, X, Y)
    assert homogenized_exponents(GOLDEN) == [(3, 0, 0), (0, 2, 1), (1, 1, 1)]
    assert homogenization_degree([[-1, 0], [0, -1]]) == 2
    assert homogenization_degree([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 1
    assert homogenization_degree([[2, 0], [0, 3]]) == 3


def test_delta_examples():
    assert delta_p(GOLDEN, 1) == delta_p(GOLDEN, 1, "mixed-volume") == 3
    assert delta_p(GOLDEN, 2) == delta_p(GOLDEN, 2, "mixed-volume") == 1
    assert delta_p([[-1, 0], [0, -1]], 1) == 2
    assert delta_p([[-1, 0], [0, -1]], 2) == 1
    with pytest.raises(ValueError):
        delta_p(GOLDEN, 3)


def test_delta_cap():
    A = np.eye(5, dtype=int) * 2
    A[0, 1] = 1
    with pytest.raises(DimensionCapError):
        delta_p(A.tolist(), 2)
    assert delta_p(A.tolist(), 1) == homogenization_degree(A.tolist())
    assert delta_p(A.tolist(), 5) == 32


def test_degree_sequence_examples():
    assert degree_sequence(GOLDEN, 1, 2).values == (3, 8)
    # frozen oracle: F_{2n+2}
    assert degree_sequence(GOLDEN, 1, 8).values == (3, 8, 21, 55, 144, 377, 987, 2584)
    assert degree_sequence([[-1, 0], [0, -1]], 1, 4).values == (2, 1, 2, 1)
    assert degree_sequence([[2, 0], [0, 3]], 1, 3).values == (3, 9, 27)


def test_char_poly_examples():
    assert char_poly(GOLDEN) == (1, -3, 1)
    assert char_poly([[1, 0], [0, 1]]) == (1, -2, 1)
    assert char_poly([[2, 0], [0, 3]]) == (1, -5, 6)


def test_dynamical_degrees_examples():
    prof = dynamical_degrees_exact(GOLDEN)
    assert prof.values == pytest.approx((1, PHI2, 1), rel=1e-14)
    assert prof.exact == {0: 1, 2: 1}
    assert dynamical_degrees_exact([[2, 0], [0, 3]]).values == (1, 3, 6)
    assert dynamical_degrees_exact([[-1, 0], [0, -1]]).values == pytest.approx((1, 1, 1))


def test_block_fibration_examples():
    B, D = block_fibration([[2, 0], [5, 3]], 1)
    assert B.entries == ((2,),) and D.entries == ((3,),)
    with pytest.raises(FibrationError, match="does not preserve"):
        block_fibration(GOLDEN, 1)
    B, D = block_fibration([[2, 1, 0, 0], [1, 1, 0, 0], [7, 0, 3, 1], [0, 2, 1, 1]], 2)
    assert B.tolist() == [[2, 1], [1, 1]] and D.tolist() == [[3, 1], [1, 1]]
    with pytest.raises(DominanceError):
        block_fibration([[1, 0, 0], [1, 1, 1], [0, 1, 1]], 1)


def test_relative_degrees_examples():
    assert relative_degrees_exact([[3]]).values == (1, 3)
    prof = relative_degrees_exact([[3, 1], [1, 1]])
    assert prof.values == pytest.approx((1, 2 + math.sqrt(2), 2), rel=1e-14)
    assert relative_degrees_exact([[1, 0], [0, 1]]).values == (1, 1, 1)


def test_log_concavity_examples():
    assert check_log_concavity((1, 2.618, 1))
    assert check_log_concavity((1, 3, 6))
    res = check_log_concavity((1, 1, 2))
    assert not res and res.violation == 1


@pytest.mark.parametrize("k", [2, 3, 4])
def test_delta_one_two_routes(k):
    rng = random.Random(k)
    for _ in range(10 if k < 4 else 4):
        A = random_nonsingular(rng, k, -3, 3)
        assert delta_p(A, 1, "mixed-volume") == homogenization_degree(A)
        assert delta_p(A, k, "mixed-volume") == abs(linalg.det(A))


def test_intermediate_delta_against_scipy_mixed_volume():
    rng = random.Random(5)
    for _ in range(8):
        A = random_nonsingular(rng, 3, -2, 2)
        P = newton_polytope(A)
        ref = _scipy_mixed_volume([P, P, simplex(3)])
        assert delta_p(A, 2) == round(ref)


def test_frozen_intermediate_degree():
    # computed once and cross-checked against the scipy route above
    A = [[2, 1, 0], [0, 1, 1], [1, 0, 2]]
    assert [delta_p(A, p) for p in range(4)] == [1, 3, 8, 5]


@pytest.mark.parametrize("k", [2, 3, 4])
def test_delta_sequences_log_concave_in_p(k):
    rng = random.Random(50 + k)
    for _ in range(5 if k < 4 else 2):
        A = random_nonsingular(rng, k, -2, 2)
        row = [delta_p(A, p) for p in range(k + 1)]
        assert check_log_concavity(row), row


def test_top_degree_of_powers():
    rng = random.Random(7)
    for _ in range(10):
        A = ExponentMatrix.from_rows(random_nonsingular(rng, rng.randint(2, 6)))
        for n in (1, 2, 3):
            assert delta_p(A ** n, A.k) == abs(A.det) ** n


def test_spectral_profile_matches_numpy():
    rng = random.Random(8)
    for _ in range(40):
        A = random_nonsingular(rng, rng.randint(1, 8))
        assert dynamical_degrees_exact(A).values == pytest.approx(numpy_profile(A), rel=1e-8)


def test_spectral_cap():
    with pytest.raises(DimensionCapError):
        dynamical_degrees_exact(np.eye(9, dtype=int).tolist())


def test_ratio_convergence_to_exact_d1():
    seq = degree_sequence(GOLDEN, 1, 25).values
    assert seq[-1] / seq[-2] == pytest.approx(PHI2, rel=1e-12)
    A = [[3, 1, 0], [1, 2, 1], [0, 1, 1]]
    d1 = dynamical_degrees_exact(A)[1]
    seq = degree_sequence(A, 1, 30).values
    assert seq[-1] / seq[-2] == pytest.approx(d1, rel=1e-8)


def test_conjugation_invariance_and_growth():
    rng = random.Random(9)
    for _ in range(10):
        k = rng.randint(2, 4)
        A = ExponentMatrix.from_rows(random_nonsingular(rng, k, -3, 3))
        M = random_unimodular(rng, k)
        B = A.conjugate(M)
        assert char_poly(A) == char_poly(B)
        assert dynamical_degrees_exact(A).values == dynamical_degrees_exact(B).values
        sa, sb = degree_sequence(A, 1, 30).values, degree_sequence(B, 1, 30).values
        gap = abs(math.log(sa[-1]) - math.log(sb[-1])) / 30
        assert gap < 0.2


@given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=3, max_size=3))
def test_profile_invariants(rows):
    if linalg.det(rows) == 0:
        return
    prof = dynamical_degrees_exact(rows)
    assert prof[0] == 1 and prof.exact[3] == abs(linalg.det(rows))
    assert check_log_concavity(prof.values)
    # eigenvalue moduli of an integer matrix: the top one is at least 1
    assert max(prof.values) >= 1


@given(st.lists(st.lists(st.integers(-3, 3), min_size=2, max_size=2), min_size=2, max_size=2),
       st.integers(2, 4))
def test_power_rule_property(rows, n):
    if linalg.det(rows) == 0:
        return
    A = ExponentMatrix.from_rows(rows)
    base = dynamical_degrees_exact(A).power(n)
    assert dynamical_degrees_exact(A ** n).values == pytest.approx(base.values, rel=1e-9)


@given(st.lists(st.lists(st.integers(-3, 3), min_size=2, max_size=2), min_size=2, max_size=2))
def test_d1_submultiplicative(rows):
    if linalg.det(rows) == 0:
        return
    assert degree_sequence(rows, 1, 8).check_submultiplicative() is None
