import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from dyndeg import poly as P
from dyndeg.parser import ParseError, parse_polynomials

X = ["x0", "x1", "x2"]


def to_sympy(terms, names=X):
    syms = sympy.symbols(names)
    return sympy.Add(*[c * sympy.prod([s ** e for s, e in zip(syms, exp)]) for exp, c in terms.items()])


def test_parse_basic():
    (f,) = parse_polynomials("2*x0^2 - 3*x1*x2 + (x0 + x1)**2", X)
    assert to_sympy(f).expand() == sympy.sympify("2*x0**2 - 3*x1*x2 + (x0 + x1)**2").expand()


def test_parse_list_and_unary():
    fs = parse_polynomials("-x0, +x1, -(x2 - x0)", X)
    assert fs == [{(1, 0, 0): -1}, {(0, 1, 0): 1}, {(0, 0, 1): -1, (1, 0, 0): 1}]


def test_parse_cancellation_gives_zero():
    assert parse_polynomials("x0 - x0", X) == [{}]


def test_parse_big_integers():
    (f,) = parse_polynomials("123456789012345678901234567890*x1", X)
    assert f == {(0, 1, 0): 123456789012345678901234567890}


@pytest.mark.parametrize("text,pos", [("x0 + ", 5), ("x0 $ x1", 3), ("x3", 0), ("(x0 + x1", 8), ("x0^x1", 3)])
def test_parse_errors_report_position(text, pos):
    with pytest.raises(ParseError) as info:
        parse_polynomials(text, X)
    assert info.value.position == pos


polys = st.dictionaries(st.tuples(*[st.integers(0, 3)] * 3), st.integers(-5, 5).filter(bool), max_size=5)


@given(polys, polys)
def test_mul_add_match_sympy(a, b):
    assert to_sympy(P.mul(a, b)).expand() == (to_sympy(a) * to_sympy(b)).expand()
    assert to_sympy(P.add(a, b, -1)).expand() == (to_sympy(a) - to_sympy(b)).expand()


@given(polys, st.integers(0, 4))
def test_power_matches_sympy(a, n):
    assert to_sympy(P.power(a, n, 3)).expand() == (to_sympy(a) ** n).expand()


@settings(max_examples=15)
@given(polys, st.lists(polys, min_size=3, max_size=3))
def test_substitute_matches_sympy(f, images):
    syms = sympy.symbols(X)
    ref = to_sympy(f).subs({s: to_sympy(g) for s, g in zip(syms, images)}, simultaneous=True)
    assert to_sympy(P.substitute(f, images, 3)).expand() == sympy.expand(ref)


def test_gcd_recovers_planted_factor():
    rng = random.Random(1)
    for _ in range(15):
        c = {tuple(rng.randint(0, 2) for _ in range(3)): rng.randint(1, 4) for _ in range(3)}
        c[(1, 0, 0)] = 1
        c[(0, 1, 0)] = 1
        parts = [{tuple(rng.randint(0, 2) for _ in range(3)): rng.randint(-3, 3) or 1 for _ in range(3)}
                 for _ in range(3)]
        parts = [p for p in parts if len(p) > 1]
        if len(parts) < 2:
            continue
        prods = [P.mul(c, p) for p in parts]
        g = P.poly_gcd(prods, 3)
        ref = sympy.gcd_list([to_sympy(x) for x in prods])
        assert sympy.simplify(to_sympy(g) / ref).is_number


def test_exact_division():
    a = {(2, 0, 0): 1, (0, 2, 0): -1}
    b = {(1, 0, 0): 1, (0, 1, 0): 1}
    assert P.exact_div(a, b, 3) == {(1, 0, 0): 1, (0, 1, 0): -1}


def test_homogeneous_poly_helpers():
    h = P.HomogeneousPoly(3, 2, {(1, 1, 0): 3, (0, 0, 2): -1})
    assert h((1, 2, 3)) == 3 * 2 - 9
    assert h.derivative(0).terms == {(0, 1, 0): 3}
    assert str(h) == "3*x0*x1 - x2^2"
    with pytest.raises(ValueError):
        P.HomogeneousPoly(3, 2, {(1, 0, 0): 1})
    assert P.is_homogeneous({(1, 2, 0): 1, (0, 2, 1): 1}, positions=[1])
    assert not P.is_homogeneous({(1, 0): 1, (0, 2): 1})
