import random

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from shiftyang import toda
from shiftyang.toda import (CompletionImpossible, TodaError, kostant_to_zastava, psi_complete,
                            zastava_ops, zastava_point)

z = toda.Z


def poly(expr):
    return sympy.Poly(expr, z, domain=sympy.QQ)


def passes(checks):
    return all(c["status"] == "pass" for c in checks)


def test_psi_degree_one():
    m = psi_complete(zastava_point(z, 1))
    assert m == [[poly(z), poly(-1)], [poly(1), poly(0)]]


def test_psi_degree_two():
    m = psi_complete(zastava_point(z**2 - 1, z))
    assert m == [[poly(z**2 - 1), poly(-z)], [poly(z), poly(-1)]]


def test_psi_common_factor():
    with pytest.raises(CompletionImpossible):
        psi_complete(zastava_point(z**2, z))


def test_multiply_square():
    a = zastava_point(z, 1)
    assert zastava_ops("multiply", a, a) == zastava_point(z**2 - 1, z)


def test_point_validation():
    with pytest.raises(TodaError):
        zastava_point(2 * z, 1)
    with pytest.raises(TodaError):
        zastava_point(z, z)


@given(st.integers(0, 10**6), st.integers(1, 4))
def test_completion_has_determinant_one(seed, n):
    p = toda.random_coprime_point(random.Random(seed), n)
    m = psi_complete(p)
    assert toda.psi_det(m) == poly(1)
    assert m[0][1].degree() < n and m[1][1].degree() < max(n - 1, 1)


@given(st.integers(0, 10**6))
def test_multiplication_associative(seed):
    rng = random.Random(seed)
    a, b, c = (toda.random_coprime_point(rng, rng.randint(1, 2)) for _ in range(3))
    mul = lambda x, y: zastava_ops("multiply", x, y)  # noqa: E731
    assert mul(mul(a, b), c) == mul(a, mul(b, c))


@given(st.integers(0, 10**6))
def test_involution_is_an_involution(seed):
    p = toda.random_coprime_point(random.Random(seed), 3)
    assert zastava_ops("involution", zastava_ops("involution", p)) == p


@pytest.mark.parametrize("n", [1, 2, 3])
def test_gl_hamiltonians_commute(n):
    assert passes(toda.involutivity_check(n))


def test_sp_hamiltonians_commute():
    assert passes(toda.involutivity_check(2, "Sp"))


def test_monodromy_leading_terms():
    data = toda.lax_and_hamiltonians(2)
    K = data["field"]
    w1, w2 = (toda._gen(K, f"w{r}") for r in (1, 2))
    t1, t2 = (toda._gen(K, f"t{r}") for r in (1, 2))
    assert data["hamiltonians"][0] == -(w1 + w2)
    assert data["hamiltonians"][1] == w1 * w2 - t1 / t2


@pytest.mark.parametrize("n", [1, 2])
def test_rmatrix_bracket(n):
    assert passes(toda.rmatrix_bracket_check(n))


def test_canonical_matches_rmatrix():
    res = toda.canonical_vs_rmatrix(2)
    assert res["status"] == "pass" and res["sign"] == 1


def test_series_recursions_degree_one():
    assert passes(toda.series_recursion_check(1, 2))


def test_classi_generators():
    assert passes(toda.classi_check(1, 2))


def test_kostant_rank_one():
    a, c = sympy.Rational(3), sympy.Rational(-2)
    res = kostant_to_zastava(sympy.Matrix([[a]]), sympy.Matrix([[c]]))
    assert res["Q"] == poly(z - a) and res["R_prime"] == poly(c)


def test_kostant_rank_two_g_equals_x():
    x = toda.companion_slice([5, 2])
    res = kostant_to_zastava(x, x)
    assert res["R_prime"] == poly(z)
    assert res["Q"] == poly(x.charpoly(z).as_expr())
    assert res["first_column"] and res["literal_first_column"]


def test_kostant_rejects_noncommuting():
    with pytest.raises(TodaError):
        kostant_to_zastava(sympy.Matrix([[0, 1], [1, 0]]), sympy.Matrix([[1, 0], [0, 2]]))


def test_kostant_partner_completes():
    x = toda.companion_slice([1, 0, 2])
    g = x**2 + 3 * x + sympy.eye(3)
    res = kostant_to_zastava(x, g)
    m = psi_complete(res["point"])
    assert m[0][1] == res["R_prime"]
