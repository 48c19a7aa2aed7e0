import pytest

from shiftyang.diffops import (DiffOp, betas_sign_check, casimir_constant, library_checks, operator_field,
                               permute, rho_norm, toda_operator_library)


@pytest.fixture
def k2():
    return operator_field(2)


def mult(n, ring, c):
    return DiffOp.scalar(n, ring, c)


def test_shift_moves_past_coordinate(k2):
    u1 = DiffOp.shift(2, k2, 1)
    w1, hbar = k2.gen("w1"), k2.gen("hbar")
    assert u1 * mult(2, k2, w1) == mult(2, k2, w1 + hbar) * u1


def test_shift_inverse(k2):
    assert DiffOp.shift(2, k2, 1) * DiffOp.shift(2, k2, 1, -1) == mult(2, k2, 1)


def test_unrelated_variables_commute(k2):
    assert not mult(2, k2, k2.gen("w1")).commutator(DiffOp.shift(2, k2, 2))


def test_multiplication_associative(k2):
    a = DiffOp.shift(2, k2, 1) + mult(2, k2, k2.gen("w2"))
    b = DiffOp.shift(2, k2, 2, -1) * mult(2, k2, k2.gen("w1") ** 2)
    c = DiffOp.shift(2, k2, 1, 2) + mult(2, k2, k2.gen("hbar"))
    assert (a * b) * c == a * (b * c)


def test_library_rank_one():
    lib = toda_operator_library(1)
    assert lib["Dprime"] == DiffOp.shift(1, operator_field(1), 1)


def test_library_rank_two(k2):
    lib = toda_operator_library(2)
    w1, w2 = k2.gen("w1"), k2.gen("w2")
    expected = mult(2, k2, 1 / (w1 - w2)) * DiffOp.shift(2, k2, 1) + mult(2, k2, 1 / (w2 - w1)) * DiffOp.shift(2, k2, 2)
    assert lib["Dprime"] == expected
    assert lib["GrMinus"] == -lib["Dminus"]


def test_rho_norm_and_casimir():
    assert rho_norm(2) == pytest.approx(0.5)
    assert rho_norm(3) == 2
    assert casimir_constant(3) == rho_norm(3) / 2


def test_betas_and_library_invariants():
    assert all(c["status"] == "pass" for c in betas_sign_check(4))
    assert all(c["status"] == "pass" for c in library_checks(3))


def test_permutation_covariance():
    lib = toda_operator_library(3)
    for name, op in lib.items():
        assert permute(op, (1, 0, 2)) == op


def test_quantu_square_closes_on_generators():
    from shiftyang.diffops import quantu_diagram_check

    res = quantu_diagram_check(1, 1)
    squares = [c for c in res["checks"] if c["name"].startswith(("square/", "closure/", "calibration/"))]
    assert len([c for c in squares if c["name"].startswith("square/")]) == 4
    assert all(c["status"] == "pass" for c in squares)
