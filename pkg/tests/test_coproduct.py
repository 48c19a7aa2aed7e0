import pytest

from shiftyang.coproduct import coassoc_check, delta_general, smallest_eta, verify_delta_homomorphism
from shiftyang.ncalg import parse_expr


def test_primitive_on_level_one_ordinary():
    assert delta_general(parse_expr("E[1,1]"), 0, 0) == parse_expr("ox(E[1,1], 1) + ox(1, E[1,1])")


def test_cartan_level_one_ordinary():
    assert delta_general(parse_expr("H[1,1]"), 0, 0) == parse_expr("ox(H[1,1], 1) + ox(1, H[1,1])")


def test_smallest_eta():
    assert smallest_eta(2, -1) == (-2, 0)
    assert smallest_eta(-1, 3) == (0, -3)


@pytest.mark.parametrize("k,l", [(0, 0), (-1, -1)])
def test_homomorphism_small_bound(k, l):
    assert all(c["status"] == "pass" for c in verify_delta_homomorphism(k, l, 4))


def test_coassociative_antidominant_middle():
    assert all(c["status"] == "pass" for c in coassoc_check(-1, -1, -1))


def test_not_coassociative_with_dominant_middle():
    checks = coassoc_check(0, 2, 0)
    bad = [c for c in checks if c["status"] == "fail"]
    assert bad and all(c["witness"] for c in bad)


def test_level_one_with_shifted_first_slot():
    assert delta_general(parse_expr("E[1,1]"), -1, 0) == parse_expr("ox(E[1,1], 1)")


def test_a2_second_cartan_correction_uses_pairings():
    from shiftyang.coproduct import delta_on_generators
    from shiftyang.rootdata import build_cartan

    table = delta_on_generators(build_cartan("A", 2), (0, 0), (0, 0))
    _, img = table[("S", 1, 2)]
    f1e1 = parse_expr("ox(F[1,1], E[1,1])").terms
    f2e2 = parse_expr("ox(F[2,1], E[2,1])").terms
    (k1,), (k2,) = f1e1, f2e2
    assert img.coefficient(k1) == -2
    assert img.coefficient(k2) == 1
    root = parse_expr("ox(F[1,1]*F[2,1] - F[2,1]*F[1,1], E[1,1]*E[2,1] - E[2,1]*E[1,1])")
    for key, c in root.terms.items():
        assert img.coefficient(key) == -c
