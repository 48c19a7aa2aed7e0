import pytest
from hypothesis import given
from hypothesis import strategies as st

from shiftyang.ncalg import ArityMismatch, E, F, H, NCPoly, ParseError, RingMismatch, get_ring, parse_expr


def p(text, ring=None):
    return parse_expr(text, ring)


def test_self_commutator_vanishes():
    x = p("E[1,1]")
    assert not x.commutator(x)


def test_distributivity_example():
    assert p("(E[1,1]+F[1,1])*H[1,2]") == p("E[1,1]*H[1,2] + F[1,1]*H[1,2]")


def test_slotwise_tensor_product():
    assert p("ox(E[1,1], 1)") * p("ox(1, F[1,1])") == p("ox(E[1,1], F[1,1])")


def test_parse_two_terms(hb):
    x = p("E[1,1]*F[1,2] - hbar*H[1,2]")
    assert len(x) == 2
    assert x == NCPoly.gen(hb, E, 1, 1) * NCPoly.gen(hb, F, 1, 2) - NCPoly.gen(hb, H, 1, 2).scale(hb.gen("hbar"))


def test_parse_primitive_tensor():
    x = p("ox(E[1,1], 1) + ox(1, E[1,1])")
    assert x.arity == 2 and len(x) == 2


def test_e_level_zero_rejected():
    with pytest.raises(ParseError):
        p("E[1,0]")


def test_mixed_rings_rejected():
    a = p("E[1,1]")
    b = parse_expr("E[1,1]", get_ring(("hbar", "eps")))
    with pytest.raises(RingMismatch):
        a + b


def test_arity_mismatch():
    with pytest.raises(ArityMismatch):
        p("E[1,1]") + p("ox(E[1,1], 1)")


def test_round_trip_printing():
    x = p("2*E[1,1]*F[1,2] - 1/3*hbar*H[1,2] + 1")
    assert p(x.to_str()) == x


letters = st.sampled_from(["E[1,1]", "E[1,2]", "F[1,1]", "F[1,3]", "H[1,1]", "H[1,2]", "hbar", "1"])
monomials = st.lists(letters, min_size=1, max_size=3).map(lambda ls: "*".join(ls))
polys = st.lists(st.tuples(st.integers(-3, 3), monomials), min_size=1, max_size=3).map(
    lambda ts: " + ".join(f"({c})*{m}" for c, m in ts))


@given(polys, polys, polys)
def test_associative_and_distributive(a, b, c):
    x, y, z = p(a), p(b), p(c)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z


@given(polys, polys)
def test_commutator_antisymmetric(a, b):
    x, y = p(a), p(b)
    assert x.commutator(y) == -y.commutator(x)
