import pytest

from shiftyang.ncalg import get_ring, parse_expr
from shiftyang.presentations import (NotInImage, Presentation, s_h_convert, shift_hom_apply, shift_hom_preimage,
                                     twist_T_eps)
from shiftyang.rootdata import build_cartan


def p(text, ring=None):
    return parse_expr(text, ring)


def ef_relation(pres, indices):
    return next(r.poly for r in pres.relations() if r.family == "EF" and tuple(r.indices)[-2:] == indices)


def test_yinf_ef_relation():
    pres = Presentation.sl2(0, kind="Yinf", level_bound=2)
    assert ef_relation(pres, (1, 1)) == p("E[1,1]*F[1,1] - F[1,1]*E[1,1] - hbar*H[1,1]")


def test_shift_kills_low_cartan():
    pres = Presentation.sl2(-2, level_bound=2)
    assert ef_relation(pres, (1, 1)) == p("E[1,1]*F[1,1] - F[1,1]*E[1,1]")


def test_mu1mu2_table_vanishing_bracket():
    pres = Presentation(build_cartan("A", 1), "Ymu1mu2", mu1=(-1,), mu2=(-1,))
    ef = [r.poly for r in pres.relations() if r.family.startswith("EF") and tuple(r.indices)[-2:] == (1, 1)]
    assert ef and ef[0] == p("E[1,1]*F[1,1] - F[1,1]*E[1,1]")


def test_shift_maps():
    assert shift_hom_apply(p("E[1,1]"), (0,), (-1,), (0,)) == p("E[1,2]")
    assert shift_hom_apply(p("H[1,1]"), (0,), (-1,), (-1,)) == p("H[1,3]")


def test_shift_map_preimages():
    assert shift_hom_preimage(p("E[1,2]"), (0,), (-1,), (0,)) == p("E[1,1]")
    assert shift_hom_preimage(p("H[1,3]*F[1,2]"), (0,), (-1,), (-1,)) == p("H[1,1]*F[1,1]")
    with pytest.raises(NotInImage):
        shift_hom_preimage(p("E[1,1]"), (0,), (-1,), (0,))


@pytest.mark.parametrize("word", ["E[1,1]*F[1,3]", "H[1,2]*E[1,2]", "F[1,1]*H[1,1]*E[1,4]"])
def test_preimage_inverts_apply(word):
    x = p(word)
    assert shift_hom_preimage(shift_hom_apply(x, (0,), (-2,), (-1,)), (0,), (-2,), (-1,)) == x


def test_s_generators():
    assert s_h_convert(p("S[1,1]"), (0,)) == p("H[1,1]")
    assert s_h_convert(p("S[1,2]"), (0,)) == p("H[1,2] - 1/2*H[1,1]*H[1,1]")
    h = p("H[1,2]*H[1,1] + H[1,1]")
    assert s_h_convert(s_h_convert(h, (0,), "h_to_s"), (0,)) == h


def test_twist():
    ring = get_ring(("hbar", "eps"))
    assert twist_T_eps(p("E[1,1]", ring), 0) == p("E[1,1]", ring)
    assert twist_T_eps(p("E[1,2]", ring), 0) == p("E[1,2] + eps*E[1,1]", ring)
    for n in (1, 2, 3):
        assert twist_T_eps(p(f"H[1,{2 * n + 1}]", ring), -2 * n) == p(f"H[1,{2 * n + 1}] + {2 * n}*eps", ring)
