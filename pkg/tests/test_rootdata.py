import pytest

from shiftyang.rootdata import UnsupportedType, build_cartan, default_pbw_choice


@pytest.mark.parametrize("kind,rank,count", [("A", 1, 1), ("A", 2, 3), ("D", 4, 12)])
def test_positive_root_counts(kind, rank, count):
    assert len(build_cartan(kind, rank).positive_roots) == count


def test_a2_roots():
    assert set(build_cartan("A", 2).positive_roots) == {(1, 0), (0, 1), (1, 1)}


def test_level_splits():
    ch = default_pbw_choice(build_cartan("A", 2))
    assert ch.level_split((1, 1), 1) == (1, 1)
    assert ch.level_split((1, 1), 3) == (1, 3)
    a1 = default_pbw_choice(build_cartan("A", 1))
    assert a1.level_split((1,), 5) == (5,)


def test_unsupported_type():
    with pytest.raises((UnsupportedType, ValueError)):
        build_cartan("Q", 2)
