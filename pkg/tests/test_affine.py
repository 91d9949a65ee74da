import pytest

from src.affine import (AffineFamily, affine_a_families, affine_a_labels, affine_a_quiver,
                        affine_a_roots, family_of)
from src.root_system import RootSystem


@pytest.mark.parametrize("k, l, g_max", [(1, 0, 1), (1, 1, 2), (2, 1, 3)])
def test_family_count(k, l, g_max):
    assert len(affine_a_families(k, l, g_max)) == 2 * g_max * (k + 1) * (l + 1)


def test_labels_and_quiver():
    assert affine_a_labels(1, 1) == {"s": 1, "p1": 2, "q1": 3, "t": 4}
    q = affine_a_quiver(1, 1)
    assert set(q.arrow_list) == {(1, 2), (2, 4), (1, 3), (3, 4)}
    assert q.dynkin_type() == "affine-A4"
    assert not RootSystem.from_quiver(q).is_finite


@pytest.mark.parametrize("k, l", [(0, 0), (-1, 2)])
def test_quiver_errors(k, l):
    with pytest.raises(ValueError):
        affine_a_quiver(k, l)


def test_root_formula():
    assert AffineFamily(1, 1, 2, 1, 0, "source-heavy").root() == (2, 2, 1, 1)
    assert AffineFamily(1, 1, 2, 1, 0, "sink-heavy").root() == (1, 1, 2, 2)
    # level one: the source alone, and the sink alone
    assert AffineFamily(1, 1, 1, 0, 0, "source-heavy").root() == (1, 0, 0, 0)
    assert AffineFamily(1, 1, 1, 1, 1, "sink-heavy").root() == (0, 0, 0, 1)


def test_family_arguments_are_checked():
    with pytest.raises(ValueError):
        AffineFamily(1, 1, 1, 2, 0, "source-heavy")
    with pytest.raises(ValueError):
        AffineFamily(1, 1, 0, 0, 0, "source-heavy")
    with pytest.raises(ValueError):
        AffineFamily(1, 1, 1, 0, 0, "balanced")


def test_roots_are_deduplicated_and_sorted():
    assert affine_a_roots(1, 0, 1) == [(0, 0, 1), (1, 0, 0), (0, 1, 1), (1, 1, 0)]


def test_family_roots_are_real_roots():
    # real roots of affine type have norm 2 under the Cartan form
    k, l = 2, 1
    cartan = RootSystem.from_quiver(affine_a_quiver(k, l)).cartan
    for root in affine_a_roots(k, l, 3):
        assert int(sum(root[i] * cartan[i][j] * root[j] for i in range(k + l + 2) for j in range(k + l + 2))) == 2


def test_family_of():
    assert (2, 1, 0, "source-heavy") in family_of((2, 2, 1, 1), 1, 1)
    assert family_of((5, 0, 0, 0), 1, 1) == []
