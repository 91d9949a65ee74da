from itertools import product

import pytest

from src.permutations import (commutation_class, count_pq, enumerate_pq, format_permutation, in_pq,
                              is_unimodal, parse_permutation, phi, phi_preimage, sample_pq,
                              sub_positions, unimodal_omega, unimodal_psi)
from src.quiver import Quiver, dynkin_quivers, path_quiver


def test_parse_and_format():
    assert parse_permutation("1,2,4,3") == (1, 2, 4, 3)
    assert parse_permutation(" 2 1 ") == (2, 1)
    assert format_permutation((3, 1, 2)) == "3 1 2"
    with pytest.raises(ValueError):
        parse_permutation("1 3")


# ----------------------------------------------------------------------
# P_Q
# ----------------------------------------------------------------------

def test_pq_of_d5_example(d5_quiver):
    assert enumerate_pq(d5_quiver) == [(1, 2, 4, 5, 3), (1, 4, 2, 5, 3), (4, 1, 2, 5, 3)]
    assert count_pq(d5_quiver, 100) == 3


def test_in_pq(d5_quiver, e8_quiver):
    assert in_pq(d5_quiver, (4, 1, 2, 5, 3))
    assert not in_pq(d5_quiver, (1, 2, 3, 4, 5))
    assert not in_pq(d5_quiver, (1, 2, 4, 5))
    assert in_pq(e8_quiver, (1, 2, 3, 8, 7, 6, 5, 4))


def test_enumerate_pq_refuses_cycle():
    with pytest.raises(ValueError):
        enumerate_pq(Quiver(3, [(1, 2), (2, 3), (3, 1)]))


def test_count_pq_stops_past_cap(e8_quiver):
    assert count_pq(e8_quiver, 10) == 11


def test_sample_pq_exhaustive_below_cap(d5_quiver):
    perms, exhaustive = sample_pq(d5_quiver, cap=10, sample=2, seed=1)
    assert exhaustive
    assert perms == enumerate_pq(d5_quiver)


def test_sample_pq_is_seeded(e8_quiver):
    first, exhaustive = sample_pq(e8_quiver, cap=10, sample=5, seed=7)
    second, _ = sample_pq(e8_quiver, cap=10, sample=5, seed=7)
    assert not exhaustive
    assert first == second
    assert 0 < len(first) <= 5
    assert all(in_pq(e8_quiver, pi) for pi in first)


def test_commutation_class_of_d5(d5_quiver):
    cls = commutation_class(d5_quiver, (1, 2, 4, 5, 3), cap=64)
    assert cls[0] == (1, 2, 4, 5, 3)
    assert sorted(cls) == enumerate_pq(d5_quiver)
    assert len(commutation_class(d5_quiver, (1, 2, 4, 5, 3), cap=2)) == 2


@pytest.mark.parametrize("kind", ["A5", "D5", "E6"])
def test_commutation_class_covers_pq(kind):
    # every linear extension of an acyclic quiver gives the same Coxeter element
    q = dynkin_quivers(kind)[1]
    pq = enumerate_pq(q)
    assert sorted(commutation_class(q, pq[0], cap=10_000)) == pq


# ----------------------------------------------------------------------
# Subquivers
# ----------------------------------------------------------------------

def test_phi_restricts_in_position_order():
    assert phi((1, 2, 4, 5, 3), [5, 2, 3]) == (2, 5, 3)
    assert sub_positions((1, 2, 4, 5, 3), [5, 2, 3]) == [2, 4, 5]


def test_phi_preimage(d5_quiver):
    assert phi_preimage(d5_quiver, (4, 1)) == (4, 1, 2, 5, 3)
    assert phi_preimage(d5_quiver, (5, 2)) is None


def test_phi_preimage_lands_in_pq_and_restricts_back(d6_quiver):
    sub = (6, 5, 4)
    pi = phi_preimage(d6_quiver, sub)
    assert in_pq(d6_quiver, pi)
    assert phi(pi, sub) == sub


# ----------------------------------------------------------------------
# Unimodal bijection
# ----------------------------------------------------------------------

def test_psi_of_small_quiver():
    assert unimodal_psi(Quiver(4, [(1, 2), (2, 3), (4, 3)])) == (1, 2, 4, 3)


def test_psi_of_zigzag(a6_zigzag):
    psi = unimodal_psi(a6_zigzag)
    assert psi == (1, 2, 4, 5, 6, 3)
    assert in_pq(a6_zigzag, psi)


@pytest.mark.parametrize("n", range(1, 9))
def test_psi_and_omega_are_inverse(n):
    for orientation in product([True, False], repeat=n - 1):
        q = path_quiver(n, list(orientation))
        psi = unimodal_psi(q)
        assert is_unimodal(psi)
        assert in_pq(q, psi)
        assert unimodal_omega(psi) == q


def test_unimodal_checks():
    assert is_unimodal((1, 2, 4, 3))
    assert not is_unimodal((2, 1, 4, 3))
    with pytest.raises(ValueError):
        unimodal_omega((2, 1, 4, 3))
    with pytest.raises(ValueError):
        unimodal_psi(Quiver(4, [(1, 4), (2, 4), (3, 4)]))
