import numpy as np
import pytest

from src.permutations import enumerate_pq
from src.quiver import Quiver, dynkin_quivers, path_quiver
from src.root_system import (NotFiniteTypeError, RootSystem, format_root, height, leq_d, parse_root,
                             sign_of, support)


@pytest.mark.parametrize("kind, count, h", [
    ("A1", 1, 2),
    ("A3", 6, 4),
    ("A6", 21, 7),
    ("D4", 12, 6),
    ("D6", 30, 10),
    ("E6", 36, 12),
    ("E7", 63, 18),
    ("E8", 120, 30),
])
def test_positive_root_count_and_coxeter_number(kind, count, h):
    rs = RootSystem.from_quiver(dynkin_quivers(kind)[0])
    assert len(rs.positive_roots()) == count
    assert rs.coxeter_number == h
    # n * h = number of roots
    assert rs.n * h == 2 * count


@pytest.mark.parametrize("kind", ["A4", "D5", "E6", "E8"])
def test_highest_root_has_height_h_minus_one(kind):
    rs = RootSystem.from_quiver(dynkin_quivers(kind)[0])
    assert height(rs.highest_root()) == rs.coxeter_number - 1


def test_positive_roots_are_in_canonical_order(a3_linear):
    roots = RootSystem.from_quiver(a3_linear).positive_roots()
    assert roots == [(0, 0, 1), (0, 1, 0), (1, 0, 0), (0, 1, 1), (1, 1, 0), (1, 1, 1)]


def test_reflections_are_involutions(d5_quiver):
    rs = RootSystem.from_quiver(d5_quiver)
    for root in rs.positive_roots():
        for i in range(1, 6):
            assert rs.reflect(i, rs.reflect(i, root)) == root
            assert rs.is_root(rs.reflect(i, root))


def test_reflect_simple_root_negates(a3_linear):
    rs = RootSystem.from_quiver(a3_linear)
    assert rs.reflect(2, (0, 1, 0)) == (0, -1, 0)
    assert rs.reflect(2, (1, 0, 0)) == (1, 1, 0)


def test_reflection_matrix_agrees_with_reflect(d6_quiver):
    rs = RootSystem.from_quiver(d6_quiver)
    root = rs.highest_root()
    for i in range(1, 7):
        assert tuple(int(c) for c in rs.reflection_matrix(i) @ np.array(root)) == rs.reflect(i, root)


def test_reflect_word_applies_first_letter_first(a3_linear):
    rs = RootSystem.from_quiver(a3_linear)
    assert rs.reflect_word([2, 3], (0, 0, 1)) == rs.reflect(3, rs.reflect(2, (0, 0, 1)))
    assert rs.reflect_word([2, 3], (0, 0, 1)) == (0, 1, 0)


def test_d6_word_reduces_c_pi_alpha_to_simple(d6_quiver):
    rs = RootSystem.from_quiver(d6_quiver)
    pi = (1, 2, 3, 6, 5, 4)
    alpha = (1, 1, 2, 1, 1, 2)
    c_alpha = rs.coxeter_apply(pi, alpha, 1)
    assert c_alpha == (0, 1, 1, 1, 1, 2)
    # rays after the start letter 3, read back from c_pi alpha
    assert rs.reflect_word([4, 5, 6, 3, 2, 4, 5, 6], c_alpha) == (0, 0, 1, 0, 0, 0)


def test_d6_curve_word_builds_alpha_from_its_start(d6_quiver):
    rs = RootSystem.from_quiver(d6_quiver)
    rays = [6, 5, 4, 2, 3, 6, 5, 4, 1, 2, 3, 6, 5, 4]
    assert rs.reflect_word(rays, rs.simple_root(3)) == (1, 1, 2, 1, 1, 2)


def test_coxeter_apply_inverse_directions_cancel(e8_quiver):
    rs = RootSystem.from_quiver(e8_quiver)
    pi = (1, 2, 3, 8, 7, 6, 5, 4)
    for root in rs.positive_roots()[::7]:
        assert rs.coxeter_apply(pi, rs.coxeter_apply(pi, root, 1), -1) == root


def test_coxeter_matrix_has_order_h(d5_quiver):
    rs = RootSystem.from_quiver(d5_quiver)
    for pi in enumerate_pq(d5_quiver):
        c = rs.coxeter_matrix(pi)
        assert np.array_equal(np.linalg.matrix_power(c, rs.coxeter_number), np.eye(5, dtype=c.dtype))


def test_theta_is_positive_root(d5_quiver):
    rs = RootSystem.from_quiver(d5_quiver)
    pi = enumerate_pq(d5_quiver)[0]
    assert rs.theta(pi, 5) == rs.simple_root(pi[4])
    for i in range(1, 6):
        assert rs.is_positive_root(rs.theta(pi, i))


@pytest.mark.parametrize("kind", ["A4", "D4", "D5", "E6"])
def test_omega_orbits_partition_the_roots(kind):
    for q in dynkin_quivers(kind)[:4]:
        rs = RootSystem.from_quiver(q)
        everything = set(rs.positive_roots()) | {tuple(-c for c in r) for r in rs.positive_roots()}
        for pi in enumerate_pq(q)[:6]:
            orbits = rs.omega_orbits(pi)
            seen = [r for orbit in orbits for r in orbit.elements]
            assert len(seen) == len(set(seen))
            assert set(seen) == everything


def test_reducing_pair_detector():
    rs = RootSystem.from_quiver(path_quiver(3))
    # alpha_1 + alpha_2: only s_3 raises it, and s_2 (adjacent to 3) lowers it
    assert rs.reducing_pair((1, 1, 0)) == (3, 2)
    assert rs.reducing_pair(rs.highest_root()) is None


def test_non_finite_closure_raises():
    rs = RootSystem.from_quiver(Quiver(3, [(1, 2), (2, 3), (1, 3)]))
    assert not rs.is_finite
    with pytest.raises(NotFiniteTypeError):
        rs.positive_roots()


# ----------------------------------------------------------------------
# Module helpers
# ----------------------------------------------------------------------

def test_sign_and_dominance_helpers():
    assert sign_of((0, 1, 2)) == 1
    assert sign_of((0, -1, 0)) == -1
    assert sign_of((1, -1, 0)) == 0
    assert leq_d((1, 0), (1, 1)) == "less"
    assert leq_d((1, 1), (1, 1)) == "equal"
    assert leq_d((2, 1), (1, 1)) == "greater"
    assert leq_d((1, 0), (0, 1)) == "incomparable"
    assert support((0, 2, 0, 1)) == [2, 4]
    assert height((1, 2, 3)) == 6


def test_format_and_parse_e8_picture():
    root = (1, 1, 2, 2, 3, 2, 1, 3)
    text = format_root(root, "E8")
    assert text == "1 2 2 3 3 2 1 / 1"
    assert parse_root(text, 8, "E8") == root
    assert parse_root("1 1 2 2 3 2 1 3", 8) == root


def test_e8_worked_root_has_no_smaller_coxeter_image(e8_quiver):
    rs = RootSystem.from_quiver(e8_quiver)
    pi = (1, 2, 3, 8, 7, 6, 5, 4)
    alpha = parse_root("1 2 2 3 3 2 1 / 1", 8, "E8")
    forward = rs.coxeter_apply(pi, alpha, 1)
    backward = rs.coxeter_apply(pi, alpha, -1)
    assert format_root(forward, "E8") == "1 2 3 3 4 2 1 / 2"
    assert format_root(backward, "E8") == "1 1 1 2 3 2 1 / 2"
    # c_pi alpha lies above alpha, c_pi^-1 alpha is incomparable: neither is below it
    assert leq_d(alpha, forward) == "less"
    assert leq_d(alpha, backward) == "incomparable"


def test_format_d_picture():
    # row 1..n-3, n, n-1 with n-2 below
    assert format_root((1, 2, 1, 1, 2), "D5") == "1 2 2 1 / 1"


def test_parse_root_rejects_wrong_length():
    with pytest.raises(ValueError):
        parse_root("1 2", 3)
    with pytest.raises(ValueError):
        parse_root("1 2 / 1", 3, "A3")
