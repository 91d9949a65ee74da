import numpy as np
import pytest

from src.quiver import (Quiver, QuiverFormatError, dynkin_edges, dynkin_quivers,
                        orientations_up_to_automorphism, path_quiver)


# ----------------------------------------------------------------------
# Text format
# ----------------------------------------------------------------------

def test_from_text_reads_arrows_and_comments():
    q = Quiver.from_text("# A3\nn 3\narrow 1 2\n\narrow 2 3  # tail\n")
    assert q.n == 3
    assert q.arrow_list == [(1, 2), (2, 3)]


def test_to_text_is_read_back():
    q = Quiver(4, [(1, 2), (3, 2), (3, 4)])
    assert Quiver.from_text(q.to_text()) == q


@pytest.mark.parametrize("text, line", [
    ("arrow 1 2\n", 1),
    ("n 3\narrow 1 4\n", 2),
    ("n 3\narrow 1\n", 2),
    ("n 3\nedge 1 2\n", 2),
    ("n 2\nn 2\n", 2),
])
def test_parse_errors_carry_line_number(text, line):
    with pytest.raises(QuiverFormatError) as e:
        Quiver.from_text(text)
    assert e.value.line == line
    assert f"line {line}" in str(e.value)


def test_missing_n_line():
    with pytest.raises(QuiverFormatError):
        Quiver.from_text("# nothing\n")


def test_constructor_rejects_out_of_range_vertex():
    with pytest.raises(ValueError):
        Quiver(2, [(1, 3)])


# ----------------------------------------------------------------------
# Validation and classification
# ----------------------------------------------------------------------

def test_validate_reports_loop_two_cycle_and_cycle():
    assert not Quiver(2, [(1, 1)]).validate().valid
    assert not Quiver(2, [(1, 2), (2, 1)]).validate().valid
    diagnostics = Quiver(3, [(1, 2), (2, 3), (3, 1)]).validate()
    assert not diagnostics.valid
    assert "directed cycle" in diagnostics.problems[0]


@pytest.mark.parametrize("arrows, n, kind", [
    ([(1, 2), (2, 3)], 3, "A3"),
    ([(1, 4), (2, 4), (3, 4)], 4, "D4"),
    ([(4, 5), (5, 3), (2, 5), (1, 2)], 5, "D5"),
    ([(1, 6), (2, 3), (3, 4), (5, 4), (8, 5), (8, 7), (8, 6)], 8, "E8"),
    ([(1, 2), (2, 3), (1, 4), (4, 3)], 4, "affine-A4"),
    ([(1, 2), (1, 3), (1, 4), (1, 5)], 5, "other"),
])
def test_dynkin_type(arrows, n, kind):
    q = Quiver(n, arrows)
    assert q.dynkin_type() == kind
    assert q.validate().dynkin_type == kind


def test_double_arrow_is_not_simply_laced():
    assert Quiver(2, {(1, 2): 2}).dynkin_type() == "other"


@pytest.mark.parametrize("kind", ["A4", "D5", "E6", "E7", "E8"])
def test_dynkin_quivers_classify_as_their_kind(kind):
    for q in dynkin_quivers(kind)[:8]:
        assert q.dynkin_type() == kind
        assert q.is_acyclic()


def test_orientations_up_to_automorphism_d4():
    # D4 has 8 orientations; the S3 symmetry of the legs leaves 4 classes
    assert len(dynkin_quivers("D4")) == 8
    assert len(orientations_up_to_automorphism("D4")) == 4


def test_dynkin_edges_rejects_unknown():
    with pytest.raises(ValueError):
        dynkin_edges("E9")


def test_paper_labeling_of_e8_quiver_is_identity(e8_quiver):
    assert e8_quiver.paper_labeling() == {v: v for v in range(1, 9)}


def test_paper_labeling_type_a_walks_the_path():
    q = Quiver(4, [(3, 1), (1, 4), (2, 4)])
    labels = q.paper_labeling()
    relabelled = q.relabel(labels)
    assert relabelled.underlying_graph().has_edge(1, 2)
    assert relabelled.underlying_graph().has_edge(2, 3)
    assert relabelled.underlying_graph().has_edge(3, 4)


def test_full_subquiver_relabels_and_rejects_disconnected(d5_quiver):
    sub, old = d5_quiver.full_subquiver([2, 5, 3])
    assert old == [2, 3, 5]
    assert sub.arrow_list == [(1, 3), (3, 2)]
    with pytest.raises(ValueError):
        d5_quiver.full_subquiver([1, 3])


# ----------------------------------------------------------------------
# Mutation and c-vectors
# ----------------------------------------------------------------------

def test_framed_quiver_shape(a3_linear):
    framed = a3_linear.framed()
    assert framed.n == 6
    assert framed.is_framed
    assert framed.frozen == frozenset({4, 5, 6})
    assert set(framed.arrow_list) == {(1, 2), (2, 3), (1, 4), (2, 5), (3, 6)}


def test_initial_c_vectors_are_unit_vectors(a3_linear):
    assert a3_linear.framed().c_vectors() == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]


def test_composite_mutation_of_framed_linear_a3(a3_linear):
    # mu_1 mu_2 mu_3: mutation at 3 first
    state = a3_linear.framed().mutate_sequence([3, 2, 1])
    assert set(state.arrow_list) == {(1, 2), (2, 3), (4, 1), (5, 1), (6, 1), (2, 4), (3, 5)}
    assert state.c_vectors() == [(-1, -1, -1), (1, 0, 0), (0, 1, 0)]


def test_mutation_is_an_involution(d5_quiver):
    framed = d5_quiver.framed()
    for k in framed.mutable_vertices:
        assert framed.mutate(k).mutate(k) == framed


def test_mutation_matches_exchange_matrix_rule(a3_linear):
    b = a3_linear.framed().exchange_matrix()
    mutated = a3_linear.framed().mutate(2).exchange_matrix()
    assert np.array_equal(mutated[:, 1], -b[:, 1])
    assert np.array_equal(mutated, -mutated.T)


def test_mutation_at_frozen_vertex_is_refused(a3_linear):
    with pytest.raises(ValueError):
        a3_linear.framed().mutate(4)


def test_framing_twice_is_refused(a3_linear):
    with pytest.raises(ValueError):
        a3_linear.framed().framed()


def test_c_vectors_need_a_framed_quiver(a3_linear):
    with pytest.raises(ValueError):
        a3_linear.c_vectors()


def test_cartan_matrix_of_path(a3_linear):
    expected = np.array([[2, -1, 0], [-1, 2, -1], [0, -1, 2]])
    assert np.array_equal(a3_linear.cartan_matrix(), expected)


def test_path_quiver_orientation():
    assert path_quiver(3, [True, False]).arrow_list == [(1, 2), (3, 2)]
    with pytest.raises(ValueError):
        path_quiver(3, [True])
