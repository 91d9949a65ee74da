import pytest

from src import settings
from src.arc_diagram import ArcDiagram, CrossingWord
from src.curve_class import realizes
from src.permutations import enumerate_pq, in_pq
from src.realization import DescentEngine, RealizationEntry, coxeter_lift, leaf_loop_extend
from src.root_system import RootSystem

IDENTITY = (1, 2, 3)


def _assert_sound(entry, q, rs):
    assert entry.realized, entry.trace
    assert in_pq(q, entry.permutation)
    assert realizes(entry.diagram, entry.permutation, rs, entry.root)


def test_descent_realizes_every_d5_root(d5_quiver):
    engine = DescentEngine(d5_quiver, use_search=False)
    perms = enumerate_pq(d5_quiver)
    for alpha in engine.root_system.positive_roots():
        _assert_sound(engine.descent_construct(alpha, perms), d5_quiver, engine.root_system)


def test_fixed_engine_keeps_the_permutation(d6_quiver):
    engine = DescentEngine(d6_quiver, fixed_permutation=True)
    pi = (1, 2, 3, 6, 5, 4)
    entry = engine.realize((1, 1, 2, 1, 1, 2), pi)
    _assert_sound(entry, d6_quiver, engine.root_system)
    assert entry.permutation == pi


def test_simple_roots_use_straight_curves(a6_zigzag):
    engine = DescentEngine(a6_zigzag)
    entry = engine.realize((0, 0, 0, 1, 0, 0), (1, 2, 4, 5, 6, 3))
    assert entry.method == "gamma"
    assert entry.diagram == ArcDiagram.gamma(6, 3)
    assert entry.word == CrossingWord(4, [])


def test_type_a_uses_closed_form_under_psi(a6_zigzag):
    engine = DescentEngine(a6_zigzag)
    entry = engine.realize((1, 1, 1, 1, 1, 1), (1, 2, 4, 5, 6, 3))
    _assert_sound(entry, a6_zigzag, engine.root_system)
    assert entry.method == "type_a_closed_form"


def test_unrealized_entry():
    entry = RealizationEntry((1, 1))
    assert not entry.realized
    assert entry.crossings == 0
    assert entry.word is None


# ----------------------------------------------------------------------
# Surgery steps
# ----------------------------------------------------------------------

def test_leaf_loop_extend_adds_the_leaf(a3_linear):
    rs = RootSystem.from_quiver(a3_linear)
    d = leaf_loop_extend(ArcDiagram.gamma(3, 2), 3, IDENTITY, a3_linear, rs)
    assert d.crossing_word() == CrossingWord(2, [3])
    assert realizes(d, IDENTITY, rs, (0, 1, 1))


def test_leaf_loop_extend_errors(a3_linear):
    rs = RootSystem.from_quiver(a3_linear)
    with pytest.raises(ValueError):
        leaf_loop_extend(ArcDiagram.gamma(3, 1), 2, IDENTITY, a3_linear, rs)
    with pytest.raises(ValueError):
        leaf_loop_extend(ArcDiagram.gamma(3, 2), 1, (2, 1, 3), a3_linear, rs)
    with pytest.raises(ValueError):
        # s_3 sends alpha_3 to its negative
        leaf_loop_extend(ArcDiagram.gamma(3, 3), 3, IDENTITY, a3_linear, rs)


def test_coxeter_lift_needs_a_larger_root(a3_linear):
    rs = RootSystem.from_quiver(a3_linear)
    with pytest.raises(ValueError):
        coxeter_lift(ArcDiagram.gamma(3, 3), IDENTITY, rs, 1)
    with pytest.raises(ValueError):
        coxeter_lift(ArcDiagram.right_sweep(3, 1), IDENTITY, rs, -1)


def test_coxeter_lift_in_d6(d6_quiver):
    rs = RootSystem.from_quiver(d6_quiver)
    pi = (1, 2, 3, 6, 5, 4)
    alpha = (1, 1, 2, 1, 1, 2)
    beta = rs.coxeter_apply(pi, alpha, 1)
    entry = DescentEngine(d6_quiver, fixed_permutation=True).realize(beta, pi)
    assert entry.realized
    d = coxeter_lift(entry.diagram, pi, rs, -1)
    assert realizes(d, pi, rs, alpha)


def test_failures_are_printed_when_enabled(a3_linear, monkeypatch, capsys):
    engine = DescentEngine(a3_linear, use_search=False)
    monkeypatch.setattr(settings, "PRINT_DESCENT_FAILURES", True)
    entry = engine.descent_construct((1, 1, 1), [])
    assert not entry.realized
    out = capsys.readouterr().out
    assert out.startswith("SYSTEM STATUS: no curve for root 1 1 1")


def test_failures_are_quiet_by_default(a3_linear, capsys):
    engine = DescentEngine(a3_linear, use_search=False)
    assert not engine.descent_construct((1, 1, 1), []).realized
    assert capsys.readouterr().out == ""
