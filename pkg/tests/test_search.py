import pytest

from src.arc_diagram import ArcDiagram
from src.curve_class import realizes
from src.permutations import enumerate_pq
from src.quiver import dynkin_quivers
from src.root_system import RootSystem
from src.search import BoundedSearch, bounded_search, default_budget

IDENTITY = (1, 2, 3)


@pytest.fixture
def rs(a3_linear) -> RootSystem:
    return RootSystem.from_quiver(a3_linear)


def test_simple_root_found_without_crossings(rs):
    result = bounded_search(rs, IDENTITY, (0, 1, 0), budget=0)
    assert result.found
    assert result.diagram == ArcDiagram.gamma(3, 2)


def test_zero_budget_cannot_reach_non_simple_root(rs):
    result = bounded_search(rs, IDENTITY, (1, 1, 0), budget=0)
    assert not result.found
    assert result.exhausted


def test_highest_root_needs_one_crossing(rs):
    result = bounded_search(rs, IDENTITY, (1, 1, 1))
    assert result.found
    assert result.diagram.crossing_count == 1
    assert realizes(result.diagram, IDENTITY, rs, (1, 1, 1))


@pytest.mark.parametrize("kind", ["A4", "D4"])
def test_every_witness_is_sound(kind):
    q = dynkin_quivers(kind)[0]
    rs = RootSystem.from_quiver(q)
    pi = enumerate_pq(q)[0]
    for alpha in rs.positive_roots():
        result = bounded_search(rs, pi, alpha)
        if result.found:
            assert realizes(result.diagram, pi, rs, alpha)


def test_pruning_does_not_change_the_first_witness(rs):
    for alpha in rs.positive_roots():
        pruned = bounded_search(rs, IDENTITY, alpha, budget=3)
        plain = bounded_search(rs, IDENTITY, alpha, budget=3, prune=False)
        assert pruned.found == plain.found
        assert pruned.diagram == plain.diagram


def test_node_cap_stops_early(rs):
    result = bounded_search(rs, IDENTITY, (1, 1, 1), budget=5, max_nodes=1)
    assert not result.found
    assert not result.exhausted


def test_budget_checks(rs):
    assert default_budget((1, 1, 0), 3) == 7
    assert default_budget((1, 1, 0), 3, slack=2) == 9
    with pytest.raises(ValueError):
        bounded_search(rs, IDENTITY, (1, 1, 0), budget=-1)
    with pytest.raises(ValueError):
        BoundedSearch(rs, (1, 2), (1, 1, 0))
