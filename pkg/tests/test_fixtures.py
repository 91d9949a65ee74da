import os

import pytest

from src.fixtures import TableFixture, audit_fixture, load_fixtures, load_residual_list
from src.realization import DescentEngine
from src.root_system import RootSystem, parse_root


def test_all_rows_load(fixtures_dir):
    fixtures = load_fixtures(fixtures_dir)
    assert len(fixtures) == 24
    assert fixtures[0].name == "e7/table1/row1"
    assert all(fx.quiver.dynkin_type() == "E7" for fx in fixtures)


def test_every_row_passes_the_audit(fixtures_dir):
    for fx in load_fixtures(fixtures_dir):
        audit = audit_fixture(fx)
        assert audit.ok, audit.summary_line()


def test_first_row_content(fixtures_dir):
    fx = TableFixture.load(os.path.join(fixtures_dir, "e7", "table1", "row1"))
    assert fx.permutation == (2, 3, 7, 6, 5, 4, 1)
    assert fx.root == (1, 1, 2, 3, 2, 1, 3)
    assert fx.diagram.start == 3
    assert fx.diagram.crossing_count == 20


def test_audit_summary_line(fixtures_dir):
    fx = load_fixtures(fixtures_dir)[0]
    line = audit_fixture(fx).summary_line()
    assert line.startswith("e7/table1/row1: ok planar=True")
    assert "crossings=20" in line


def test_engine_picks_up_matching_fixture(fixtures_dir):
    fx = load_fixtures(fixtures_dir)[0]
    engine = DescentEngine(fx.quiver, fixed_permutation=True, fixtures=[fx], use_search=False)
    entry = engine.realize(fx.root, fx.permutation)
    assert entry.realized
    assert entry.permutation == fx.permutation


def test_missing_files(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_fixtures(str(tmp_path / "nowhere"))
    (tmp_path / "row").mkdir()
    (tmp_path / "row" / "diagram.txt").write_text("start 1\n")
    with pytest.raises(FileNotFoundError):
        load_fixtures(str(tmp_path))


@pytest.mark.slow
def test_search_finds_a_witness_for_every_row(fixtures_dir):
    for fx in load_fixtures(fixtures_dir):
        audit = audit_fixture(fx, search=True)
        assert audit.search is not None
        assert audit.ok, audit.summary_line()


# ----------------------------------------------------------------------
# Tabulated E8 residuals
# ----------------------------------------------------------------------

def test_residual_list_loads(fixtures_dir, e8_quiver):
    listed = load_residual_list(fixtures_dir)
    assert len(listed) == 16
    assert listed.quiver == e8_quiver
    assert parse_root("1 2 2 3 3 2 1 / 1", 8, "E8") in listed
    rs = RootSystem.from_quiver(e8_quiver)
    assert all(rs.is_positive_root(root) for root in listed.roots)


def test_residual_list_is_optional(tmp_path):
    assert load_residual_list(str(tmp_path)) is None
    (tmp_path / "e8" / "residuals").mkdir(parents=True)
    with pytest.raises(FileNotFoundError):
        load_residual_list(str(tmp_path))
