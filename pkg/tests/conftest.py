import os
import sys
from typing import List

import numpy as np
import pytest

# Repository root on sys.path so tests import `src.*` the same way main.py does
REPO_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if REPO_ROOT not in sys.path:
    sys.path.insert(0, REPO_ROOT)

from src import settings
from src.arc_diagram import ArcDiagram
from src.quiver import Quiver, path_quiver
from src.run_config import RunConfig


@pytest.fixture(autouse=True)
def _quiet_status(monkeypatch):
    monkeypatch.setattr(settings, "PRINT_CAMPAIGN_STATUS", False)


@pytest.fixture
def a3_linear() -> Quiver:
    return path_quiver(3)


@pytest.fixture
def d5_quiver() -> Quiver:
    # 4 -> 5, 5 -> 3, 2 -> 5, 1 -> 2
    return Quiver(5, [(4, 5), (5, 3), (2, 5), (1, 2)])


@pytest.fixture
def d6_quiver() -> Quiver:
    return Quiver(6, [(1, 2), (2, 3), (3, 6), (6, 4), (6, 5)])


@pytest.fixture
def a6_zigzag() -> Quiver:
    # 1 -> 2 -> 3 <- 4 -> 5 -> 6
    return Quiver(6, [(1, 2), (2, 3), (4, 3), (4, 5), (5, 6)])


@pytest.fixture
def e8_quiver() -> Quiver:
    return Quiver(8, [(1, 6), (2, 3), (3, 4), (5, 4), (8, 5), (8, 7), (8, 6)])


@pytest.fixture
def fixtures_dir() -> str:
    return os.path.join(REPO_ROOT, "fixtures")


@pytest.fixture
def small_config(tmp_path) -> RunConfig:
    return RunConfig(
        max_nodes=200_000,
        out_dir=str(tmp_path / "out"),
        run_log_path=str(tmp_path / "logs" / "run_log.csv"),
        fixtures_dir=os.path.join(REPO_ROOT, "fixtures"),
        affine_sample=5,
        e8_budget_schedule=[0],
    )


def random_diagrams(n: int, count: int, length: int, seed: int) -> List[ArcDiagram]:
    """
    Curves obtained by applying random braid words to straight curves.
    """
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        d = ArcDiagram.gamma(n, int(rng.integers(1, n + 1)))
        for _ in range(length):
            i = int(rng.integers(1, n))
            d = d.braid_apply(i, inverse=bool(rng.integers(2)))
        out.append(d)
    return out
