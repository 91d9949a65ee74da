import copy
import json
import os

import pytest

from src import settings
from src.run_config import RunConfig, resolve_path

REPO_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


@pytest.fixture
def default_config() -> dict:
    with open(os.path.join(REPO_ROOT, "config", "default", "config.json")) as f:
        return json.load(f)


def test_default_config_loads(default_config):
    config = RunConfig.from_config(default_config)
    assert config.budget is None
    assert config.jobs == 1
    assert config.e8_budget_schedule == [0, 20, 30, 40]
    assert config.header()["budget"] == "default"
    assert config.resolved_fixtures_dir == os.path.join(REPO_ROOT, "fixtures")


@pytest.mark.parametrize("section, key", [
    ("search", "max_nodes"),
    ("search", "budget"),
    ("campaign", "seed"),
    ("fuzz", "depth"),
    ("e8", "budget_schedule"),
    ("output", "run_log_path"),
])
def test_missing_keys(default_config, section, key):
    broken = copy.deepcopy(default_config)
    del broken[section][key]
    with pytest.raises(KeyError) as e:
        RunConfig.from_config(broken)
    assert key in str(e.value)


def test_missing_section(default_config):
    del default_config["campaign"]
    with pytest.raises(KeyError):
        RunConfig.from_config(default_config)


@pytest.mark.parametrize("section, key, value", [
    ("search", "max_nodes", "many"),
    ("search", "budget", 2.5),
    ("campaign", "jobs", 0),
    ("campaign", "seed", True),
    ("e8", "budget_schedule", [0, "x"]),
])
def test_bad_values(default_config, section, key, value):
    default_config[section][key] = value
    with pytest.raises(ValueError):
        RunConfig.from_config(default_config)


def test_overrides_ignore_none():
    config = RunConfig(seed=3).with_overrides(seed=None, budget=12, mode="strict")
    assert config.seed == 3
    assert config.budget == 12
    assert config.mode == "strict"
    with pytest.raises(KeyError):
        RunConfig().with_overrides(colour="red")


def test_constructor_checks():
    with pytest.raises(ValueError):
        RunConfig(mode="fast")
    with pytest.raises(ValueError):
        RunConfig(budget=-1)
    with pytest.raises(ValueError):
        RunConfig(jobs=0)


def test_defaults_follow_settings():
    config = RunConfig()
    assert config.max_nodes == settings.SEARCH_MAX_NODES
    assert config.seed == settings.DEFAULT_SEED
    assert config.resolved_run_log_path is None


def test_resolve_path():
    assert resolve_path("__rel__/out") == os.path.join(REPO_ROOT, "out")
    assert resolve_path("__rel__\\logs\\run.csv") == os.path.join(REPO_ROOT, "logs/run.csv")
    assert resolve_path("/tmp/x") == "/tmp/x"
