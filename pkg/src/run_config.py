import os
from typing import Dict, List, Optional

from src import settings

# Repository root (target of the __rel__ path prefix)
_REPO_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

# Relative path keyword
RELATIVE_PATH_KEYWORD = "__rel__"


def resolve_path(path: str) -> str:
    """
    Converts a config path string to an absolute path.

    Handles the __rel__ prefix (relative to repo root) and normalises Windows-style backslashes.
    """
    path = path.replace("\\", "/")
    if path.startswith(RELATIVE_PATH_KEYWORD + "/"):
        return os.path.join(_REPO_ROOT, path[len(RELATIVE_PATH_KEYWORD) + 1:])
    return path


def _int_key(section: Dict, section_name: str, key: str, minimum: int = 0) -> int:
    if key not in section:
        raise KeyError(f"Run config '{section_name}' missing key: '{key}'")
    value = section[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValueError(f"Run config '{section_name}.{key}' must be an integer, got: {type(value).__name__}")
    if value < minimum:
        raise ValueError(f"Run config '{section_name}.{key}' must be at least {minimum}, got: {value}")
    return value


def _section(config: Dict, name: str) -> Dict:
    if name not in config:
        raise KeyError(f"Run config missing key: '{name}'")
    section = config[name]
    if not isinstance(section, dict):
        raise ValueError(f"Run config '{name}' must be an object, got: {type(section).__name__}")
    return section


class RunConfig:
    """
    Effective run parameters: config file values with command-line overrides applied.
    """

    def __init__(self, budget: Optional[int] = None, budget_slack: int = settings.SEARCH_BUDGET_SLACK,
                 max_nodes: int = settings.SEARCH_MAX_NODES, pq_cap: int = settings.PQ_CAP,
                 pq_sample: int = settings.PQ_SAMPLE, commutation_cap: int = settings.COMMUTATION_CAP,
                 jobs: int = 1, seed: int = settings.DEFAULT_SEED, fuzz_sequences: int = 1000,
                 fuzz_depth: int = 10, affine_sample: int = 20, e8_budget_schedule: Optional[List[int]] = None,
                 out_dir: str = "__rel__/out", run_log_path: Optional[str] = None,
                 fixtures_dir: str = "__rel__/fixtures", mode: str = "nd", any_pi: Optional[bool] = None) -> None:
        """
        Initializes a RunConfig.

        Args:
            budget: Crossing budget of the search (None for 2 * height + n + budget_slack).
            budget_slack: Extra crossings on top of the default budget.
            max_nodes: Node cap per search call (0 disables it).
            pq_cap: Largest P_Q verified exhaustively.
            pq_sample: Sample size when P_Q is larger than pq_cap.
            commutation_cap: Largest commutation class explored in a Coxeter step.
            jobs: Worker processes for campaigns.
            seed: Seed of every random choice (sampling, fuzzing).
            fuzz_sequences: Random mutation sequences in the sign coherence fuzz.
            fuzz_depth: Length of each fuzz sequence.
            affine_sample: Affine family roots cross-checked by search.
            e8_budget_schedule: Increasing crossing budgets tried on E8 residual roots.
            out_dir: Report directory.
            run_log_path: CSV run log (None disables it).
            fixtures_dir: Table fixture directory.
            mode: "nd" or "strict".
            any_pi: Check every permutation separately (None picks it by type: A and D).
        """
        if mode not in ("nd", "strict"):
            raise ValueError(f"Mode must be 'nd' or 'strict', got: {mode!r}")
        if budget is not None and budget < 0:
            raise ValueError(f"Budget must be non-negative, got: {budget}")
        if jobs < 1:
            raise ValueError(f"Jobs must be at least 1, got: {jobs}")
        self.budget: Optional[int] = budget
        self.budget_slack: int = budget_slack
        self.max_nodes: int = max_nodes
        self.pq_cap: int = pq_cap
        self.pq_sample: int = pq_sample
        self.commutation_cap: int = commutation_cap
        self.jobs: int = jobs
        self.seed: int = seed
        self.fuzz_sequences: int = fuzz_sequences
        self.fuzz_depth: int = fuzz_depth
        self.affine_sample: int = affine_sample
        self.e8_budget_schedule: List[int] = list(e8_budget_schedule or [0, 20, 30, 40])
        self.out_dir: str = out_dir
        self.run_log_path: Optional[str] = run_log_path
        self.fixtures_dir: str = fixtures_dir
        self.mode: str = mode
        self.any_pi: Optional[bool] = any_pi

    def __str__(self) -> str:
        return "RunConfig(" + ", ".join(f"{k} = {v}" for k, v in self.header().items()) + ")"

    @classmethod
    def from_config(cls, config: Dict) -> "RunConfig":
        """
        Initializes a RunConfig object from a configuration dictionary.

        Args:
            config: The target configuration dict.
        """
        search = _section(config, "search")
        campaign = _section(config, "campaign")
        fuzz = _section(config, "fuzz")
        e8 = _section(config, "e8")
        output = _section(config, "output")
        if "fixtures_dir" not in config:
            raise KeyError("Run config missing key: 'fixtures_dir'")

        if "budget" not in search:
            raise KeyError("Run config 'search' missing key: 'budget'")
        budget = search["budget"]
        if budget is not None and (isinstance(budget, bool) or not isinstance(budget, int)):
            raise ValueError(f"Run config 'search.budget' must be an integer or null, got: {type(budget).__name__}")

        if "budget_schedule" not in e8:
            raise KeyError("Run config 'e8' missing key: 'budget_schedule'")
        schedule = e8["budget_schedule"]
        if not isinstance(schedule, list) or not all(isinstance(b, int) and not isinstance(b, bool) for b in schedule):
            raise ValueError(f"Run config 'e8.budget_schedule' must be a list of integers, got: {schedule!r}")

        for key in ("out_dir", "run_log_path"):
            if key not in output:
                raise KeyError(f"Run config 'output' missing key: '{key}'")
        out_dir = output["out_dir"]
        if not isinstance(out_dir, str):
            raise ValueError(f"Run config 'output.out_dir' must be a string, got: {type(out_dir).__name__}")
        run_log_path = output["run_log_path"]
        if run_log_path is not None and not isinstance(run_log_path, str):
            raise ValueError(f"Run config 'output.run_log_path' must be a string or null, got: {type(run_log_path).__name__}")

        fixtures_dir = config["fixtures_dir"]
        if not isinstance(fixtures_dir, str):
            raise ValueError(f"Run config 'fixtures_dir' must be a string, got: {type(fixtures_dir).__name__}")

        return cls(
            budget = budget,
            budget_slack = _int_key(search, "search", "budget_slack"),
            max_nodes = _int_key(search, "search", "max_nodes"),
            pq_cap = _int_key(campaign, "campaign", "pq_cap", 1),
            pq_sample = _int_key(campaign, "campaign", "pq_sample", 1),
            commutation_cap = _int_key(campaign, "campaign", "commutation_cap", 1),
            jobs = _int_key(campaign, "campaign", "jobs", 1),
            seed = _int_key(campaign, "campaign", "seed"),
            affine_sample = _int_key(campaign, "campaign", "affine_sample"),
            fuzz_sequences = _int_key(fuzz, "fuzz", "sequences"),
            fuzz_depth = _int_key(fuzz, "fuzz", "depth", 1),
            e8_budget_schedule = schedule,
            out_dir = out_dir,
            run_log_path = run_log_path,
            fixtures_dir = fixtures_dir,
        )

    def with_overrides(self, **overrides) -> "RunConfig":
        """
        Copy with the given fields replaced; None values leave a field unchanged.
        """
        values = dict(vars(self))
        for key, value in overrides.items():
            if key not in values:
                raise KeyError(f"Unknown run config field: '{key}'")
            if value is not None:
                values[key] = value
        return RunConfig(**values)

    @property
    def resolved_out_dir(self) -> str:
        return resolve_path(self.out_dir)

    @property
    def resolved_fixtures_dir(self) -> str:
        return resolve_path(self.fixtures_dir)

    @property
    def resolved_run_log_path(self) -> Optional[str]:
        return resolve_path(self.run_log_path) if self.run_log_path else None

    def header(self) -> Dict[str, str]:
        """
        Report header lines; no paths, so reports stay identical across checkouts.
        """
        return {
            "seed": str(self.seed),
            "budget": "default" if self.budget is None else str(self.budget),
            "budget_slack": str(self.budget_slack),
            "max_nodes": str(self.max_nodes),
            "pq_cap": str(self.pq_cap),
            "pq_sample": str(self.pq_sample),
            "commutation_cap": str(self.commutation_cap),
        }
