import time
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from src import settings
from src.affine import affine_a_quiver, affine_a_roots, family_of
from src.arc_diagram import ArcDiagram
from src.curve_class import associated_root, realizes
from src.fixtures import ResidualList, TableFixture
from src.logger import RunLog
from src.permutations import format_permutation, sample_pq, unimodal_psi
from src.quiver import Quiver, orientations_up_to_automorphism
from src.realization import DescentEngine, RealizationEntry
from src.report import RealizationReport, display_root
from src.root_system import Root, RootSystem, leq_d, sign_of
from src.run_config import RunConfig
from src.search import bounded_search
from src.type_a import construct_type_a_strict, standardize, type_a_interval


def _status(message: str) -> None:
    if settings.PRINT_CAMPAIGN_STATUS:
        print(f"SYSTEM STATUS: {message}")


# ----------------------------------------------------------------------
# Worker tasks (module level so they pickle)
# ----------------------------------------------------------------------

def _engine(q: Quiver, config: RunConfig, fixtures: Sequence[TableFixture], fixed: bool,
            use_search: bool = True) -> DescentEngine:
    return DescentEngine(
        q,
        fixed_permutation=fixed,
        commutation_cap=config.commutation_cap,
        fixtures=fixtures,
        search_budget=config.budget,
        search_slack=config.budget_slack,
        max_nodes=config.max_nodes,
        use_search=use_search,
    )


def _union_task(args: Tuple) -> List[RealizationEntry]:
    q, config, fixtures, roots, perms, use_search = args
    engine = _engine(q, config, fixtures, fixed=False, use_search=use_search)
    return [engine.descent_construct(alpha, perms) for alpha in roots]


def _fixed_pi_task(args: Tuple) -> List[Root]:
    q, config, fixtures, roots, pi = args
    engine = _engine(q, config, fixtures, fixed=True)
    return [alpha for alpha in roots if not engine.realize(alpha, pi).realized]


def _run_tasks(fn: Callable, tasks: List[Tuple], jobs: int) -> List:
    """
    Runs tasks in order, in worker processes when jobs > 1. Results come back in task order.
    """
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, tasks))


def _chunks(items: Sequence, count: int) -> List[List]:
    count = max(1, min(count, len(items)))
    size = -(-len(items) // count)
    return [list(items[i:i + size]) for i in range(0, len(items), size)]


# ----------------------------------------------------------------------
# Coverage by Coxeter orbits of theta curves
# ----------------------------------------------------------------------

def theta_curve(n: int, i: int) -> ArcDiagram:
    """
    Curve from position i over positions i+1..n, then under everything to b. Its associated
    root under pi is theta_i.
    """
    return ArcDiagram.right_sweep(n, i)


def orbit_coverage_missing(q: Quiver, pi: Sequence[int], rs: Optional[RootSystem] = None) -> List[Root]:
    """
    Positive roots not reached by the curves c_wrap^k(theta_curve(i)), 1 <= i <= n, 0 <= k < h.
    An empty list means the wrapped theta curves cover the positive roots.
    """
    rs = rs if rs is not None else RootSystem.from_quiver(q)
    h = rs.coxeter_number
    reached = set()
    for i in range(1, q.n + 1):
        d = theta_curve(q.n, i)
        for _ in range(h):
            reached.add(associated_root(d, pi, rs))
            d = d.c_wrap(1)
    return [alpha for alpha in rs.positive_roots() if alpha not in reached]


# ----------------------------------------------------------------------
# Finite type
# ----------------------------------------------------------------------

def strict_entries(q: Quiver, rs: RootSystem) -> Tuple[Tuple[int, ...], List[RealizationEntry]]:
    """
    Type A closed form: every positive root by a strictly increasing curve under psi(q).

    Returns:
        psi(q) in the quiver's own labels and one entry per positive root.
    """
    std, labels = standardize(q)
    inverse = {new: old for old, new in labels.items()}
    psi = tuple(inverse[v] for v in unimodal_psi(std))
    entries = []
    for alpha in rs.positive_roots():
        std_alpha = [0] * q.n
        for old, new in labels.items():
            std_alpha[new - 1] = alpha[old - 1]
        _, d = construct_type_a_strict(std, *type_a_interval(std_alpha))
        if realizes(d, psi, rs, alpha, strict=True):
            entries.append(RealizationEntry(alpha, psi, d, "type_a_closed_form"))
        else:
            entries.append(RealizationEntry(alpha, trace=[f"closed form under {format_permutation(psi)} is not strictly increasing"]))
    return psi, entries


def verify_theorem(q: Quiver, config: RunConfig, name: str = "quiver",
                   fixtures: Sequence[TableFixture] = (), run_log: Optional[RunLog] = None) -> RealizationReport:
    """
    Realizes every positive root of a finite-type quiver.

    In "nd" mode each root is realized under some permutation of P_Q (all of P_Q when it has at
    most config.pq_cap elements, otherwise a seeded sample). In "strict" mode (type A only) every
    root must be realized by a strictly increasing curve under psi(q). When any_pi is on (default
    for types A and D) every root is additionally realized under each permutation separately;
    failures of that check go to report.failures.

    Raises:
        NotFiniteTypeError: If q is not of finite type.
        ValueError: If strict mode is requested for a quiver not of type A.
    """
    rs = RootSystem.from_quiver(q)
    kind = q.dynkin_type()
    roots = rs.positive_roots()
    timing: Dict[str, float] = {}
    started = time.perf_counter()

    if config.mode == "strict":
        if not kind.startswith("A"):
            raise ValueError(f"Strict mode needs a type A quiver, got type: {kind}")
        _status(f"strict check of {name} ({kind}), {len(roots)} roots")
        psi, entries = strict_entries(q, rs)
        perms, exhaustive = [psi], True
    else:
        perms, exhaustive = sample_pq(q, config.pq_cap, config.pq_sample, config.seed)
        _status(f"verifying {name} ({kind}), {len(roots)} roots over {len(perms)} permutations")
        tasks = [(q, config, tuple(fixtures), chunk, perms, True) for chunk in _chunks(roots, config.jobs)]
        entries = [e for part in _run_tasks(_union_task, tasks, config.jobs) for e in part]
    timing["realize"] = round(time.perf_counter() - started, 3)

    report = RealizationReport(name, kind, config.mode, entries, config.header(), display_labels(q))
    report.extra["permutations"] = len(perms)
    report.extra["permutations_exhaustive"] = exhaustive
    if not exhaustive:
        report.notes.append(f"P_Q larger than {config.pq_cap}: seeded sample of {len(perms)} permutations")

    any_pi = config.any_pi if config.any_pi is not None else kind[0] in ("A", "D")
    if any_pi and config.mode == "nd":
        started = time.perf_counter()
        tasks = [(q, config, tuple(fixtures), roots, pi) for pi in perms]
        for pi, missing in zip(perms, _run_tasks(_fixed_pi_task, tasks, config.jobs)):
            report.failures += [f"pi {format_permutation(pi)}: root {' '.join(map(str, a))} not realized" for a in missing]
        report.extra["any_pi_checked"] = len(perms)
        timing["any_pi"] = round(time.perf_counter() - started, 3)

    if perms:
        missing = orbit_coverage_missing(q, perms[0], rs)
        report.extra["orbit_coverage"] = not missing
        report.failures += [f"orbit coverage under {format_permutation(perms[0])} misses {' '.join(map(str, a))}" for a in missing]

    report.timing = timing
    _log_entries(run_log, name, report.entries)
    _status(f"{name}: {report.realized}/{report.total} realized, {len(report.failures)} check failures")
    return report


# ----------------------------------------------------------------------
# Affine A
# ----------------------------------------------------------------------

def verify_affine_a(k: int, l: int, g_max: int, config: RunConfig,
                    run_log: Optional[RunLog] = None) -> RealizationReport:
    """
    Realizes every root of the affine A families up to level g_max under the fixed permutation
    (s, p_1..p_k, q_1..q_l, t), then confirms a seeded sample of them by bounded search.
    """
    if g_max < 1:
        raise ValueError(f"g_max must be at least 1, got: {g_max}")
    q = affine_a_quiver(k, l)
    name = f"affine-A k={k} l={l}"
    pi = tuple(range(1, q.n + 1))
    roots = affine_a_roots(k, l, g_max)
    _status(f"verifying {name}, {len(roots)} family roots up to level {g_max}")
    started = time.perf_counter()
    engine = _engine(q, config, (), fixed=True, use_search=False)
    entries = [engine.realize(alpha, pi) for alpha in roots]
    report = RealizationReport(name, q.dynkin_type(), "affine", entries, config.header())
    report.timing["realize"] = round(time.perf_counter() - started, 3)

    rng = np.random.default_rng(config.seed)
    count = min(config.affine_sample, len(roots))
    sample = sorted(int(i) for i in rng.choice(len(roots), size=count, replace=False)) if count else []
    started = time.perf_counter()
    confirmed = 0
    for idx in sample:
        alpha = roots[idx]
        result = bounded_search(engine.root_system, pi, alpha, config.budget, config.max_nodes)
        if result.found:
            confirmed += 1
        else:
            families = ", ".join(f"g={g} u={u} v={v} {variant}" for g, u, v, variant in family_of(alpha, k, l))
            report.failures.append(f"search cross-check: root {' '.join(map(str, alpha))} ({families}) not found: {result}")
    report.timing["cross_check"] = round(time.perf_counter() - started, 3)
    report.extra["cross_check_sampled"] = len(sample)
    report.extra["cross_check_confirmed"] = confirmed

    _log_entries(run_log, name, report.entries)
    _status(f"{name}: {report.realized}/{report.total} realized, {confirmed}/{len(sample)} confirmed by search")
    return report


# ----------------------------------------------------------------------
# E8
# ----------------------------------------------------------------------

def e8_campaign(q: Quiver, config: RunConfig, pi: Optional[Sequence[int]] = None, name: str = "quiver",
                run_log: Optional[RunLog] = None, listed: Optional[ResidualList] = None) -> RealizationReport:
    """
    Descent over all positive roots of an E8 quiver, then escalating-budget search for the roots
    descent leaves open. Unrealized roots are report content, not failures.

    For every residual root the report records c_pi alpha and c_pi^-1 alpha, how alpha compares
    with each in dominance order, whether neither is a positive root below
    alpha (so Coxeter descent cannot start from pi), and the reducing pair when there is one.
    With a residual list for the same orientation, each residual is also marked as listed or not.

    Args:
        q: Type E8 quiver.
        config: Run configuration; e8_budget_schedule gives the search budgets in order.
        pi: Permutation used for the residual classification and search (first of P_Q if None).
        name: Report name.
        run_log: Optional run log.
        listed: Tabulated residual roots; ignored unless its quiver is q.
    """
    kind = q.dynkin_type()
    if kind != "E8":
        raise ValueError(f"E8 campaign needs a type E8 quiver, got type: {kind}")
    rs = RootSystem.from_quiver(q)
    perms, exhaustive = sample_pq(q, config.pq_cap, config.pq_sample, config.seed)
    pi = tuple(pi) if pi is not None else perms[0]
    _status(f"E8 campaign on {name}: descent over {len(perms)} permutations")

    started = time.perf_counter()
    tasks = [(q, config, (), chunk, perms, False) for chunk in _chunks(rs.positive_roots(), config.jobs)]
    entries = [e for part in _run_tasks(_union_task, tasks, config.jobs) for e in part]
    timing = {"descent": round(time.perf_counter() - started, 3)}
    residual = [e.root for e in entries if not e.realized]
    by_root = {e.root: e for e in entries}
    _status(f"{name}: descent realized {len(entries) - len(residual)}/{len(entries)}, {len(residual)} residual")

    started = time.perf_counter()
    display = display_labels(q)
    records = []
    for alpha in residual:
        forward = rs.coxeter_apply(pi, alpha, 1)
        backward = rs.coxeter_apply(pi, alpha, -1)
        record = {
            "root": list(alpha),
            "display": display_root(alpha, kind, display),
            "c_pi": list(forward),
            "c_pi_inverse": list(backward),
            "compare_c_pi": leq_d(alpha, forward),
            "compare_c_pi_inverse": leq_d(alpha, backward),
            "c_pi_positive": sign_of(forward) == 1,
            "c_pi_inverse_positive": sign_of(backward) == 1,
            "descent_blocked": not (_descends(alpha, forward) or _descends(alpha, backward)),
            "reducing_pair": list(rs.reducing_pair(alpha) or []),
            "search": [],
        }
        if listed is not None and listed.quiver == q:
            record["listed"] = alpha in listed
        for budget in config.e8_budget_schedule:
            result = bounded_search(rs, pi, alpha, budget, config.max_nodes)
            record["search"].append({"budget": budget, "found": result.found, "nodes": result.nodes,
                                     "exhausted": result.exhausted})
            if result.found:
                by_root[alpha] = RealizationEntry(alpha, pi, result.diagram, "bounded_search", result.nodes)
                break
        records.append(record)
    timing["search"] = round(time.perf_counter() - started, 3)

    report = RealizationReport(name, kind, "e8", list(by_root.values()), config.header(), display)
    report.header["pi"] = format_permutation(pi)
    report.header["budget_schedule"] = " ".join(str(b) for b in config.e8_budget_schedule)
    report.extra["descent_realized"] = len(entries) - len(residual)
    report.extra["residuals"] = records
    report.extra["permutations_exhaustive"] = exhaustive
    if listed is not None and listed.quiver == q:
        report.extra["listed_residuals"] = len(listed)
        report.extra["unlisted_residuals"] = [r["display"] for r in records if not r["listed"]]
        report.extra["listed_realized_by_descent"] = sum(1 for root in listed.roots if root not in set(residual))
    for r in records:
        report.notes.append(
            f"residual {r['display']}: c_pi {r['compare_c_pi']}, c_pi^-1 {r['compare_c_pi_inverse']}, "
            f"descent {'blocked' if r['descent_blocked'] else 'open'}, "
            f"search {'found' if any(s['found'] for s in r['search']) else 'not found'}"
        )
    report.timing = timing
    _log_entries(run_log, name, report.entries)
    return report


# ----------------------------------------------------------------------
# Helpers
# ----------------------------------------------------------------------

def _descends(alpha: Root, image: Root) -> bool:
    """
    True if image is a positive root strictly below alpha, so descent may continue from it.
    """
    return sign_of(image) == 1 and leq_d(alpha, image) == "greater"


def display_labels(q: Quiver) -> Optional[Dict[int, int]]:
    """
    Relabelling to standard labels for types with a two-row root picture (D and E), else None.
    """
    kind = q.dynkin_type()
    if kind[0] not in ("D", "E"):
        return None
    return q.paper_labeling()


def _log_entries(run_log: Optional[RunLog], name: str, entries: Sequence[RealizationEntry]) -> None:
    if run_log is None:
        return
    for e in entries:
        run_log.log_entry(name, e)


def suite_quivers(kind: str) -> List[Tuple[str, Quiver]]:
    """
    Named quivers for a campaign over a type: every orientation up to graph automorphism.
    """
    return [(f"{kind}-{idx}", q) for idx, q in enumerate(orientations_up_to_automorphism(kind), start=1)]
