from typing import Dict, List, Optional, Sequence, Tuple

from src import settings
from src.arc_diagram import ArcDiagram, CrossingWord
from src.curve_class import classify, realizes
from src.fixtures import TableFixture
from src.permutations import (Permutation, commutation_class, phi, phi_preimage, positions,
                              sub_positions, unimodal_psi)
from src.quiver import Quiver
from src.root_system import Root, RootSystem, leq_d, sign_of, support
from src.search import bounded_search, default_budget
from src.type_a import construct_type_a_strict, standardize, type_a_interval

# Strategy names, in the order they are tried
METHODS = (
    "gamma",
    "subquiver_lift",
    "type_a_closed_form",
    "leaf_loop",
    "coxeter_lift",
    "sweep",
    "table_fixture",
    "bounded_search",
)


class RealizationEntry:
    """
    Outcome for one root: the curve found (if any), the permutation it is read under, the
    strategy that produced it and search statistics.
    """

    def __init__(self, root: Root, permutation: Optional[Permutation] = None,
                 diagram: Optional[ArcDiagram] = None, method: Optional[str] = None,
                 nodes: int = 0, trace: Optional[List[str]] = None) -> None:
        self.root: Root = tuple(root)
        self.permutation: Optional[Permutation] = permutation
        self.diagram: Optional[ArcDiagram] = diagram
        self.method: Optional[str] = method
        self.nodes: int = nodes
        self.trace: List[str] = trace or []

    def __str__(self) -> str:
        return f"RealizationEntry(root = {self.root}, method = {self.method}, permutation = {self.permutation})"

    @property
    def realized(self) -> bool:
        return self.diagram is not None

    @property
    def crossings(self) -> int:
        return self.diagram.crossing_count if self.diagram is not None else 0

    @property
    def word(self) -> Optional[CrossingWord]:
        """
        Crossing word in vertex labels.
        """
        if self.diagram is None or self.permutation is None:
            return None
        return self.diagram.crossing_word().apply(self.permutation)


def coxeter_lift(d: ArcDiagram, pi: Sequence[int], rs: RootSystem, direction: int) -> ArcDiagram:
    """
    Wraps a non-decreasing curve with root alpha around all marked points, giving a curve with
    root c_pi^direction alpha.

    Raises:
        ValueError: If alpha is not strictly below c_pi^direction alpha.
    """
    alpha = classify(d, pi, rs).root
    target = rs.coxeter_apply(pi, alpha, direction)
    if leq_d(alpha, target) != "less":
        raise ValueError(f"Coxeter lift needs alpha < c^{direction} alpha, got {alpha} and {target}")
    return d.c_wrap(direction)


def leaf_loop_extend(d: ArcDiagram, leaf: int, pi: Sequence[int], q: Quiver, rs: RootSystem) -> ArcDiagram:
    """
    Loops a curve with root beta once around a leaf placed first or last by pi; the new root is
    s_leaf(beta), which must equal beta + alpha_leaf.

    Raises:
        ValueError: If leaf is not a leaf, pi does not place it at an end, the reflection does not
            add alpha_leaf, or the curve passes the leaf's marked point.
    """
    if len(q.neighbors(leaf)) != 1:
        raise ValueError(f"Vertex {leaf} is not a leaf")
    p = positions(pi)[leaf]
    if p not in (1, q.n):
        raise ValueError(f"Permutation {tuple(pi)} places leaf {leaf} at position {p}, not at an end")
    beta = classify(d, pi, rs).root
    grown = rs.reflect(leaf, beta)
    expected = tuple(c + (1 if v == leaf else 0) for v, c in enumerate(beta, start=1))
    if grown != expected:
        raise ValueError(f"s_{leaf} does not add alpha_{leaf} to {beta}")
    return d.leaf_loop(p)


# Memoized result of a realization attempt: (permutation used, diagram, method)
Found = Tuple[Permutation, ArcDiagram, str]


class DescentEngine:
    """
    Realizes positive roots by non-decreasing curves, trying in order: simple roots, subquiver
    lifts, the type A closed form, leaf loops, Coxeter lifts, sweep curves, table fixtures and
    finally bounded search. Every curve is re-verified before it is returned.
    """

    def __init__(self, q: Quiver, rs: Optional[RootSystem] = None, fixed_permutation: bool = False,
                 commutation_cap: int = settings.COMMUTATION_CAP, fixtures: Sequence[TableFixture] = (),
                 search_budget: Optional[int] = None, search_slack: int = settings.SEARCH_BUDGET_SLACK,
                 max_nodes: int = settings.SEARCH_MAX_NODES, use_search: bool = True) -> None:
        """
        Initializes a DescentEngine.

        Args:
            q: Acyclic quiver.
            rs: Its root system (built from q if omitted).
            fixed_permutation: If True, every curve must be read under the permutation it was
                requested for; otherwise permutations with the same Coxeter element may be used.
            commutation_cap: Largest commutation class explored in a Coxeter step.
            fixtures: Table fixtures (standard labels) usable for this quiver.
            search_budget: Crossing budget of the search fallback (None for the default).
            search_slack: Extra crossings on top of the default budget.
            max_nodes: Node cap of the search fallback.
            use_search: If False, the search fallback is skipped.
        """
        self._q: Quiver = q
        self._rs: RootSystem = rs if rs is not None else RootSystem.from_quiver(q)
        self._n: int = q.n
        self._fixed: bool = fixed_permutation
        self._cap: int = commutation_cap if not fixed_permutation else 1
        self._search_budget: Optional[int] = search_budget
        self._search_slack: int = search_slack
        self._max_nodes: int = max_nodes
        self._use_search: bool = use_search
        self._memo: Dict[Tuple[Root, Permutation], Optional[Found]] = {}
        self._sub_engines: Dict[Tuple[int, ...], "DescentEngine"] = {}
        self._coxeter_cache: Dict[Permutation, bytes] = {}
        self._fixtures: List[Tuple[Permutation, Root, ArcDiagram, str]] = self._match_fixtures(fixtures)
        self._leaves: List[int] = [v for v in q.mutable_vertices if len(q.neighbors(v)) == 1] if q.n > 1 else []
        self._psi: Optional[Permutation] = None
        self._standard: Optional[Tuple[Quiver, Dict[int, int]]] = None
        if q.dynkin_type().startswith("A"):
            self._standard = standardize(q)
            inverse = {new: old for old, new in self._standard[1].items()}
            self._psi = tuple(inverse[v] for v in unimodal_psi(self._standard[0]))

    def __str__(self) -> str:
        return f"DescentEngine(quiver = {self._q}, fixed_permutation = {self._fixed}, memo = {len(self._memo)})"

    @property
    def quiver(self) -> Quiver:
        return self._q

    @property
    def root_system(self) -> RootSystem:
        return self._rs

    # ------------------------------------------------------------------
    # Public entry points
    # ------------------------------------------------------------------

    def realize(self, alpha: Sequence[int], pi: Sequence[int]) -> RealizationEntry:
        """
        Realizes alpha starting from one permutation (exactly that permutation when the engine
        is fixed, otherwise possibly one with the same Coxeter element).
        """
        alpha, pi = tuple(alpha), tuple(pi)
        trace: List[str] = []
        found = self._attempt(alpha, pi, trace)
        if found is None and self._use_search:
            result = bounded_search(self._rs, pi, alpha, self._budget_for(alpha), self._max_nodes)
            if result.found:
                return RealizationEntry(alpha, pi, result.diagram, "bounded_search", result.nodes)
            trace.append(f"pi {_fmt(pi)}: bounded_search: no witness ({result})")
        if found is None:
            return _failed(RealizationEntry(alpha, trace=trace))
        return RealizationEntry(alpha, found[0], found[1], found[2])

    def descent_construct(self, alpha: Sequence[int], permutations: Sequence[Sequence[int]]) -> RealizationEntry:
        """
        Realizes alpha for some permutation in a list (normally P_Q), descent first for every
        permutation, then search.
        """
        alpha = tuple(alpha)
        trace: List[str] = []
        for pi in permutations:
            found = self._attempt(alpha, tuple(pi), trace)
            if found is not None:
                return RealizationEntry(alpha, found[0], found[1], found[2])
        nodes = 0
        if self._use_search:
            budget = self._budget_for(alpha)
            for pi in permutations:
                result = bounded_search(self._rs, tuple(pi), alpha, budget, self._max_nodes)
                nodes += result.nodes
                if result.found:
                    return RealizationEntry(alpha, tuple(pi), result.diagram, "bounded_search", nodes)
            trace.append(f"bounded_search: no witness at budget {budget} over {len(permutations)} permutations")
        return _failed(RealizationEntry(alpha, nodes=nodes, trace=trace))

    # ------------------------------------------------------------------
    # Strategies
    # ------------------------------------------------------------------

    def _attempt(self, alpha: Root, pi: Permutation, trace: Optional[List[str]] = None) -> Optional[Found]:
        key = (alpha, pi)
        if trace is None and key in self._memo:
            return self._memo[key]
        found = None
        for method, strategy in (
            ("gamma", self._try_gamma),
            ("subquiver_lift", self._try_subquiver),
            ("type_a_closed_form", self._try_type_a),
            ("leaf_loop", self._try_leaf),
            ("coxeter_lift", self._try_coxeter),
            ("sweep", self._try_sweep),
            ("table_fixture", self._try_fixture),
        ):
            candidate, reason = strategy(alpha, pi)
            if candidate is None:
                if trace is not None and reason:
                    trace.append(f"pi {_fmt(pi)}: {method}: {reason}")
                continue
            pi_used, d = candidate
            if realizes(d, pi_used, self._rs, alpha):
                found = (pi_used, d, method)
                break
            if trace is not None:
                trace.append(f"pi {_fmt(pi)}: {method}: curve failed re-verification")
        self._memo[key] = found
        return found

    def _try_gamma(self, alpha: Root, pi: Permutation):
        supp = support(alpha)
        if len(supp) != 1 or alpha[supp[0] - 1] != 1:
            return None, None
        return (pi, ArcDiagram.gamma(self._n, positions(pi)[supp[0]])), None

    def _try_subquiver(self, alpha: Root, pi: Permutation):
        supp = support(alpha)
        if len(supp) == self._n:
            return None, None
        engine = self._sub_engine(tuple(supp))
        index = {v: i + 1 for i, v in enumerate(supp)}
        pi_sub = tuple(index[v] for v in phi(pi, supp))
        alpha_sub = tuple(alpha[v - 1] for v in supp)
        found = engine._attempt(alpha_sub, pi_sub)
        if found is None:
            return None, f"support {supp} not realized"
        used_big = tuple(supp[v - 1] for v in found[0])
        pi_used = pi if used_big == phi(pi, supp) else phi_preimage(self._q, used_big)
        if pi_used is None:
            return None, f"no extension of {_fmt(used_big)} in P_Q"
        return (pi_used, found[1].lift(sub_positions(pi_used, supp), self._n)), None

    def _try_type_a(self, alpha: Root, pi: Permutation):
        if self._psi is None or pi != self._psi:
            return None, None
        std, labels = self._standard
        std_alpha = [0] * self._n
        for old, new in labels.items():
            std_alpha[new - 1] = alpha[old - 1]
        first, last = type_a_interval(std_alpha)
        _, d = construct_type_a_strict(std, first, last)
        return (pi, d), None

    def _try_leaf(self, alpha: Root, pi: Permutation):
        if not self._rs.is_finite:
            return None, None
        reasons = []
        for leaf in self._leaves:
            if alpha[leaf - 1] < 1:
                continue
            beta = tuple(c - (1 if v == leaf else 0) for v, c in enumerate(alpha, start=1))
            if not self._rs.is_positive_root(beta) or self._rs.reflect(leaf, beta) != alpha:
                continue
            if self._fixed and positions(pi)[leaf] not in (1, self._n):
                continue
            found = self._attempt(beta, pi)
            if found is None:
                reasons.append(f"alpha - alpha_{leaf} not realized")
                continue
            try:
                d = leaf_loop_extend(found[1], leaf, found[0], self._q, self._rs)
            except ValueError as e:
                reasons.append(str(e))
                continue
            return (found[0], d), None
        return None, "; ".join(reasons) or None

    def _try_coxeter(self, alpha: Root, pi: Permutation):
        reasons = []
        for direction in (1, -1):
            beta = self._rs.coxeter_apply(pi, alpha, -direction)
            if sign_of(beta) != 1 or leq_d(beta, alpha) != "less":
                reasons.append(f"c^{-direction} alpha = {beta} is not a smaller positive root")
                continue
            for pi_alt in commutation_class(self._q, pi, self._cap):
                found = self._attempt(beta, pi_alt)
                if found is None or not self._same_coxeter(found[0], pi):
                    continue
                return (found[0], coxeter_lift(found[1], found[0], self._rs, direction)), None
            reasons.append(f"c^{-direction} alpha = {beta} not realized")
        return None, "; ".join(reasons)

    def _try_sweep(self, alpha: Root, pi: Permutation):
        for p in range(1, self._n + 1):
            for d in (ArcDiagram.right_sweep(self._n, p), ArcDiagram.left_sweep(self._n, p)):
                if realizes(d, pi, self._rs, alpha):
                    return (pi, d), None
        return None, None

    def _try_fixture(self, alpha: Root, pi: Permutation):
        for fx_pi, fx_root, d, _ in self._fixtures:
            if fx_root == alpha and (fx_pi == pi or (not self._fixed and self._same_coxeter(fx_pi, pi))):
                return (fx_pi, d), None
        return None, None

    # ------------------------------------------------------------------
    # Helpers
    # ------------------------------------------------------------------

    def _sub_engine(self, vertices: Tuple[int, ...]) -> "DescentEngine":
        if vertices not in self._sub_engines:
            sub, _ = self._q.full_subquiver(vertices)
            self._sub_engines[vertices] = DescentEngine(
                sub, fixed_permutation=self._fixed, commutation_cap=self._cap, use_search=False,
            )
        return self._sub_engines[vertices]

    def _same_coxeter(self, a: Permutation, b: Permutation) -> bool:
        if a == b:
            return True
        for p in (a, b):
            if p not in self._coxeter_cache:
                self._coxeter_cache[p] = self._rs.coxeter_matrix(p).tobytes()
        return self._coxeter_cache[a] == self._coxeter_cache[b]

    def _budget_for(self, alpha: Root) -> int:
        if self._search_budget is not None:
            return self._search_budget
        return default_budget(alpha, self._n, self._search_slack)

    def _match_fixtures(self, fixtures: Sequence[TableFixture]) -> List[Tuple[Permutation, Root, ArcDiagram, str]]:
        """
        Fixtures whose quiver is this quiver once relabelled to standard labels, translated back
        to this quiver's labels.
        """
        if not fixtures or not self._q.is_finite_type():
            return []
        labels = self._q.paper_labeling()
        standard = self._q.relabel(labels)
        inverse = {new: old for old, new in labels.items()}
        matched = []
        for fx in fixtures:
            if fx.quiver != standard:
                continue
            pi = tuple(inverse[v] for v in fx.permutation)
            root = [0] * self._n
            for old, new in labels.items():
                root[old - 1] = fx.root[new - 1]
            matched.append((pi, tuple(root), fx.diagram, fx.name))
        return matched


def _failed(entry: RealizationEntry) -> RealizationEntry:
    if settings.PRINT_DESCENT_FAILURES:
        print(f"SYSTEM STATUS: no curve for root {' '.join(str(c) for c in entry.root)}")
        for line in entry.trace:
            print(f"    {line}")
    return entry


def _fmt(pi: Sequence[int]) -> str:
    return "(" + " ".join(str(v) for v in pi) + ")"

