from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from src import settings
from src.arc_diagram import BASEPOINT, ArcDiagram, interleaves, rays_between
from src.curve_class import realizes
from src.permutations import positions
from src.root_system import Root, RootSystem, height, leq_d


class SearchResult:
    """
    Outcome of a bounded search: the first witness found (or None) and search statistics.
    """

    def __init__(self, diagram: Optional[ArcDiagram], permutation: Tuple[int, ...], budget: int,
                 nodes: int, exhausted: bool) -> None:
        """
        Initializes a SearchResult.

        Args:
            diagram: Witness curve, or None if none was found.
            permutation: Permutation the search ran under.
            budget: Largest crossing count tried.
            nodes: Number of partial diagrams explored.
            exhausted: True if every partial diagram within the budget was explored (false when
                the node cap stopped the search early).
        """
        self.diagram: Optional[ArcDiagram] = diagram
        self.permutation: Tuple[int, ...] = permutation
        self.budget: int = budget
        self.nodes: int = nodes
        self.exhausted: bool = exhausted

    def __str__(self) -> str:
        return (
            f"SearchResult(found = {self.found}, budget = {self.budget}, nodes = {self.nodes}, "
            f"exhausted = {self.exhausted})"
        )

    @property
    def found(self) -> bool:
        return self.diagram is not None


def default_budget(alpha: Sequence[int], n: int, slack: int = settings.SEARCH_BUDGET_SLACK) -> int:
    """
    2 * height(alpha) + n crossings, plus slack.
    """
    return 2 * height(alpha) + n + slack


class _Budget(Exception):
    pass


class BoundedSearch:
    """
    Depth-first enumeration of non-self-crossing curves, crossing by crossing, by increasing
    crossing count. For a fixed count m the side of every arc is known, so each extension places
    the next crossing in one of the free slots of the line and checks it incrementally.

    Branches are cut when an arc would interleave an earlier arc on its side, when a reflection
    would decrease the current root, when a coefficient would exceed the target, and when no
    upper arc is left although the target is not reached.
    """

    def __init__(self, rs: RootSystem, pi: Sequence[int], alpha: Sequence[int],
                 max_nodes: int = settings.SEARCH_MAX_NODES, prune: bool = True) -> None:
        """
        Initializes a BoundedSearch.

        Args:
            rs: Root system of the quiver.
            pi: Permutation under which curves are read.
            alpha: Target positive root.
            max_nodes: Node cap (0 disables it).
            prune: If False, only planarity is enforced during extension and the full
                classification is checked at the end.
        """
        if len(alpha) != rs.n or len(pi) != rs.n:
            raise ValueError(f"Root and permutation must have length {rs.n}")
        self._rs: RootSystem = rs
        self._n: int = rs.n
        self._pi: Tuple[int, ...] = tuple(pi)
        self._alpha: Root = tuple(alpha)
        self._max_nodes: int = max_nodes
        self._prune: bool = prune
        self._nodes: int = 0

    def run(self, budget: int) -> SearchResult:
        """
        Searches crossing counts 0..budget in order and returns the first witness.
        """
        self._nodes = 0
        pos = positions(self._pi)
        starts = sorted(pos[v] for v in range(1, self._n + 1) if self._alpha[v - 1] >= 1)
        try:
            for m in range(budget + 1):
                for s in starts:
                    found = self._search_from(s, m)
                    if found is not None:
                        return SearchResult(found, self._pi, budget, self._nodes, False)
        except _Budget:
            return SearchResult(None, self._pi, budget, self._nodes, False)
        return SearchResult(None, self._pi, budget, self._nodes, True)

    # ------------------------------------------------------------------
    # Depth-first extension
    # ------------------------------------------------------------------

    def _search_from(self, s: int, m: int) -> Optional[ArcDiagram]:
        root = self._rs.simple_root(self._pi[s - 1])
        if self._prune and not _dominated(root, self._alpha):
            return None
        self._s = s
        self._m = m
        self._points: List[Fraction] = []
        self._chords: Dict[bool, List[Tuple[Fraction, Fraction]]] = {True: [], False: []}
        return self._extend(Fraction(s), root)

    def _extend(self, cur: Fraction, root: Root) -> Optional[ArcDiagram]:
        self._nodes += 1
        if self._max_nodes and self._nodes > self._max_nodes:
            raise _Budget()
        t = len(self._points)
        if t == self._m:
            return self._close(cur, root)
        upper = (self._m - t) % 2 == 1
        uppers_left = sum(1 for k in range(t, self._m + 1) if (self._m - k) % 2 == 1)
        for y in self._slots():
            if y == cur:
                continue
            chord = (cur, y)
            if any(interleaves(chord, c) for c in self._chords[upper]):
                continue
            new_root = root
            if upper:
                new_root = self._walk(root, rays_between(cur, y, self._n))
                if new_root is None:
                    continue
            if self._prune and uppers_left - (1 if upper else 0) == 0 and new_root != self._alpha:
                continue
            self._points.append(y)
            self._chords[upper].append(chord)
            found = self._extend(y, new_root)
            self._chords[upper].pop()
            self._points.pop()
            if found is not None:
                return found
        return None

    def _walk(self, root: Root, rays: List[int]) -> Optional[Root]:
        for ray in rays:
            nxt = self._rs.reflect(self._pi[ray - 1], root)
            if self._prune and (leq_d(root, nxt) not in ("less", "equal") or not _dominated(nxt, self._alpha)):
                return None
            root = nxt
        return root

    def _close(self, cur: Fraction, root: Root) -> Optional[ArcDiagram]:
        chord = (cur, BASEPOINT)
        if any(interleaves(chord, c) for c in self._chords[False]):
            return None
        if self._prune and root != self._alpha:
            return None
        d = ArcDiagram(self._n, self._s, self._points)
        if not realizes(d, self._pi, self._rs, self._alpha):
            return None
        return d.canonical()

    def _slots(self) -> List[Fraction]:
        """
        One position per free slot of the line, left to right: the midpoints between
        consecutive occupied positions inside each gap (j, j+1), j = 0..n.
        """
        by_gap: Dict[int, List[Fraction]] = {}
        for x in self._points:
            by_gap.setdefault(min(int(x), self._n), []).append(x)
        slots = []
        for j in range(self._n + 1):
            bounds = [Fraction(j)] + sorted(by_gap.get(j, [])) + [Fraction(j + 1)]
            slots.extend((a + b) / 2 for a, b in zip(bounds, bounds[1:]))
        return slots


def _dominated(root: Root, alpha: Root) -> bool:
    return all(0 <= c <= a for c, a in zip(root, alpha))


def bounded_search(rs: RootSystem, pi: Sequence[int], alpha: Sequence[int], budget: Optional[int] = None,
                   max_nodes: int = settings.SEARCH_MAX_NODES, prune: bool = True) -> SearchResult:
    """
    First non-decreasing non-self-crossing curve realizing alpha under pi with at most budget
    crossings, in increasing crossing count and then left-to-right slot order.
    """
    if budget is None:
        budget = default_budget(alpha, rs.n)
    if budget < 0:
        raise ValueError(f"Search budget must be non-negative, got: {budget}")
    return BoundedSearch(rs, pi, alpha, max_nodes, prune).run(budget)
