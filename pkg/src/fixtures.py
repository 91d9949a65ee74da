import os
from typing import List, Optional

from src import settings
from src.arc_diagram import ArcDiagram
from src.curve_class import classify
from src.permutations import Permutation, in_pq, parse_permutation
from src.quiver import Quiver
from src.root_system import Root, RootSystem, parse_root
from src.search import SearchResult, bounded_search

# Files making up one fixture folder
FIXTURE_FILES = ("quiver.txt", "permutation.txt", "diagram.txt", "root.txt")


def _strip_comments(text: str) -> str:
    return " ".join(line.split("#", 1)[0].strip() for line in text.splitlines()).strip()


class TableFixture:
    """
    One tabulated curve: a quiver orientation (standard labels), a permutation, a diagram and
    the root the diagram is claimed to realize.
    """

    def __init__(self, name: str, quiver: Quiver, permutation: Permutation, diagram: ArcDiagram, root: Root) -> None:
        if diagram.n != quiver.n or len(permutation) != quiver.n or len(root) != quiver.n:
            raise ValueError(f"Fixture {name} mixes sizes: quiver {quiver.n}, diagram {diagram.n}, "
                             f"permutation {len(permutation)}, root {len(root)}")
        self.name: str = name
        self.quiver: Quiver = quiver
        self.permutation: Permutation = permutation
        self.diagram: ArcDiagram = diagram
        self.root: Root = root

    def __str__(self) -> str:
        return f"TableFixture(name = {self.name}, permutation = {self.permutation}, root = {self.root})"

    @classmethod
    def load(cls, path: str, name: Optional[str] = None) -> "TableFixture":
        """
        Loads a fixture folder holding quiver.txt, permutation.txt, diagram.txt and root.txt.
        """
        for file in FIXTURE_FILES:
            if not os.path.isfile(os.path.join(path, file)):
                raise FileNotFoundError(f"Fixture folder {path} is missing {file}")
        quiver = Quiver.load(os.path.join(path, "quiver.txt"))
        with open(os.path.join(path, "permutation.txt"), "r", encoding="utf-8") as f:
            permutation = parse_permutation(_strip_comments(f.read()))
        diagram = ArcDiagram.load(os.path.join(path, "diagram.txt"), quiver.n)
        with open(os.path.join(path, "root.txt"), "r", encoding="utf-8") as f:
            root = tuple(int(t) for t in _strip_comments(f.read()).split())
        if name is None:
            name = os.path.relpath(path, os.path.dirname(os.path.dirname(path)))
        return cls(name, quiver, permutation, diagram, root)


def load_fixtures(directory: str) -> List[TableFixture]:
    """
    Every fixture folder below a directory (any depth), in sorted path order.
    """
    if not os.path.isdir(directory):
        raise FileNotFoundError(f"Fixture directory not found: {directory}")
    fixtures = []
    for dirpath, dirnames, filenames in sorted(os.walk(directory)):
        dirnames.sort()
        if "diagram.txt" in filenames:
            name = os.path.relpath(dirpath, directory).replace(os.sep, "/")
            fixtures.append(TableFixture.load(dirpath, name))
    return fixtures


class FixtureAudit:
    """
    Re-verification of one fixture.
    """

    def __init__(self, fixture: TableFixture, planar: bool, in_pq: bool, non_decreasing: bool,
                 computed_root: Optional[Root], search: Optional[SearchResult] = None) -> None:
        self.fixture: TableFixture = fixture
        self.planar: bool = planar
        self.in_pq: bool = in_pq
        self.non_decreasing: bool = non_decreasing
        self.computed_root: Optional[Root] = computed_root
        self.search: Optional[SearchResult] = search

    def __str__(self) -> str:
        return f"FixtureAudit(name = {self.fixture.name}, ok = {self.ok})"

    @property
    def root_matches(self) -> bool:
        return self.computed_root == self.fixture.root

    @property
    def ok(self) -> bool:
        """
        True if every check passed (and the search, when run, found a witness).
        """
        checks = self.planar and self.in_pq and self.non_decreasing and self.root_matches
        return checks and (self.search is None or self.search.found)

    def summary_line(self) -> str:
        parts = [
            f"{self.fixture.name}:",
            "ok" if self.ok else "FAILED",
            f"planar={self.planar}",
            f"in_pq={self.in_pq}",
            f"non_decreasing={self.non_decreasing}",
            f"root={' '.join(str(c) for c in self.computed_root) if self.computed_root else '-'}",
            f"crossings={self.fixture.diagram.crossing_count}",
        ]
        if self.search is not None:
            parts.append(f"search_found={self.search.found} nodes={self.search.nodes}")
        return " ".join(parts)


def audit_fixture(fixture: TableFixture, search: bool = False, max_nodes: int = settings.SEARCH_MAX_NODES) -> FixtureAudit:
    """
    Checks planarity, P_Q membership, the non-decreasing flag and the claimed root; optionally
    searches for an independent witness with the fixture's own crossing count as budget.
    """
    rs = RootSystem.from_quiver(fixture.quiver)
    planar = fixture.diagram.is_non_self_crossing()
    member = in_pq(fixture.quiver, fixture.permutation)
    non_decreasing = False
    computed: Optional[Root] = None
    if planar:
        cls = classify(fixture.diagram, fixture.permutation, rs)
        non_decreasing = cls.non_decreasing
        computed = cls.root
    result = None
    if search:
        result = bounded_search(rs, fixture.permutation, fixture.root, fixture.diagram.crossing_count, max_nodes)
    return FixtureAudit(fixture, planar, member, non_decreasing, computed, result)


# ----------------------------------------------------------------------
# Tabulated E8 residual roots
# ----------------------------------------------------------------------

# Folder of the residual list, relative to the fixtures directory
RESIDUAL_LIST_DIR = os.path.join("e8", "residuals")


class ResidualList:
    """
    Roots of one E8 orientation that the leaf-loop and Coxeter descent arguments leave open.
    """

    def __init__(self, quiver: Quiver, roots: List[Root]) -> None:
        for root in roots:
            if len(root) != quiver.n:
                raise ValueError(f"Residual root {root} does not fit a quiver on {quiver.n} vertices")
        self.quiver: Quiver = quiver
        self.roots: List[Root] = list(roots)

    def __str__(self) -> str:
        return f"ResidualList(n = {self.quiver.n}, roots = {len(self.roots)})"

    def __contains__(self, root: object) -> bool:
        return tuple(root) in set(self.roots)

    def __len__(self) -> int:
        return len(self.roots)

    @classmethod
    def load(cls, path: str) -> "ResidualList":
        """
        Loads a folder holding quiver.txt and roots.txt (one root per line, coefficient list or
        two-row picture).
        """
        for file in ("quiver.txt", "roots.txt"):
            if not os.path.isfile(os.path.join(path, file)):
                raise FileNotFoundError(f"Residual folder {path} is missing {file}")
        quiver = Quiver.load(os.path.join(path, "quiver.txt"))
        kind = quiver.dynkin_type()
        roots = []
        with open(os.path.join(path, "roots.txt"), "r", encoding="utf-8") as f:
            for raw in f:
                line = raw.split("#", 1)[0].strip()
                if line:
                    roots.append(parse_root(line, quiver.n, kind))
        return cls(quiver, roots)


def load_residual_list(directory: str) -> Optional[ResidualList]:
    """
    The residual list below a fixtures directory, or None when the directory has none.
    """
    path = os.path.join(directory, RESIDUAL_LIST_DIR)
    if not os.path.isdir(path):
        return None
    return ResidualList.load(path)
