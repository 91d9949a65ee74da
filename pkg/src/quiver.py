from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

# Multiset of arrows: (tail, head) -> multiplicity
ArrowCounts = Dict[Tuple[int, int], int]


class QuiverFormatError(ValueError):
    """
    Raised when a quiver text file cannot be parsed.
    """

    def __init__(self, message: str, line: Optional[int] = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class QuiverDiagnostics:
    """
    Outcome of validating a quiver: the violated invariants and the Dynkin classification.
    """

    def __init__(self, problems: List[str], dynkin_type: str) -> None:
        self.problems: List[str] = problems
        self.dynkin_type: str = dynkin_type

    def __str__(self) -> str:
        return f"QuiverDiagnostics(valid = {self.valid}, type = {self.dynkin_type}, problems = {self.problems})"

    @property
    def valid(self) -> bool:
        """
        True if no invariant is violated.
        """
        return len(self.problems) == 0


class Quiver:
    """
    Quiver on the vertices 1..N where the vertices listed in `frozen` may not be mutated.

    Arrows are stored as a multiset keyed by ordered pair. Quivers are immutable: every
    operation returns a new quiver.
    """

    def __init__(self, n: int, arrows: Iterable = (), frozen: Iterable[int] = ()) -> None:
        """
        Initializes a Quiver.

        Args:
            n: Total number of vertices (mutable and frozen).
            arrows: Either (tail, head) pairs, repeated for multiple arrows, or a dict
                mapping (tail, head) to a multiplicity.
            frozen: Vertices at which mutation is not allowed.
        """
        if n < 1:
            raise ValueError(f"Quiver must have at least one vertex, got: {n}")
        counts: ArrowCounts = {}
        items = arrows.items() if isinstance(arrows, dict) else ((a, 1) for a in arrows)
        for (tail, head), mult in items:
            tail, head, mult = int(tail), int(head), int(mult)
            for v in (tail, head):
                if v < 1 or v > n:
                    raise ValueError(f"Arrow ({tail}, {head}) has a vertex outside 1..{n}")
            if mult < 0:
                raise ValueError(f"Arrow ({tail}, {head}) has negative multiplicity: {mult}")
            if mult:
                counts[(tail, head)] = counts.get((tail, head), 0) + mult
        frozen_set = frozenset(int(v) for v in frozen)
        for v in frozen_set:
            if v < 1 or v > n:
                raise ValueError(f"Frozen vertex {v} outside 1..{n}")
        self._n: int = n
        self._arrows: ArrowCounts = counts
        self._frozen: frozenset = frozen_set

    # ------------------------------------------------------------------
    # Text format
    # ------------------------------------------------------------------

    @classmethod
    def from_text(cls, text: str) -> "Quiver":
        """
        Parses the quiver text format: a line `n <N>` followed by `arrow <tail> <head>` lines.
        Blank lines and `#` comments are ignored.

        Args:
            text: Contents of a quiver file.
        """
        n: Optional[int] = None
        arrows: List[Tuple[int, int]] = []
        for line_no, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            match parts[0]:
                case "n":
                    if n is not None:
                        raise QuiverFormatError("duplicate 'n' line", line_no)
                    if len(parts) != 2 or not parts[1].isdigit():
                        raise QuiverFormatError(f"expected 'n <N>', got: {line!r}", line_no)
                    n = int(parts[1])
                case "arrow":
                    if n is None:
                        raise QuiverFormatError("'arrow' before 'n' line", line_no)
                    if len(parts) != 3 or not all(p.isdigit() for p in parts[1:]):
                        raise QuiverFormatError(f"expected 'arrow <tail> <head>', got: {line!r}", line_no)
                    tail, head = int(parts[1]), int(parts[2])
                    if not (1 <= tail <= n and 1 <= head <= n):
                        raise QuiverFormatError(f"arrow vertex outside 1..{n}: {line!r}", line_no)
                    arrows.append((tail, head))
                case _:
                    raise QuiverFormatError(f"unknown keyword: {parts[0]!r}", line_no)
        if n is None:
            raise QuiverFormatError("missing 'n <N>' line")
        if n < 1:
            raise QuiverFormatError(f"vertex count must be positive, got: {n}")
        return cls(n, arrows)

    @classmethod
    def load(cls, path: str) -> "Quiver":
        """
        Loads a quiver from a text file.
        """
        with open(path, "r", encoding="utf-8") as f:
            return cls.from_text(f.read())

    def to_text(self) -> str:
        """
        Serializes a plain quiver to the text format (arrows sorted, multiplicities expanded).
        """
        if self._frozen:
            raise ValueError("Framed quivers are never serialized")
        lines = [f"n {self._n}"]
        for (tail, head), mult in sorted(self._arrows.items()):
            lines.extend(f"arrow {tail} {head}" for _ in range(mult))
        return "\n".join(lines) + "\n"

    # ------------------------------------------------------------------
    # Basic accessors
    # ------------------------------------------------------------------

    def __str__(self) -> str:
        return f"Quiver(n = {self._n}, arrows = {self.arrow_list}, frozen = {sorted(self._frozen)})"

    def __repr__(self) -> str:
        return str(self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Quiver):
            return NotImplemented
        return self._n == other._n and self._frozen == other._frozen and self._arrows == other._arrows

    def __hash__(self) -> int:
        return hash((self._n, self._frozen, tuple(sorted(self._arrows.items()))))

    @property
    def n(self) -> int:
        """
        Total number of vertices.
        """
        return self._n

    @property
    def frozen(self) -> frozenset:
        """
        Frozen vertices.
        """
        return self._frozen

    @property
    def mutable_vertices(self) -> List[int]:
        """
        Vertices at which mutation is allowed, ascending.
        """
        return [v for v in range(1, self._n + 1) if v not in self._frozen]

    @property
    def rank(self) -> int:
        """
        Number of mutable vertices.
        """
        return self._n - len(self._frozen)

    @property
    def arrows(self) -> ArrowCounts:
        """
        Copy of the arrow multiset.
        """
        return dict(self._arrows)

    @property
    def arrow_list(self) -> List[Tuple[int, int]]:
        """
        Arrows as sorted (tail, head) pairs, repeated by multiplicity.
        """
        return [pair for pair, mult in sorted(self._arrows.items()) for _ in range(mult)]

    def canonical_key(self) -> Tuple:
        """
        Hashable form used to deduplicate states; labels are never permuted.
        """
        return (self._n, tuple(sorted(self._frozen)), tuple(sorted(self._arrows.items())))

    def exchange_matrix(self) -> np.ndarray:
        """
        Skew-symmetric matrix with b_ij = #(i -> j) - #(j -> i), indexed from 0.
        """
        b = np.zeros((self._n, self._n), dtype=np.int64)
        for (tail, head), mult in self._arrows.items():
            b[tail - 1, head - 1] += mult
            b[head - 1, tail - 1] -= mult
        return b

    @classmethod
    def from_exchange_matrix(cls, b: np.ndarray, frozen: Iterable[int] = ()) -> "Quiver":
        """
        Builds the quiver whose arrows are the positive entries of a skew-symmetric matrix.
        """
        n = b.shape[0]
        arrows = {
            (i + 1, j + 1): int(b[i, j])
            for i in range(n)
            for j in range(n)
            if b[i, j] > 0
        }
        return cls(n, arrows, frozen)

    def cartan_matrix(self) -> np.ndarray:
        """
        Generalized Cartan matrix of the mutable part: a_ii = 2, a_ij = -|b_ij|.
        """
        verts = self.mutable_vertices
        b = self.exchange_matrix()[np.ix_([v - 1 for v in verts], [v - 1 for v in verts])]
        a = -np.abs(b)
        np.fill_diagonal(a, 2)
        return a

    def graph(self) -> nx.DiGraph:
        """
        Directed graph of the mutable part; edge attribute `mult` holds the multiplicity.
        """
        g = nx.DiGraph()
        g.add_nodes_from(self.mutable_vertices)
        for (tail, head), mult in self._arrows.items():
            if tail in self._frozen or head in self._frozen:
                continue
            g.add_edge(tail, head, mult=mult)
        return g

    def underlying_graph(self) -> nx.Graph:
        """
        Undirected simple graph of the mutable part.
        """
        return self.graph().to_undirected(as_view=False)

    def neighbors(self, v: int) -> List[int]:
        """
        Mutable vertices joined to v by at least one arrow, ascending.
        """
        return sorted(self.underlying_graph().neighbors(v))

    # ------------------------------------------------------------------
    # Validation and classification
    # ------------------------------------------------------------------

    def validate(self) -> QuiverDiagnostics:
        """
        Checks loop-freeness, 2-cycle-freeness and acyclicity of the mutable part, and
        classifies the underlying graph.
        """
        problems: List[str] = []
        for (tail, head) in sorted(self._arrows):
            if tail == head:
                problems.append(f"loop at vertex {tail}: arrow ({tail}, {head})")
            elif tail < head and (head, tail) in self._arrows:
                problems.append(f"oriented 2-cycle: arrows ({tail}, {head}) and ({head}, {tail})")
        if not problems:
            g = self.graph()
            if not nx.is_directed_acyclic_graph(g):
                cycle = nx.find_cycle(g)
                problems.append(f"directed cycle: {[tuple(e[:2]) for e in cycle]}")
        dynkin = self.dynkin_type() if not problems else "other"
        return QuiverDiagnostics(problems, dynkin)

    def is_acyclic(self) -> bool:
        """
        True if the mutable part has no directed cycle.
        """
        return nx.is_directed_acyclic_graph(self.graph())

    def dynkin_type(self) -> str:
        """
        Classifies the underlying graph of the mutable part: "A<n>", "D<n>", "E6", "E7", "E8",
        "affine-A<n>" for a simply-laced cycle, or "other".
        """
        g = self.underlying_graph()
        n = g.number_of_nodes()
        if any(m > 1 for _, _, m in self.graph().edges(data="mult")) or not nx.is_connected(g):
            return "other"
        if nx.is_tree(g):
            degrees = sorted((d for _, d in g.degree()), reverse=True)
            if n == 1 or degrees[0] <= 2:
                return f"A{n}"
            if degrees[0] > 3 or degrees[1] > 2:
                return "other"
            arms = sorted(_arm_lengths(g))
            if arms[0] == 1 and arms[1] == 1:
                return f"D{n}"
            if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
                return f"E{n}"
            return "other"
        if n >= 3 and all(d == 2 for _, d in g.degree()):
            return f"affine-A{n}"
        return "other"

    def is_finite_type(self) -> bool:
        """
        True if the underlying graph is a simply-laced Dynkin diagram.
        """
        return self.dynkin_type()[:1] in ("A", "D", "E")

    def paper_labeling(self) -> Dict[int, int]:
        """
        Bijection from this quiver's labels to the standard labels of its Dynkin type.

        Type A labels the path 1..n from one end. Type D labels the long arm 1..n-3 from its
        far end, the branch vertex n and the short legs n-1 and n-2. Types E6, E7 and E8 label
        the long arm 2..n-3 from its far end, the branch vertex n, the arm of length two
        n-2 then 1, and the single leg n-1. Ties are broken by the smallest original label.
        """
        kind = self.dynkin_type()
        g = self.underlying_graph()
        n = g.number_of_nodes()
        if kind.startswith("A") and not kind.startswith("affine"):
            if n == 1:
                return {self.mutable_vertices[0]: 1}
            ends = sorted(v for v, d in g.degree() if d == 1)
            path = nx.shortest_path(g, ends[0], ends[1])
            return {v: idx + 1 for idx, v in enumerate(path)}
        if kind.startswith("D") or kind.startswith("E"):
            branch = next(v for v, d in g.degree() if d == 3)
            arms = _arms(g, branch)
            arms.sort(key=lambda arm: (len(arm), arm[0]))
            labels: Dict[int, int] = {branch: n}
            if kind.startswith("D"):
                short_a, short_b, long_arm = arms
                labels[short_a[0]] = n - 1
                labels[short_b[0]] = n - 2
                for idx, v in enumerate(reversed(long_arm)):
                    labels[v] = idx + 1
                return labels
            leg, pair, long_arm = arms
            labels[leg[0]] = n - 1
            labels[pair[0]] = n - 2
            labels[pair[1]] = 1
            for idx, v in enumerate(reversed(long_arm)):
                labels[v] = idx + 2
            return labels
        raise ValueError(f"No standard labeling for quiver of type {kind}")

    def relabel(self, mapping: Dict[int, int]) -> "Quiver":
        """
        Returns the quiver with every vertex v renamed to mapping[v].
        """
        arrows = {(mapping[t], mapping[h]): m for (t, h), m in self._arrows.items()}
        return Quiver(self._n, arrows, (mapping[v] for v in self._frozen))

    def full_subquiver(self, vertices: Sequence[int]) -> Tuple["Quiver", List[int]]:
        """
        Full subquiver induced by a vertex set, relabelled 1..k in ascending order.

        Returns:
            The subquiver and the list mapping new label i (index i-1) to the old label.
        """
        old = sorted(set(vertices))
        if not old:
            raise ValueError("Cannot restrict a quiver to an empty vertex set")
        for v in old:
            if v < 1 or v > self._n or v in self._frozen:
                raise ValueError(f"Vertex {v} is not a mutable vertex of the quiver")
        index = {v: i + 1 for i, v in enumerate(old)}
        arrows = {
            (index[t], index[h]): m
            for (t, h), m in self._arrows.items()
            if t in index and h in index
        }
        sub = Quiver(len(old), arrows)
        if not nx.is_connected(sub.underlying_graph()):
            raise ValueError(f"Vertex set {old} does not induce a connected subquiver")
        return sub, old

    # ------------------------------------------------------------------
    # Framing, mutation and c-vectors
    # ------------------------------------------------------------------

    @property
    def is_framed(self) -> bool:
        """
        True if this quiver has the 2n-vertex framed shape (frozen vertices n+1..2n).
        """
        half = self._n // 2
        return bool(self._frozen) and self._n % 2 == 0 and self._frozen == frozenset(range(half + 1, self._n + 1))

    def framed(self) -> "Quiver":
        """
        Framed quiver: the original arrows plus i -> i' for every vertex, with i' = n + i frozen.
        """
        if self._frozen:
            raise ValueError("Quiver is already framed")
        if not self.is_acyclic():
            raise ValueError("Framing is defined here for acyclic quivers only")
        arrows = dict(self._arrows)
        for v in range(1, self._n + 1):
            arrows[(v, self._n + v)] = 1
        return Quiver(2 * self._n, arrows, range(self._n + 1, 2 * self._n + 1))

    def mutate(self, k: int) -> "Quiver":
        """
        Mutates at vertex k: compose paths through k, reverse arrows at k, cancel 2-cycles.

        Args:
            k: A mutable vertex.
        """
        if k < 1 or k > self._n:
            raise ValueError(f"Mutation vertex {k} outside 1..{self._n}")
        if k in self._frozen:
            raise ValueError(f"Mutation at frozen vertex {k} is not allowed")
        b = self.exchange_matrix()
        c = k - 1
        col = b[:, c]
        row = b[c, :]
        # b_ij += sign(b_ik) * max(b_ik * b_kj, 0)
        prod = np.outer(col, row)
        b_new = b + np.sign(np.outer(col, np.ones_like(row))) * np.maximum(prod, 0)
        b_new[c, :] = -row
        b_new[:, c] = -col
        frozen_idx = [v - 1 for v in self._frozen]
        if frozen_idx and np.any(b_new[np.ix_(frozen_idx, frozen_idx)] != 0):
            raise RuntimeError(f"Mutation at {k} created an arrow between frozen vertices")
        return Quiver.from_exchange_matrix(b_new, self._frozen)

    def mutate_sequence(self, sequence: Iterable[int]) -> "Quiver":
        """
        Applies mutations left to right.
        """
        q = self
        for k in sequence:
            q = q.mutate(k)
        return q

    def c_vectors(self) -> List[Tuple[int, ...]]:
        """
        c-vectors of a mutated framed quiver: for each mutable i, entry j is the signed number
        of arrows between i and j' (positive for i -> j').
        """
        if not self.is_framed:
            raise ValueError("c-vectors are defined for framed quivers only")
        half = self._n // 2
        b = self.exchange_matrix()
        return [tuple(int(b[i - 1, half + j - 1]) for j in range(1, half + 1)) for i in range(1, half + 1)]


# ----------------------------------------------------------------------
# Helpers
# ----------------------------------------------------------------------

def _arms(g: nx.Graph, branch: int) -> List[List[int]]:
    """
    Arms of a star-like tree hanging off its branch vertex, each listed from the branch outward.
    """
    arms = []
    for start in sorted(g.neighbors(branch)):
        arm = [start]
        prev, cur = branch, start
        while True:
            nxt = [v for v in g.neighbors(cur) if v != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            arm.append(cur)
        arms.append(arm)
    return arms


def _arm_lengths(g: nx.Graph) -> List[int]:
    branch = next(v for v, d in g.degree() if d == 3)
    return [len(arm) for arm in _arms(g, branch)]


def path_quiver(n: int, orientation: Optional[Sequence[bool]] = None) -> Quiver:
    """
    Type A quiver on the path 1 - 2 - ... - n.

    Args:
        n: Number of vertices.
        orientation: For each edge e_i (between i and i+1), True for i -> i+1. Defaults to all True.
    """
    if orientation is None:
        orientation = [True] * (n - 1)
    if len(orientation) != n - 1:
        raise ValueError(f"Path quiver on {n} vertices needs {n - 1} orientations, got: {len(orientation)}")
    arrows = [(i, i + 1) if fwd else (i + 1, i) for i, fwd in enumerate(orientation, start=1)]
    return Quiver(n, arrows)


def dynkin_edges(kind: str) -> List[Tuple[int, int]]:
    """
    Edges of a Dynkin diagram in standard labels, each as (smaller, larger).
    """
    letter, n = kind[0], int(kind[1:])
    match letter:
        case "A":
            return [(i, i + 1) for i in range(1, n)]
        case "D":
            if n < 4:
                raise ValueError(f"Type D needs at least 4 vertices, got: {n}")
            edges = [(i, i + 1) for i in range(1, n - 3)]
            edges += [(n - 3, n), (n - 2, n), (n - 1, n)]
            return sorted(edges)
        case "E":
            if n not in (6, 7, 8):
                raise ValueError(f"Type E is defined for 6, 7, 8 vertices, got: {n}")
            edges = [(i, i + 1) for i in range(2, n - 3)]
            edges += [(n - 3, n), (n - 1, n), (n - 2, n), (1, n - 2)]
            return sorted(edges)
    raise ValueError(f"Unknown Dynkin type: {kind}")


def dynkin_quivers(kind: str) -> List[Quiver]:
    """
    Every orientation of a Dynkin diagram in standard labels, in a fixed order.
    """
    edges = dynkin_edges(kind)
    n = int(kind[1:])
    quivers = []
    for mask in range(2 ** len(edges)):
        arrows = [(a, b) if (mask >> idx) & 1 == 0 else (b, a) for idx, (a, b) in enumerate(edges)]
        quivers.append(Quiver(n, arrows))
    return quivers


def orientations_up_to_automorphism(kind: str) -> List[Quiver]:
    """
    Orientations of a Dynkin diagram with one representative per graph-automorphism orbit.
    """
    seen = set()
    reps = []
    for q in dynkin_quivers(kind):
        g = q.graph()
        key = None
        for iso in nx.vf2pp_all_isomorphisms(q.underlying_graph(), q.underlying_graph()):
            image = tuple(sorted((iso[t], iso[h]) for t, h in g.edges()))
            key = image if key is None or image < key else key
        if key in seen:
            continue
        seen.add(key)
        reps.append(q)
    return reps
