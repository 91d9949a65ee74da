from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from src import settings
from src.quiver import Quiver

# Root coefficient vector over the simple roots, indexed by vertex - 1
Root = Tuple[int, ...]


class NotFiniteTypeError(ValueError):
    """
    Raised when a root closure or Coxeter order does not terminate within its configured bound.
    """


class CoxeterOrbit:
    """
    Orbit of theta_i under a Coxeter transformation: c^k theta_i for k = 0..h-1.
    """

    def __init__(self, i: int, elements: List[Root]) -> None:
        self.i: int = i
        self.elements: List[Root] = elements

    def __str__(self) -> str:
        return f"CoxeterOrbit(i = {self.i}, size = {len(self.elements)})"

    def __len__(self) -> int:
        return len(self.elements)


class RootSystem:
    """
    Simply-laced root system of a generalized Cartan matrix.

    Vertices are 1-based everywhere in the public interface; a permutation `pi` is a tuple
    whose entry at index a-1 is the vertex pi(a).
    """

    def __init__(self, cartan: np.ndarray, dynkin_type: Optional[str] = None) -> None:
        """
        Initializes a RootSystem.

        Args:
            cartan: Square symmetric integer matrix with 2 on the diagonal.
            dynkin_type: Classification string ("A3", "E7", "affine-A4", ...), if known.
        """
        cartan = np.asarray(cartan, dtype=np.int64)
        if cartan.ndim != 2 or cartan.shape[0] != cartan.shape[1]:
            raise ValueError(f"Cartan matrix must be square, got shape: {cartan.shape}")
        if np.any(np.diag(cartan) != 2):
            raise ValueError("Cartan matrix must have 2 on the diagonal")
        if not np.array_equal(cartan, cartan.T):
            raise ValueError("Cartan matrix must be symmetric")
        self._cartan: np.ndarray = cartan
        self._n: int = cartan.shape[0]
        self._dynkin_type: Optional[str] = dynkin_type

    @classmethod
    def from_quiver(cls, q: Quiver) -> "RootSystem":
        """
        Root system of the Cartan matrix of a quiver's mutable part.
        """
        return cls(q.cartan_matrix(), q.dynkin_type())

    def __str__(self) -> str:
        return f"RootSystem(n = {self._n}, type = {self._dynkin_type})"

    @property
    def n(self) -> int:
        """
        Rank.
        """
        return self._n

    @property
    def cartan(self) -> np.ndarray:
        """
        Copy of the Cartan matrix.
        """
        return self._cartan.copy()

    @property
    def dynkin_type(self) -> Optional[str]:
        """
        Classification string, if known.
        """
        return self._dynkin_type

    @property
    def is_finite(self) -> bool:
        """
        True for simply-laced Dynkin types A, D, E.
        """
        return self._dynkin_type is not None and self._dynkin_type[:1] in ("A", "D", "E")

    # ------------------------------------------------------------------
    # Reflections
    # ------------------------------------------------------------------

    def simple_root(self, i: int) -> Root:
        """
        alpha_i as a coefficient vector.
        """
        self._check_index(i)
        return tuple(1 if j == i else 0 for j in range(1, self._n + 1))

    def reflect(self, i: int, root: Sequence[int]) -> Root:
        """
        Simple reflection s_i: only coordinate i changes, beta_i <- beta_i - sum_j a_ij beta_j.
        """
        self._check_index(i)
        self._check_rank(root)
        row = self._cartan[i - 1]
        delta = int(sum(int(row[j]) * root[j] for j in range(self._n)))
        out = list(root)
        out[i - 1] -= delta
        return tuple(out)

    def reflect_word(self, word: Sequence[int], root: Sequence[int]) -> Root:
        """
        Applies s_{word[0]} first, then s_{word[1]}, and so on.
        """
        out = tuple(root)
        for i in word:
            out = self.reflect(i, out)
        return out

    def reflection_matrix(self, i: int) -> np.ndarray:
        """
        Matrix of s_i acting on coefficient column vectors.
        """
        self._check_index(i)
        m = np.eye(self._n, dtype=np.int64)
        m[i - 1, :] -= self._cartan[i - 1, :]
        return m

    def coxeter_matrix(self, pi: Sequence[int], direction: int = 1) -> np.ndarray:
        """
        Matrix of c_pi = s_pi(1) ... s_pi(n) (direction +1) or of its inverse (direction -1).
        """
        self._check_permutation(pi)
        m = np.eye(self._n, dtype=np.int64)
        match direction:
            case 1:
                for v in pi:
                    m = m @ self.reflection_matrix(v)
            case -1:
                for v in reversed(pi):
                    m = m @ self.reflection_matrix(v)
            case _:
                raise ValueError(f"Coxeter direction must be +1 or -1, got: {direction}")
        return m

    def coxeter_apply(self, pi: Sequence[int], root: Sequence[int], direction: int = 1) -> Root:
        """
        c_pi (direction +1, s_pi(n) applied first) or c_pi^-1 (direction -1, s_pi(1) applied first).
        """
        self._check_permutation(pi)
        match direction:
            case 1:
                return self.reflect_word(list(reversed(pi)), root)
            case -1:
                return self.reflect_word(list(pi), root)
        raise ValueError(f"Coxeter direction must be +1 or -1, got: {direction}")

    def coxeter_power(self, pi: Sequence[int], root: Sequence[int], k: int) -> Root:
        """
        c_pi^k applied to a root; negative k uses the inverse.
        """
        out = tuple(root)
        direction = 1 if k >= 0 else -1
        for _ in range(abs(k)):
            out = self.coxeter_apply(pi, out, direction)
        return out

    def coxeter_order(self, pi: Optional[Sequence[int]] = None) -> int:
        """
        Least h >= 1 with c_pi^h = identity (pi defaults to 1..n).

        Raises:
            NotFiniteTypeError: If no such h exists below settings.COXETER_ORDER_LIMIT.
        """
        if pi is None:
            pi = tuple(range(1, self._n + 1))
        c = self.coxeter_matrix(pi)
        ident = np.eye(self._n, dtype=np.int64)
        power = c.copy()
        for h in range(1, settings.COXETER_ORDER_LIMIT + 1):
            if np.array_equal(power, ident):
                return h
            power = power @ c
        raise NotFiniteTypeError(f"Coxeter order exceeds {settings.COXETER_ORDER_LIMIT} for type {self._dynkin_type}")

    @cached_property
    def coxeter_number(self) -> int:
        """
        Coxeter number h (independent of the chosen ordering).
        """
        return self.coxeter_order()

    def theta(self, pi: Sequence[int], i: int) -> Root:
        """
        theta_i = s_pi(n) s_pi(n-1) ... s_pi(i+1) alpha_pi(i).
        """
        self._check_permutation(pi)
        if i < 1 or i > self._n:
            raise ValueError(f"theta index must be in 1..{self._n}, got: {i}")
        return self.reflect_word(list(pi[i:]), self.simple_root(pi[i - 1]))

    def omega_orbits(self, pi: Sequence[int]) -> List[CoxeterOrbit]:
        """
        Coxeter orbits of theta_1..theta_n, each of length h.
        """
        h = self.coxeter_number
        orbits = []
        for i in range(1, self._n + 1):
            elements = [self.theta(pi, i)]
            for _ in range(h - 1):
                elements.append(self.coxeter_apply(pi, elements[-1]))
            orbits.append(CoxeterOrbit(i, elements))
        return orbits

    # ------------------------------------------------------------------
    # Roots
    # ------------------------------------------------------------------

    @cached_property
    def _positive_roots(self) -> List[Root]:
        frontier = [self.simple_root(i) for i in range(1, self._n + 1)]
        found = set(frontier)
        rounds = settings.ROOT_CLOSURE_ROUNDS_FACTOR * self._n * self._n
        for _ in range(rounds):
            nxt = []
            for root in frontier:
                for i in range(1, self._n + 1):
                    image = self.reflect(i, root)
                    if all(c >= 0 for c in image) and image not in found:
                        found.add(image)
                        nxt.append(image)
            if not nxt:
                return sorted(found, key=root_sort_key)
            frontier = nxt
        raise NotFiniteTypeError(
            f"Root closure did not terminate after {rounds} rounds; type {self._dynkin_type} is not finite"
        )

    def positive_roots(self) -> List[Root]:
        """
        All positive roots in canonical order (height, then lexicographic).

        Raises:
            NotFiniteTypeError: If the closure does not terminate within the configured bound.
        """
        return list(self._positive_roots)

    @cached_property
    def _positive_root_set(self) -> frozenset:
        return frozenset(self._positive_roots)

    def is_positive_root(self, root: Sequence[int]) -> bool:
        """
        Membership in the positive root set (finite types only).
        """
        return tuple(root) in self._positive_root_set

    def is_root(self, root: Sequence[int]) -> bool:
        """
        Membership in the full root set (finite types only).
        """
        root = tuple(root)
        return root in self._positive_root_set or tuple(-c for c in root) in self._positive_root_set

    def highest_root(self) -> Root:
        """
        Unique positive root of maximal height.
        """
        return self._positive_roots[-1]

    def reducing_pair(self, alpha: Sequence[int]) -> Optional[Tuple[int, int]]:
        """
        Finds (k, j) where k is the unique index with s_k alpha >_D alpha and j is adjacent to k
        with s_j alpha <_D alpha. Returns None when there is no such unique k or no such j.
        """
        alpha = tuple(alpha)
        raising = [k for k in range(1, self._n + 1) if leq_d(alpha, self.reflect(k, alpha)) == "less"]
        if len(raising) != 1:
            return None
        k = raising[0]
        for j in range(1, self._n + 1):
            if j != k and self._cartan[k - 1, j - 1] != 0 and leq_d(self.reflect(j, alpha), alpha) == "less":
                return (k, j)
        return None

    # ------------------------------------------------------------------
    # Checks
    # ------------------------------------------------------------------

    def _check_index(self, i: int) -> None:
        if i < 1 or i > self._n:
            raise ValueError(f"Vertex index must be in 1..{self._n}, got: {i}")

    def _check_rank(self, root: Sequence[int]) -> None:
        if len(root) != self._n:
            raise ValueError(f"Root must have {self._n} coefficients, got: {len(root)}")

    def _check_permutation(self, pi: Sequence[int]) -> None:
        if sorted(pi) != list(range(1, self._n + 1)):
            raise ValueError(f"Not a permutation of 1..{self._n}: {tuple(pi)}")


# ----------------------------------------------------------------------
# Module-level helpers
# ----------------------------------------------------------------------

def height(root: Sequence[int]) -> int:
    """
    Sum of coefficients.
    """
    return int(sum(root))


def root_sort_key(root: Sequence[int]) -> Tuple:
    """
    Canonical ordering: height, then lexicographic.
    """
    return (height(root), tuple(root))


def sign_of(root: Sequence[int]) -> int:
    """
    +1 for a non-zero all-nonnegative vector, -1 for all-nonpositive, 0 otherwise.
    """
    if any(root) and all(c >= 0 for c in root):
        return 1
    if any(root) and all(c <= 0 for c in root):
        return -1
    return 0


def leq_d(r1: Sequence[int], r2: Sequence[int]) -> str:
    """
    Dominance comparison: "less", "equal", "greater" or "incomparable".
    """
    if len(r1) != len(r2):
        raise ValueError(f"Root ranks differ: {len(r1)} vs {len(r2)}")
    if tuple(r1) == tuple(r2):
        return "equal"
    if all(a <= b for a, b in zip(r1, r2)):
        return "less"
    if all(a >= b for a, b in zip(r1, r2)):
        return "greater"
    return "incomparable"


def support(root: Sequence[int]) -> List[int]:
    """
    Vertices with a non-zero coefficient, ascending.
    """
    return [i + 1 for i, c in enumerate(root) if c != 0]


def display_layout(dynkin_type: str) -> Tuple[List[int], List[int]]:
    """
    Vertex order of the printed two-row picture: (top row, bottom row) in standard labels.
    """
    letter, n = dynkin_type[0], int(dynkin_type[1:])
    match letter:
        case "A":
            return list(range(1, n + 1)), []
        case "D":
            return list(range(1, n - 2)) + [n, n - 1], [n - 2]
        case "E":
            return list(range(2, n - 2)) + [n, n - 2, 1], [n - 1]
    raise ValueError(f"No display layout for type: {dynkin_type}")


def format_root(root: Sequence[int], dynkin_type: Optional[str] = None) -> str:
    """
    Space-separated coefficients; for D and E types the two-row picture "row / bottom".
    """
    if dynkin_type is None or dynkin_type[:1] not in ("D", "E"):
        return " ".join(str(c) for c in root)
    top, bottom = display_layout(dynkin_type)
    return " ".join(str(root[v - 1]) for v in top) + " / " + " ".join(str(root[v - 1]) for v in bottom)


def parse_root(text: str, n: int, dynkin_type: Optional[str] = None) -> Root:
    """
    Inverse of format_root: accepts either n space-separated coefficients in vertex order, or
    the "row / bottom" picture for D and E types.
    """
    if "/" in text:
        if dynkin_type is None or dynkin_type[:1] not in ("D", "E"):
            raise ValueError(f"Two-row root notation needs a D or E type, got: {dynkin_type}")
        top_text, bottom_text = text.split("/", 1)
        top, bottom = display_layout(dynkin_type)
        values = [int(t) for t in top_text.replace(",", " ").split()]
        values_b = [int(t) for t in bottom_text.replace(",", " ").split()]
        if len(values) != len(top) or len(values_b) != len(bottom):
            raise ValueError(f"Root picture {text!r} does not fit type {dynkin_type}")
        out: Dict[int, int] = dict(zip(top, values))
        out.update(zip(bottom, values_b))
        return tuple(out[v] for v in range(1, n + 1))
    values = [int(t) for t in text.replace(",", " ").split()]
    if len(values) != n:
        raise ValueError(f"Root {text!r} must have {n} coefficients, got: {len(values)}")
    return tuple(values)
