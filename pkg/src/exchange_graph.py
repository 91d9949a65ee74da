from collections import deque
from typing import List, Optional, Set, Tuple

import numpy as np

from src.quiver import Quiver
from src.root_system import NotFiniteTypeError, RootSystem, sign_of

Vector = Tuple[int, ...]


def enumerate_c_vectors(q: Quiver, depth: Optional[int] = None) -> Set[Vector]:
    """
    Every c-vector met in a breadth-first closure of the framed quiver under mutation.

    States are deduplicated by their arrow multiset; labels are never permuted since c-vectors
    depend on them.

    Args:
        q: Plain acyclic quiver.
        depth: Maximum number of mutations from the framed quiver. None runs to exhaustion,
            which is only allowed for finite type.

    Raises:
        NotFiniteTypeError: If depth is None and q is not of finite type.
    """
    if depth is None and not q.is_finite_type():
        raise NotFiniteTypeError(
            f"Exhaustive c-vector enumeration refused for type {q.dynkin_type()}; pass a depth bound"
        )
    start = q.framed()
    seen = {start.canonical_key()}
    vectors: Set[Vector] = set(start.c_vectors())
    queue = deque([(start, 0)])
    while queue:
        state, dist = queue.popleft()
        if depth is not None and dist >= depth:
            continue
        for k in state.mutable_vertices:
            nxt = state.mutate(k)
            key = nxt.canonical_key()
            if key in seen:
                continue
            seen.add(key)
            vectors.update(nxt.c_vectors())
            queue.append((nxt, dist + 1))
    return vectors


def positive_c_vectors(q: Quiver, depth: Optional[int] = None) -> Set[Vector]:
    return {v for v in enumerate_c_vectors(q, depth) if sign_of(v) == 1}


class FuzzReport:
    """
    Outcome of a random mutation fuzz run.
    """

    def __init__(self, sequences: int, states: int, sign_violations: List[str], non_roots: List[str]) -> None:
        self.sequences: int = sequences
        self.states: int = states
        self.sign_violations: List[str] = sign_violations
        self.non_roots: List[str] = non_roots

    def __str__(self) -> str:
        return (
            f"FuzzReport(sequences = {self.sequences}, states = {self.states}, "
            f"sign_violations = {len(self.sign_violations)}, non_roots = {len(self.non_roots)})"
        )

    @property
    def ok(self) -> bool:
        return not self.sign_violations and not self.non_roots


def sign_coherence_fuzz(quivers: List[Quiver], sequences: int, depth: int, seed: int) -> FuzzReport:
    """
    Random mutation sequences on framed quivers, checking that every c-vector is sign-coherent
    and that every positive c-vector is a positive root.

    Args:
        quivers: Plain finite-type quivers; sequences are spread round-robin over them.
        sequences: Number of random sequences.
        depth: Length of each sequence.
        seed: Seed of the numpy generator.
    """
    rng = np.random.default_rng(seed)
    systems = [RootSystem.from_quiver(q) for q in quivers]
    violations: List[str] = []
    non_roots: List[str] = []
    states = 0
    for idx in range(sequences):
        q = quivers[idx % len(quivers)]
        rs = systems[idx % len(quivers)]
        state = q.framed()
        steps: List[int] = []
        for _ in range(depth):
            k = int(rng.integers(1, q.n + 1))
            steps.append(k)
            state = state.mutate(k)
            states += 1
            for vec in state.c_vectors():
                match sign_of(vec):
                    case 0:
                        violations.append(f"{q}: mutations {steps}: c-vector {vec} is not sign-coherent")
                    case 1:
                        if not rs.is_positive_root(vec):
                            non_roots.append(f"{q}: mutations {steps}: c-vector {vec} is not a positive root")
    return FuzzReport(sequences, states, violations, non_roots)
