from itertools import islice
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from src.quiver import Quiver, path_quiver

# pi[a - 1] is the vertex at position a
Permutation = Tuple[int, ...]


def positions(pi: Sequence[int]) -> Dict[int, int]:
    """
    Inverse permutation as a dict: vertex -> position (1-based).
    """
    return {v: a for a, v in enumerate(pi, start=1)}


def parse_permutation(text: str) -> Permutation:
    """
    Parses a one-line image list such as "1 2 4 3" or "1,2,4,3".
    """
    values = tuple(int(t) for t in text.replace(",", " ").split())
    if sorted(values) != list(range(1, len(values) + 1)):
        raise ValueError(f"Not a permutation of 1..{len(values)}: {text!r}")
    return values


def format_permutation(pi: Sequence[int]) -> str:
    return " ".join(str(v) for v in pi)


# ----------------------------------------------------------------------
# P_Q
# ----------------------------------------------------------------------

def in_pq(q: Quiver, pi: Sequence[int]) -> bool:
    """
    True if pi is a permutation of the vertices in which every arrow points to a later position.
    """
    if sorted(pi) != q.mutable_vertices:
        return False
    pos = positions(pi)
    return all(pos[t] < pos[h] for t, h in q.graph().edges())


def enumerate_pq(q: Quiver, limit: Optional[int] = None) -> List[Permutation]:
    """
    Linear extensions of the arrow order of an acyclic quiver, lexicographically sorted.

    Args:
        q: Acyclic quiver.
        limit: If given, stop after this many extensions (the returned list is then not sorted
            across the full set, only among those generated).
    """
    g = q.graph()
    if not nx.is_directed_acyclic_graph(g):
        raise ValueError("P_Q is defined for acyclic quivers only")
    sorts = nx.all_topological_sorts(g)
    if limit is not None:
        sorts = islice(sorts, limit)
    return sorted(tuple(s) for s in sorts)


def count_pq(q: Quiver, cap: int) -> int:
    """
    |P_Q|, counting at most cap + 1 extensions.
    """
    return sum(1 for _ in islice(nx.all_topological_sorts(q.graph()), cap + 1))


def sample_pq(q: Quiver, cap: int, sample: int, seed: int) -> Tuple[List[Permutation], bool]:
    """
    All of P_Q when |P_Q| <= cap, otherwise a deterministic seeded sample.

    Returns:
        The permutations (sorted) and whether the list is exhaustive.
    """
    if count_pq(q, cap) <= cap:
        return enumerate_pq(q), True
    rng = np.random.default_rng(seed)
    picked = set()
    g = q.graph()
    # Random linear extensions: repeatedly take a uniformly chosen source of the remaining graph
    attempts = 0
    while len(picked) < sample and attempts < 50 * sample:
        attempts += 1
        h = g.copy()
        order = []
        while h.number_of_nodes():
            sources = sorted(v for v in h.nodes if h.in_degree(v) == 0)
            v = sources[int(rng.integers(len(sources)))]
            order.append(v)
            h.remove_node(v)
        picked.add(tuple(order))
    return sorted(picked), False


def commutation_class(q: Quiver, pi: Sequence[int], cap: int) -> List[Permutation]:
    """
    Permutations in P_Q with the same Coxeter element as pi: closure of pi under swapping
    adjacent positions whose vertices are not joined by an arrow. pi comes first, the rest in
    breadth-first order, at most cap entries.
    """
    g = q.underlying_graph()
    start = tuple(pi)
    seen = {start}
    order = [start]
    idx = 0
    while idx < len(order) and len(order) < cap:
        cur = order[idx]
        idx += 1
        for a in range(len(cur) - 1):
            if g.has_edge(cur[a], cur[a + 1]):
                continue
            nxt = cur[:a] + (cur[a + 1], cur[a]) + cur[a + 2:]
            if nxt not in seen:
                seen.add(nxt)
                order.append(nxt)
                if len(order) >= cap:
                    break
    return order


# ----------------------------------------------------------------------
# Subquivers
# ----------------------------------------------------------------------

def phi(pi: Sequence[int], vertices: Sequence[int]) -> Permutation:
    """
    Restriction of pi to a vertex set: the entries of pi lying in the set, in position order.
    """
    keep = set(vertices)
    return tuple(v for v in pi if v in keep)


def phi_preimage(q: Quiver, pi_sub: Sequence[int]) -> Optional[Permutation]:
    """
    Some pi in P_Q whose restriction to the vertices of pi_sub is pi_sub, or None if none exists.
    The lexicographically smallest such pi is returned.
    """
    g = q.graph().copy()
    for a, b in zip(pi_sub, pi_sub[1:]):
        g.add_edge(a, b)
    if not nx.is_directed_acyclic_graph(g):
        return None
    return tuple(nx.lexicographical_topological_sort(g))


def sub_positions(pi: Sequence[int], vertices: Sequence[int]) -> List[int]:
    """
    Ascending positions a_1 < ... < a_k of a vertex set inside pi.
    """
    pos = positions(pi)
    return sorted(pos[v] for v in vertices)


# ----------------------------------------------------------------------
# Type A unimodal bijection
# ----------------------------------------------------------------------

def is_unimodal(pi: Sequence[int]) -> bool:
    """
    True if pi increases up to n and decreases afterwards.
    """
    n = len(pi)
    peak = list(pi).index(n)
    return all(pi[a] < pi[a + 1] for a in range(peak)) and all(pi[a] > pi[a + 1] for a in range(peak, n - 1))


def unimodal_psi(q: Quiver) -> Permutation:
    """
    Unimodal permutation of a type A quiver on the path 1 - 2 - ... - n: the vertices i whose
    edge e_i (between i and i+1) has tail i in increasing order, then n, then the remaining
    vertices in decreasing order.
    """
    n = q.n
    if q.dynkin_type() != f"A{n}" or any(not q.underlying_graph().has_edge(i, i + 1) for i in range(1, n)):
        raise ValueError(f"psi needs a type A quiver on the path 1..{n}, got: {q}")
    arrows = q.arrows
    up = [i for i in range(1, n) if (i, i + 1) in arrows]
    down = [i for i in range(n - 1, 0, -1) if (i + 1, i) in arrows]
    return tuple(up + [n] + down)


def unimodal_omega(pi: Sequence[int]) -> Quiver:
    """
    Type A quiver of a unimodal permutation: e_i points i -> i+1 iff i comes before n in pi.
    """
    if sorted(pi) != list(range(1, len(pi) + 1)):
        raise ValueError(f"Not a permutation: {tuple(pi)}")
    if not is_unimodal(pi):
        raise ValueError(f"Permutation is not unimodal: {tuple(pi)}")
    pos = positions(pi)
    n = len(pi)
    return path_quiver(n, [pos[i] < pos[n] for i in range(1, n)])
