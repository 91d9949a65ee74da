from typing import Dict, Sequence, Tuple

from src.arc_diagram import ArcDiagram
from src.permutations import Permutation, positions, unimodal_psi
from src.quiver import Quiver


def apply_sigma_operator(d: ArcDiagram, pi: Sequence[int], i: int) -> ArcDiagram:
    """
    Moves the start of a curve from the position of vertex i to the position of vertex i+1.

    With a = pos(i) and b = pos(i+1): if a < b, applies sigma_a and then sigma_{a+1}^-1, ...,
    sigma_{b-1}^-1; otherwise applies sigma_{a-1}^-1 and then sigma_{a-2}, ..., sigma_b.
    """
    pos = positions(pi)
    a, b = pos[i], pos[i + 1]
    if a < b:
        word = [a] + [-j for j in range(a + 1, b)]
    else:
        word = [-(a - 1)] + list(range(a - 2, b - 1, -1))
    return d.braid_word_apply(word)


def construct_type_a_strict(q: Quiver, first: int, last: int) -> Tuple[Permutation, ArcDiagram]:
    """
    Strictly increasing curve for the root alpha_first + ... + alpha_last of a type A quiver on
    the path 1 - 2 - ... - n, under its unimodal permutation.

    Returns:
        The unimodal permutation and the curve, whose word under it is
        (last, [last-1, ..., first]).
    """
    pi = unimodal_psi(q)
    if not 1 <= first <= last <= q.n:
        raise ValueError(f"Need 1 <= first <= last <= {q.n}, got: first = {first}, last = {last}")
    d = ArcDiagram.gamma(q.n, positions(pi)[first])
    for i in range(first, last):
        d = apply_sigma_operator(d, pi, i)
    return pi, d


def type_a_interval(root: Sequence[int]) -> Tuple[int, int]:
    """
    (first, last) for a type A root alpha_first + ... + alpha_last on the standard path.
    """
    supp = [i + 1 for i, c in enumerate(root) if c != 0]
    if not supp or any(c not in (0, 1) for c in root) or supp != list(range(supp[0], supp[-1] + 1)):
        raise ValueError(f"Not a type A root on the standard path: {tuple(root)}")
    return supp[0], supp[-1]


def standardize(q: Quiver) -> Tuple[Quiver, Dict[int, int]]:
    """
    Relabels a type A quiver onto the path 1 - 2 - ... - n.

    Returns:
        The relabelled quiver and the map from original to standard labels.
    """
    if not q.dynkin_type().startswith("A"):
        raise ValueError(f"Type A quiver expected, got type: {q.dynkin_type()}")
    labels = q.paper_labeling()
    return q.relabel(labels), labels
