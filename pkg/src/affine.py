from typing import Dict, List, Tuple

from src.quiver import Quiver
from src.root_system import Root, root_sort_key


class AffineFamily:
    """
    One member of the affine A root families on the cycle with source s, sink t and the two
    paths s -> p_1 -> ... -> p_k -> t and s -> q_1 -> ... -> q_l -> t.

    The source-heavy variant is g * (alpha_s + p_1..p_u + q_1..q_v) + (g-1) * (the rest and
    alpha_t); the sink-heavy variant swaps the multiplicities g and g-1.
    """

    def __init__(self, k: int, l: int, g: int, u: int, v: int, variant: str) -> None:
        if not 0 <= u <= k or not 0 <= v <= l:
            raise ValueError(f"Need 0 <= u <= {k} and 0 <= v <= {l}, got: u = {u}, v = {v}")
        if g < 1:
            raise ValueError(f"Level must be at least 1, got: {g}")
        if variant not in ("source-heavy", "sink-heavy"):
            raise ValueError(f"Unknown variant: {variant!r}")
        self.k, self.l, self.g, self.u, self.v, self.variant = k, l, g, u, v, variant

    def __str__(self) -> str:
        return f"AffineFamily(k = {self.k}, l = {self.l}, g = {self.g}, u = {self.u}, v = {self.v}, variant = {self.variant})"

    def root(self) -> Root:
        """
        Coefficients in the labels of affine_a_quiver(k, l).
        """
        labels = affine_a_labels(self.k, self.l)
        head = {labels["s"]} | {labels[f"p{i}"] for i in range(1, self.u + 1)} | {labels[f"q{i}"] for i in range(1, self.v + 1)}
        big, small = (self.g, self.g - 1) if self.variant == "source-heavy" else (self.g - 1, self.g)
        n = self.k + self.l + 2
        return tuple(big if vertex in head else small for vertex in range(1, n + 1))


def affine_a_labels(k: int, l: int) -> Dict[str, int]:
    """
    Vertex labels: s = 1, p_1..p_k = 2..k+1, q_1..q_l = k+2..k+l+1, t = k+l+2.
    """
    labels = {"s": 1, "t": k + l + 2}
    labels.update({f"p{i}": 1 + i for i in range(1, k + 1)})
    labels.update({f"q{i}": k + 1 + i for i in range(1, l + 1)})
    return labels


def affine_a_quiver(k: int, l: int) -> Quiver:
    """
    Affine A quiver with a unique source s and a unique sink t joined by paths with k and l
    interior vertices. The permutation (s, p_1..p_k, q_1..q_l, t) is the identity in these labels.
    """
    if k < 0 or l < 0:
        raise ValueError(f"Path lengths must be non-negative, got: k = {k}, l = {l}")
    if k == 0 and l == 0:
        raise ValueError("k = l = 0 gives a double arrow, which is not simply laced")
    labels = affine_a_labels(k, l)
    p_path = ["s"] + [f"p{i}" for i in range(1, k + 1)] + ["t"]
    q_path = ["s"] + [f"q{i}" for i in range(1, l + 1)] + ["t"]
    arrows = [(labels[a], labels[b]) for path in (p_path, q_path) for a, b in zip(path, path[1:])]
    return Quiver(k + l + 2, arrows)


def affine_a_families(k: int, l: int, g_max: int) -> List[AffineFamily]:
    """
    Every family member for 1 <= g <= g_max, 0 <= u <= k, 0 <= v <= l and both variants.
    """
    return [
        AffineFamily(k, l, g, u, v, variant)
        for g in range(1, g_max + 1)
        for variant in ("source-heavy", "sink-heavy")
        for u in range(k + 1)
        for v in range(l + 1)
    ]


def affine_a_roots(k: int, l: int, g_max: int) -> List[Root]:
    """
    Deduplicated family roots in canonical order.
    """
    roots = {f.root() for f in affine_a_families(k, l, g_max)}
    return sorted(roots, key=root_sort_key)


def family_of(root: Root, k: int, l: int) -> List[Tuple[int, int, int, str]]:
    """
    (g, u, v, variant) of every family member equal to a root.
    """
    g_max = max(root) + 1
    return [(f.g, f.u, f.v, f.variant) for f in affine_a_families(k, l, g_max) if f.root() == tuple(root)]
