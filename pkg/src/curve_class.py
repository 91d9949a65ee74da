from typing import List, Sequence

from src.arc_diagram import ArcDiagram, CrossingWord
from src.root_system import Root, RootSystem, leq_d, sign_of


class CurveClass:
    """
    Classification of a curve under a permutation: prefix roots and the three monotonicity flags.
    """

    def __init__(self, word: CrossingWord, intermediate_roots: List[Root]) -> None:
        """
        Initializes a CurveClass.

        Args:
            word: Crossing word already mapped through the permutation (vertices, not positions).
            intermediate_roots: Root after each prefix of reflections, starting with the simple
                root of the start vertex.
        """
        self._word: CrossingWord = word
        self._roots: List[Root] = intermediate_roots
        final = intermediate_roots[-1]
        self._positive: bool = sign_of(final) == 1
        steps = [leq_d(a, b) for a, b in zip(intermediate_roots, intermediate_roots[1:])]
        self._non_decreasing: bool = all(s in ("less", "equal") for s in steps)
        self._strictly_increasing: bool = all(s == "less" for s in steps)

    def __str__(self) -> str:
        return (
            f"CurveClass(word = {self._word}, root = {self.root}, positive = {self._positive}, "
            f"non_decreasing = {self._non_decreasing}, strictly_increasing = {self._strictly_increasing})"
        )

    @property
    def word(self) -> CrossingWord:
        """
        Crossing word in vertex labels.
        """
        return self._word

    @property
    def intermediate_roots(self) -> List[Root]:
        return list(self._roots)

    @property
    def positive(self) -> bool:
        """
        True if the unnormalized final root is positive.
        """
        return self._positive

    @property
    def non_decreasing(self) -> bool:
        return self._non_decreasing

    @property
    def strictly_increasing(self) -> bool:
        return self._strictly_increasing

    @property
    def root(self) -> Root:
        """
        Associated root, normalized to be positive.
        """
        final = self._roots[-1]
        return final if sign_of(final) >= 0 else tuple(-c for c in final)


def classify(d: ArcDiagram, pi: Sequence[int], rs: RootSystem) -> CurveClass:
    """
    Applies s_pi(k_1), s_pi(k_2), ... to alpha_pi(k_0) and records every prefix root.
    """
    if d.n != rs.n:
        raise ValueError(f"Diagram has {d.n} marked points but the root system has rank {rs.n}")
    word = d.crossing_word().apply(pi)
    roots = [rs.simple_root(word.start)]
    for v in word.rays:
        roots.append(rs.reflect(v, roots[-1]))
    return CurveClass(word, roots)


def associated_root(d: ArcDiagram, pi: Sequence[int], rs: RootSystem) -> Root:
    """
    Positive root s_pi(k_m) ... s_pi(k_1) alpha_pi(k_0), negated when negative.
    """
    return classify(d, pi, rs).root


def realizes(d: ArcDiagram, pi: Sequence[int], rs: RootSystem, alpha: Sequence[int], strict: bool = False) -> bool:
    """
    True if d is non-self-crossing, non-decreasing (strictly increasing when strict) under pi,
    and its associated root is alpha.
    """
    if d.n != rs.n or not d.is_non_self_crossing():
        return False
    cls = classify(d, pi, rs)
    flag = cls.strictly_increasing if strict else cls.non_decreasing
    return flag and cls.root == tuple(alpha)
