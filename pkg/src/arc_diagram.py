"""
Combinatorial model of non-self-crossing admissible curves.

Marked points sit at the integer positions 1..n of a horizontal line; the basepoint b sits
below the line and is treated as position 0. A curve is recorded by its start point and the
ordered positions x_1..x_m where it crosses the line. Consecutive points are joined by arcs
that alternate sides; the final arc into b is on the lower side, so arc k (from point k to
point k+1, point 0 being the start) is lower iff m - k is even.

On each side, arcs are chords over their endpoint positions and the curve is non-self-crossing
iff no two chords on the same side interleave. For the lower side this remains correct for the
arc into b because b lies on the boundary of the lower strip to the left of every point of the
line, which is the cyclic order of position 0.

An upper arc from u to v crosses the ray above every marked point strictly between u and v.
"""

from fractions import Fraction
from math import floor
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

# Position of the basepoint b
BASEPOINT = Fraction(0)

# (index, from, to, upper) in travel order
Chord = Tuple[int, Fraction, Fraction, bool]


class DiagramFormatError(ValueError):
    """
    Raised when a diagram text file cannot be parsed.
    """

    def __init__(self, message: str, line: Optional[int] = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CrossingWord:
    """
    Start index k_0 and the rays k_1..k_m crossed in order.
    """

    def __init__(self, start: int, rays: Sequence[int]) -> None:
        self._start: int = start
        self._rays: Tuple[int, ...] = tuple(rays)

    def __str__(self) -> str:
        return f"({self._start},[{','.join(str(r) for r in self._rays)}])"

    def __repr__(self) -> str:
        return f"CrossingWord{self}"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CrossingWord):
            return NotImplemented
        return self._start == other._start and self._rays == other._rays

    def __hash__(self) -> int:
        return hash((self._start, self._rays))

    def __len__(self) -> int:
        return len(self._rays)

    @property
    def start(self) -> int:
        return self._start

    @property
    def rays(self) -> Tuple[int, ...]:
        return self._rays

    def apply(self, pi: Sequence[int]) -> "CrossingWord":
        """
        Image under a permutation: every position k is replaced by the vertex pi(k).
        """
        return CrossingWord(pi[self._start - 1], [pi[k - 1] for k in self._rays])


class ArcDiagram:
    """
    Immutable arc diagram on n marked points.
    """

    def __init__(self, n: int, start: int, crossings: Iterable = ()) -> None:
        """
        Initializes an ArcDiagram.

        Args:
            n: Number of marked points.
            start: Marked point where the curve begins, in 1..n.
            crossings: Positions where the curve crosses the line, in travel order.
        """
        if n < 1:
            raise ValueError(f"Diagram needs at least one marked point, got: {n}")
        if start < 1 or start > n:
            raise ValueError(f"Start point must be in 1..{n}, got: {start}")
        xs = tuple(Fraction(x) for x in crossings)
        for x in xs:
            if x <= 0:
                raise ValueError(f"Crossing positions must be positive, got: {x}")
            if x.denominator == 1 and 1 <= x <= n:
                raise ValueError(f"Crossing position {x} coincides with a marked point")
        if len(set(xs)) != len(xs):
            raise ValueError(f"Crossing positions must be distinct, got: {[str(x) for x in xs]}")
        self._n: int = n
        self._start: int = start
        self._crossings: Tuple[Fraction, ...] = xs

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def gamma(cls, n: int, i: int) -> "ArcDiagram":
        """
        Straight curve from marked point i to b.
        """
        return cls(n, i)

    @classmethod
    def right_sweep(cls, n: int, i: int) -> "ArcDiagram":
        """
        Curve from i passing over i+1..n, then under everything to b. Its word is (i, [i+1..n]).
        """
        if i == n:
            return cls.gamma(n, i)
        return cls(n, i, [Fraction(2 * n + 1, 2)])

    @classmethod
    def left_sweep(cls, n: int, i: int) -> "ArcDiagram":
        """
        Curve from i passing over i-1..1, then to b. Its word is (i, [i-1..1]).
        """
        if i == 1:
            return cls.gamma(n, i)
        return cls(n, i, [Fraction(1, 2)])

    @classmethod
    def from_text(cls, text: str, n: Optional[int] = None) -> "ArcDiagram":
        """
        Parses `start <s>` and `crossings <x_1> ... <x_m>` lines (rationals as p/q); an
        optional `n <N>` line fixes the number of marked points, otherwise `n` is used, and
        failing that it is inferred from the positions.
        """
        start: Optional[int] = None
        crossings: Optional[List[Fraction]] = None
        declared_n: Optional[int] = None
        for line_no, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            match parts[0]:
                case "n":
                    if len(parts) != 2 or not parts[1].isdigit():
                        raise DiagramFormatError(f"expected 'n <N>', got: {line!r}", line_no)
                    declared_n = int(parts[1])
                case "start":
                    if len(parts) != 2 or not parts[1].isdigit():
                        raise DiagramFormatError(f"expected 'start <s>', got: {line!r}", line_no)
                    start = int(parts[1])
                case "crossings":
                    try:
                        crossings = [Fraction(p) for p in parts[1:]]
                    except (ValueError, ZeroDivisionError) as e:
                        raise DiagramFormatError(f"bad rational in {line!r}: {e}", line_no) from e
                case _:
                    raise DiagramFormatError(f"unknown keyword: {parts[0]!r}", line_no)
        if start is None:
            raise DiagramFormatError("missing 'start <s>' line")
        crossings = crossings or []
        if declared_n is None:
            declared_n = n
        if declared_n is None:
            declared_n = max([start] + [floor(x) for x in crossings])
        try:
            return cls(declared_n, start, crossings)
        except ValueError as e:
            raise DiagramFormatError(str(e)) from e

    @classmethod
    def load(cls, path: str, n: Optional[int] = None) -> "ArcDiagram":
        with open(path, "r", encoding="utf-8") as f:
            return cls.from_text(f.read(), n)

    def to_text(self) -> str:
        """
        Diagram text format without the `n` line.
        """
        xs = " ".join(_fmt(x) for x in self._crossings)
        return f"start {self._start}\ncrossings {xs}".rstrip() + "\n"

    # ------------------------------------------------------------------
    # Accessors
    # ------------------------------------------------------------------

    def __str__(self) -> str:
        return f"ArcDiagram(n = {self._n}, start = {self._start}, crossings = [{', '.join(_fmt(x) for x in self._crossings)}])"

    def __repr__(self) -> str:
        return str(self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ArcDiagram):
            return NotImplemented
        return (self._n, self._start, self._crossings) == (other._n, other._start, other._crossings)

    def __hash__(self) -> int:
        return hash((self._n, self._start, self._crossings))

    @property
    def n(self) -> int:
        return self._n

    @property
    def start(self) -> int:
        return self._start

    @property
    def crossings(self) -> Tuple[Fraction, ...]:
        return self._crossings

    @property
    def crossing_count(self) -> int:
        """
        Number of crossings with the line.
        """
        return len(self._crossings)

    def points(self) -> List[Fraction]:
        """
        Start, crossings and the basepoint, in travel order.
        """
        return [Fraction(self._start)] + list(self._crossings) + [BASEPOINT]

    def chords(self) -> List[Chord]:
        """
        Arcs in travel order with their side (upper or lower) forced by parity.
        """
        pts = self.points()
        m = len(self._crossings)
        return [(k, pts[k], pts[k + 1], (m - k) % 2 == 1) for k in range(m + 1)]

    def interval(self, x: Fraction) -> int:
        """
        Index j of the gap (j, j+1) holding x; everything beyond n belongs to gap n.
        """
        return min(floor(x), self._n)

    # ------------------------------------------------------------------
    # Planarity and words
    # ------------------------------------------------------------------

    def is_non_self_crossing(self) -> bool:
        """
        True iff neither side has two interleaving chords.
        """
        upper = [(u, v) for _, u, v, up in self.chords() if up]
        lower = [(u, v) for _, u, v, up in self.chords() if not up]
        return non_interleaving(upper) and non_interleaving(lower)

    def crossing_word(self) -> CrossingWord:
        """
        Start position and the rays crossed, read off the upper arcs in travel order.

        Raises:
            ValueError: If the diagram is self-crossing.
        """
        if not self.is_non_self_crossing():
            raise ValueError(f"Crossing word of a self-crossing diagram requested: {self}")
        rays: List[int] = []
        for _, u, v, upper in self.chords():
            if upper:
                rays.extend(rays_between(u, v, self._n))
        return CrossingWord(self._start, rays)

    # ------------------------------------------------------------------
    # Normal form
    # ------------------------------------------------------------------

    def canonical(self) -> "ArcDiagram":
        """
        Same diagram with positions renormalized to j + rank / (count + 1) inside each gap.
        """
        by_gap: Dict[int, List[Fraction]] = {}
        for x in self._crossings:
            by_gap.setdefault(self.interval(x), []).append(x)
        remap: Dict[Fraction, Fraction] = {}
        for j, xs in by_gap.items():
            xs.sort()
            for rank, x in enumerate(xs, start=1):
                remap[x] = j + Fraction(rank, len(xs) + 1)
        return ArcDiagram(self._n, self._start, [remap[x] for x in self._crossings])

    def reduce(self) -> "ArcDiagram":
        """
        Removes empty bigons until none is left and returns the canonical form.

        A bigon is an arc between two consecutive crossings in the same gap with no other point
        of the curve between them, or the first arc when it returns to the gap next to the start
        point without enclosing anything.
        """
        start = Fraction(self._start)
        xs = list(self._crossings)
        changed = True
        while changed:
            changed = False
            occupied = sorted([start] + xs)
            for k in range(1, len(xs)):
                a, b = xs[k - 1], xs[k]
                if self.interval(a) == self.interval(b) and not _any_between(occupied, a, b):
                    del xs[k - 1:k + 1]
                    changed = True
                    break
            if changed:
                continue
            if xs and abs(xs[0] - start) < 1 and not _any_between(occupied, start, xs[0]):
                del xs[0]
                changed = True
        return ArcDiagram(self._n, self._start, xs).canonical()

    # ------------------------------------------------------------------
    # Surgery
    # ------------------------------------------------------------------

    def braid_apply(self, i: int, inverse: bool = False) -> "ArcDiagram":
        """
        Applies the half twist sigma_i (or its inverse) exchanging marked points i and i+1.

        Points inside the twist region (the start if it is i or i+1, crossings in gap i) are
        mirrored and their arcs change side. An arc with exactly one endpoint inside is rerouted
        through a new crossing in gap i+1 (sigma_i on upper arcs, sigma_i^-1 on lower arcs) or
        gap i-1 (the other two cases); the piece meeting the outer endpoint keeps the old side.
        New crossings sharing a gap are ordered by the position of their inner endpoint.
        """
        n = self._n
        if i < 1 or i >= n:
            raise ValueError(f"Braid generator index must be in 1..{n - 1}, got: {i}")

        def inside(x: Fraction) -> bool:
            return x != BASEPOINT and i <= x <= i + 1

        def mirror(x: Fraction) -> Fraction:
            return 2 * i + 1 - x

        pts: List = []
        sides: List[bool] = []
        placeholders: Dict[str, List[Fraction]] = {"right": [], "left": []}
        first = Fraction(self._start)
        pts.append(mirror(first) if inside(first) else first)
        for _, u, v, upper in self.chords():
            in_u, in_v = inside(u), inside(v)
            if in_u and in_v:
                pts.append(mirror(v))
                sides.append(not upper)
            elif not in_u and not in_v:
                pts.append(v)
                sides.append(upper)
            else:
                inner = u if in_u else v
                gap = "right" if upper != inverse else "left"
                token = (gap, inner)
                placeholders[gap].append(inner)
                if in_v:
                    pts.extend([token, mirror(v)])
                    sides.extend([upper, not upper])
                else:
                    pts.extend([token, v])
                    sides.extend([not upper, upper])

        m_new = len(pts) - 2
        for k, side in enumerate(sides):
            if side != ((m_new - k) % 2 == 1):
                raise RuntimeError(f"Side parity broken by sigma_{i}{'^-1' if inverse else ''} on {self}")

        fixed = [p for p in pts[1:-1] if not isinstance(p, tuple)]
        positions = {("right", e): x for e, x in self._fill_gap(fixed, i + 1, sorted(placeholders["right"]), leftmost=True).items()}
        positions.update({("left", e): x for e, x in self._fill_gap(fixed, i - 1, sorted(placeholders["left"]), leftmost=False).items()})
        crossings = [positions[p] if isinstance(p, tuple) else p for p in pts[1:-1]]

        out = ArcDiagram(n, int(pts[0]), crossings)
        if not out.is_non_self_crossing():
            raise RuntimeError(f"sigma_{i}{'^-1' if inverse else ''} produced a self-crossing diagram from {self}")
        return out.reduce()

    def braid_word_apply(self, word: Iterable[int]) -> "ArcDiagram":
        """
        Applies generators in order; a negative entry -i stands for sigma_i^-1.
        """
        d = self
        for g in word:
            d = d.braid_apply(abs(g), inverse=g < 0)
        return d

    def c_wrap(self, direction: int = 1) -> "ArcDiagram":
        """
        Appends a loop around all marked points before the final approach to b.

        Direction +1 passes below everything to beyond n, crosses up and travels over all
        points right to left (word gains n..1); direction -1 crosses up in gap 0 first and
        travels left to right (word gains 1..n).
        """
        n = self._n
        right = max([x for x in self._crossings if self.interval(x) == n] + [Fraction(n)]) + 1
        left = min([x for x in self._crossings if self.interval(x) == 0] + [Fraction(1)]) / 2
        match direction:
            case 1:
                extra = [right, left]
            case -1:
                extra = [left, right]
            case _:
                raise ValueError(f"Wrap direction must be +1 or -1, got: {direction}")
        out = ArcDiagram(n, self._start, list(self._crossings) + extra)
        if not out.is_non_self_crossing():
            raise RuntimeError(f"Coxeter wrap produced a self-crossing diagram from {self}")
        return out.reduce()

    def leaf_loop(self, q: int) -> "ArcDiagram":
        """
        Loops once around marked point q at the end of the curve; the word gains q.

        Raises:
            ValueError: If q is the start point or an arc other than the final one passes
                over or under q.
        """
        if q < 1 or q > self._n:
            raise ValueError(f"Loop point must be in 1..{self._n}, got: {q}")
        if q == self._start:
            raise ValueError(f"Cannot loop around the start point {q}")
        chords = self.chords()
        for _, u, v, _ in chords[:-1]:
            if min(u, v) < q < max(u, v):
                raise ValueError(f"An arc of {self} passes point {q}")
        last = chords[-1][1]
        z_left = (max([x for x in self._crossings if self.interval(x) == q - 1] + [Fraction(q - 1)]) + q) / 2
        z_right = (min([x for x in self._crossings if self.interval(x) == q] + [Fraction(q + 1)]) + q) / 2
        extra = [z_left, z_right] if last < q else [z_right, z_left]
        out = ArcDiagram(self._n, self._start, list(self._crossings) + extra)
        if not out.is_non_self_crossing():
            raise RuntimeError(f"Loop around {q} produced a self-crossing diagram from {self}")
        return out.reduce()

    def lift(self, positions: Sequence[int], n_big: int) -> "ArcDiagram":
        """
        Embeds a diagram drawn on k points into n_big points, where marked point j goes to
        positions[j-1]. Upper arcs dip under every other marked point they would pass over.
        """
        k = self._n
        if len(positions) != k:
            raise ValueError(f"Lift needs {k} positions, got: {len(positions)}")
        if list(positions) != sorted(set(positions)) or positions[0] < 1 or positions[-1] > n_big:
            raise ValueError(f"Lift positions must increase inside 1..{n_big}, got: {list(positions)}")
        base = self.canonical()

        def place(x: Fraction) -> Fraction:
            j = base.interval(x)
            frac = x - j
            return positions[0] - 1 + frac if j == 0 else positions[j - 1] + frac

        pts = [Fraction(positions[base.start - 1])] + [place(x) for x in base.crossings] + [BASEPOINT]
        m = len(base.crossings)
        chord_list = [(pts[c], pts[c + 1], (m - c) % 2 == 1) for c in range(m + 1)]
        used = set(pts[1:-1])
        dips: Dict[int, List[Tuple[int, Fraction, Fraction]]] = {}
        skipped = set(range(positions[0] + 1, positions[-1])) - set(positions)
        for q in sorted(skipped):
            spanning = [c for c, (u, v, upper) in enumerate(chord_list) if upper and min(u, v) < q < max(u, v)]
            if not spanning:
                continue
            # outermost chord dips closest to q
            spanning.sort(key=lambda c: -abs(chord_list[c][1] - chord_list[c][0]))
            lo = max([x for x in used if q - 1 < x < q] + [Fraction(q - 1)])
            hi = min([x for x in used if q < x < q + 1] + [Fraction(q + 1)])
            count = len(spanning)
            for rank, c in enumerate(spanning, start=1):
                left = q - (q - lo) * Fraction(rank, count + 1)
                right = q + (hi - q) * Fraction(rank, count + 1)
                dips.setdefault(c, []).append((q, left, right))
                used.update((left, right))
        crossings: List[Fraction] = []
        for c, (u, v, _) in enumerate(chord_list):
            for q, left, right in sorted(dips.get(c, []), reverse=u > v):
                crossings.extend([left, right] if u < v else [right, left])
            if c < m:
                crossings.append(v)
        out = ArcDiagram(n_big, positions[base.start - 1], crossings)
        if not out.is_non_self_crossing():
            raise RuntimeError(f"Lift produced a self-crossing diagram from {self}")
        return out.reduce()

    # ------------------------------------------------------------------
    # Helpers
    # ------------------------------------------------------------------

    def _fill_gap(self, fixed: List[Fraction], gap: int, inner_points: List[Fraction], leftmost: bool) -> Dict[Fraction, Fraction]:
        """
        Positions for new crossings in a gap, next to its left end (leftmost) or its right end,
        ordered left to right as inner_points.
        """
        if not inner_points:
            return {}
        in_gap = [x for x in fixed if self.interval(x) == gap]
        if leftmost:
            lo = Fraction(gap)
            hi = min(in_gap) if in_gap else Fraction(gap + 1)
        else:
            lo = max(in_gap) if in_gap else Fraction(gap)
            hi = Fraction(gap + 1)
        count = len(inner_points)
        return {e: lo + (hi - lo) * Fraction(rank, count + 1) for rank, e in enumerate(inner_points, start=1)}


# ----------------------------------------------------------------------
# Module-level helpers
# ----------------------------------------------------------------------

def rays_between(u: Fraction, v: Fraction, n: int) -> List[int]:
    """
    Marked points strictly between two positions, in the order met travelling from u to v.
    """
    lo, hi = (u, v) if u < v else (v, u)
    js = [j for j in range(max(1, floor(lo) + 1), n + 1) if lo < j < hi]
    return js if u < v else js[::-1]


def non_interleaving(chords: Iterable[Tuple[Fraction, Fraction]]) -> bool:
    """
    True iff no two chords interleave, tested as balanced parentheses over sorted endpoints.
    """
    events = []
    for idx, (u, v) in enumerate(chords):
        events.append((u, idx))
        events.append((v, idx))
    events.sort()
    stack: List[int] = []
    for _, idx in events:
        if stack and stack[-1] == idx:
            stack.pop()
        else:
            stack.append(idx)
    return not stack


def interleaves(a: Tuple[Fraction, Fraction], b: Tuple[Fraction, Fraction]) -> bool:
    """
    True if exactly one endpoint of chord b lies strictly inside chord a.
    """
    lo, hi = min(a), max(a)
    inside = sum(1 for x in b if lo < x < hi)
    outside = sum(1 for x in b if x < lo or x > hi)
    return inside == 1 and outside == 1


def _any_between(sorted_points: List[Fraction], a: Fraction, b: Fraction) -> bool:
    lo, hi = (a, b) if a < b else (b, a)
    return any(lo < x < hi for x in sorted_points)


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
