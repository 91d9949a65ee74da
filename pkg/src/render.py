import io
from fractions import Fraction
from typing import Dict, List, Tuple

import matplotlib
import matplotlib.pyplot as plt
from matplotlib.patches import Arc, Circle

from src.arc_diagram import BASEPOINT, ArcDiagram

# Figure inches per marked point slot in svg output
SVG_SLOT_INCHES: float = 0.5

# Arc height (in slots) added per nesting level in svg output
SVG_LEVEL_HEIGHT: float = 0.45

# Fixed id salt so identical diagrams give byte-identical svg
SVG_HASH_SALT: str = "schur-root-realizer"


def _columns(d: ArcDiagram) -> Dict[Fraction, int]:
    """
    Column of every point that appears in the drawing (b, marked points, crossings).
    """
    xs = sorted({BASEPOINT} | {Fraction(i) for i in range(1, d.n + 1)} | set(d.crossings))
    return {x: 2 * idx for idx, x in enumerate(xs)}


def _nesting_depths(d: ArcDiagram) -> List[Tuple[Fraction, Fraction, bool, int]]:
    """
    Chords with their nesting depth: 1 plus the largest depth of a same-side chord nested inside.
    """
    chords = [(min(u, v), max(u, v), upper) for _, u, v, upper in d.chords()]
    resolved: Dict[int, int] = {}

    def depth(idx: int) -> int:
        if idx in resolved:
            return resolved[idx]
        lo, hi, upper = chords[idx]
        inner = [j for j, (lo2, hi2, up2) in enumerate(chords) if up2 == upper and lo < lo2 and hi2 < hi]
        resolved[idx] = 1 + max((depth(j) for j in inner), default=0)
        return resolved[idx]

    return [(lo, hi, upper, depth(idx)) for idx, (lo, hi, upper) in enumerate(chords)]


def render_ascii(d: ArcDiagram) -> str:
    """
    Text drawing: arcs above and below the line, nested arcs drawn higher. Marked points are
    printed as their index (last digit), crossings as `x`, the basepoint as `b`.
    """
    cols = _columns(d)
    chords = _nesting_depths(d)
    up_rows = max([lv for _, _, up, lv in chords if up] + [0])
    down_rows = max([lv for _, _, up, lv in chords if not up] + [0])
    width = max(cols.values()) + 1
    grid = [[" "] * width for _ in range(up_rows + 1 + down_rows)]
    axis = up_rows
    for x, c in cols.items():
        if x == BASEPOINT:
            grid[axis][c] = "b"
        elif x.denominator == 1 and 1 <= x <= d.n:
            grid[axis][c] = "*" if x == d.start else str(int(x) % 10)
        else:
            grid[axis][c] = "x"
    for lo, hi, upper, level in chords:
        row = axis - level if upper else axis + level
        step = -1 if upper else 1
        c_lo, c_hi = cols[lo], cols[hi]
        for r in range(axis + step, row, step):
            for c in (c_lo, c_hi):
                if grid[r][c] == " ":
                    grid[r][c] = "|"
        for c in range(c_lo, c_hi + 1):
            grid[row][c] = "-"
        grid[row][c_lo] = grid[row][c_hi] = "+"
    return "\n".join("".join(r).rstrip() for r in grid) + "\n"


def render_svg(d: ArcDiagram) -> str:
    """
    SVG drawing made with matplotlib: half-ellipse arcs whose height grows with nesting depth,
    marked points as dots (the start in red), the basepoint as a hollow circle.
    """
    cols = _columns(d)
    chords = _nesting_depths(d)
    up_rows = max([lv for _, _, up, lv in chords if up] + [0])
    down_rows = max([lv for _, _, up, lv in chords if not up] + [0])

    def slot(x: Fraction) -> float:
        return cols[x] / 2

    right = max(cols.values()) / 2
    top = (up_rows + 1) * SVG_LEVEL_HEIGHT
    bottom = (down_rows + 1) * SVG_LEVEL_HEIGHT
    with matplotlib.rc_context({"svg.hashsalt": SVG_HASH_SALT, "svg.fonttype": "none"}):
        fig, ax = plt.subplots(figsize=((right + 1) * SVG_SLOT_INCHES, (top + bottom) * SVG_SLOT_INCHES))
        try:
            ax.axhline(0, color="#999999", linestyle="--", linewidth=0.8)
            for i in range(1, d.n + 1):
                ax.plot([slot(Fraction(i))] * 2, [0, top], color="#cccccc", linewidth=0.8)
            for idx, (lo, hi, upper, level) in enumerate(chords):
                x1, x2 = slot(lo), slot(hi)
                ax.add_patch(Arc(((x1 + x2) / 2, 0), x2 - x1, 2 * level * SVG_LEVEL_HEIGHT,
                                 theta1=0 if upper else 180, theta2=180 if upper else 360,
                                 color="#000000", gid=f"chord-{idx}"))
            for i in range(1, d.n + 1):
                x = slot(Fraction(i))
                colour = "#cc0000" if i == d.start else "#000000"
                ax.add_patch(Circle((x, 0), 0.08, color=colour, gid=f"point-{i}"))
                ax.text(x + 0.1, -0.2, str(i), fontsize=9)
            ax.add_patch(Circle((slot(BASEPOINT), 0), 0.08, fill=False, color="#000000", gid="basepoint"))
            ax.text(slot(BASEPOINT) - 0.1, -0.2, "b", fontsize=9)
            ax.set_xlim(-0.5, right + 0.5)
            ax.set_ylim(-bottom, top)
            ax.set_aspect("equal")
            ax.axis("off")
            buf = io.BytesIO()
            fig.savefig(buf, format="svg", bbox_inches="tight", metadata={"Date": None})
        finally:
            plt.close(fig)
    return buf.getvalue().decode("utf-8")


def render(d: ArcDiagram, fmt: str = "ascii") -> str:
    """
    Renders a non-self-crossing diagram as "ascii" or "svg".
    """
    if not d.is_non_self_crossing():
        raise ValueError(f"Cannot render a self-crossing diagram: {d}")
    match fmt:
        case "ascii":
            return render_ascii(d)
        case "svg":
            return render_svg(d)
    raise ValueError(f"Unknown render format: {fmt!r}")
