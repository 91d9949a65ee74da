from fractions import Fraction

import pytest

from src.arc_diagram import ArcDiagram
from src.render import render, render_ascii


def test_ascii_of_straight_curve():
    assert render_ascii(ArcDiagram.gamma(3, 1)) == "b * 2 3\n+-+\n"


def test_ascii_marks_crossings_and_upper_arcs():
    text = render(ArcDiagram.right_sweep(3, 1))
    rows = text.splitlines()
    assert rows[0] == "  +-----+"
    assert rows[2] == "+-------+"
    assert "x" in rows[1]
    assert rows[1].startswith("b *")


def test_svg_output():
    d = ArcDiagram(3, 3, [Fraction(3, 2), Fraction(7, 2)])
    svg = render(d, "svg")
    assert "<svg" in svg
    assert svg.rstrip().endswith("</svg>")
    assert svg.count('id="chord-') == 3
    assert 'id="basepoint"' in svg
    assert "#cc0000" in svg
    # no timestamp, fixed ids
    assert render(d, "svg") == svg


def test_render_refuses_self_crossing_and_unknown_format():
    with pytest.raises(ValueError):
        render(ArcDiagram(3, 1, [Fraction(5, 2), Fraction(3, 2), Fraction(7, 2)]))
    with pytest.raises(ValueError):
        render(ArcDiagram.gamma(2, 1), "png")
