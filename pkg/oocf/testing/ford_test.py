from fractions import Fraction

from utilities.util_arith import QuadIrr
from utilities.util_ford import HIGHLIGHT, INF_FILL, ONE_FILL, ford_bases, render_ford_svg

SQRT2_M1 = QuadIrr(-1, 1, 2, 1)


def test_ford_bases_order():
    assert ford_bases(3) == [
        Fraction(0),
        Fraction(1),
        Fraction(1, 2),
        Fraction(1, 3),
        Fraction(2, 3),
    ]


def test_svg_colors_and_highlights():
    svg = render_ford_svg(SQRT2_M1, n=4, den_max=9)
    assert svg.startswith("<svg")
    assert svg.count("<circle") == len(ford_bases(9)) + 4
    assert svg.count(f'stroke="{HIGHLIGHT}"') >= 4
    assert ONE_FILL in svg and INF_FILL in svg


def test_svg_is_deterministic():
    assert render_ford_svg(SQRT2_M1, n=6) == render_ford_svg(SQRT2_M1, n=6)
