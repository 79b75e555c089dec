"""Static Ford-circle picture with the principal convergents of x highlighted"""

import svgwrite
from prefect.logging import get_logger

from utilities.util_approx import ford_radius
from utilities.util_arith import Parity, classify, reduced_rationals
from utilities.util_convergents import principal_convergents

logger = get_logger(__name__)

ONE_FILL = "#b0b0b0"
INF_FILL = "#ffffff"
HIGHLIGHT = "#d62728"


def ford_bases(den_max):
    """Reduced p/q in [0, 1] with q <= den_max, ordered by (q, p)."""
    return reduced_rationals(den_max, closed=True)


def _circle(dwg, r, width, height, **style):
    radius = float(ford_radius(r)) * width
    return dwg.circle(
        center=(round(float(r) * width, 4), round(height - radius, 4)),
        r=round(radius, 4),
        **style,
    )


def render_ford_svg(x, n=6, den_max=9, width=800):
    """Ford circles up to den_max plus the first n principal convergents of x.

    Gray circles sit on 1-rationals and white ones on inf-rationals; the
    convergent circles get a red outline and a marker line stands at x.

    Args:
        x (Fraction | QuadIrr): The point being approximated
        n (int, optional): Number of convergents to highlight. Defaults to 6.
        den_max (int, optional): Largest background denominator. Defaults to 9.
        width (int, optional): Drawing width in pixels. Defaults to 800.

    Returns:
        str: The SVG document
    """
    height = width // 2 + 10
    dwg = svgwrite.Drawing(size=(width, height))
    dwg.add(dwg.line(start=(0, height), end=(width, height), stroke="black"))
    for r in ford_bases(den_max):
        fill = ONE_FILL if classify(r) is Parity.ONE_RATIONAL else INF_FILL
        dwg.add(_circle(dwg, r, width, height, fill=fill, stroke="black", stroke_width=0.5))

    convergents = principal_convergents(x, n_max=n)
    for r in convergents:
        dwg.add(
            _circle(dwg, r, width, height, fill="none", stroke=HIGHLIGHT, stroke_width=1.5)
        )
    xpos = round(float(x) * width, 4)
    dwg.add(dwg.line(start=(xpos, 0), end=(xpos, height), stroke=HIGHLIGHT, stroke_dasharray="4,3"))
    logger.info("%s background circles, %s highlighted", len(ford_bases(den_max)), len(convergents))
    return dwg.tostring()
