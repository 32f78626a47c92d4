"""Render the first construction levels side by side with the dust.

Writes an SVG with one row per level, touching attractor on top, the
equally spaced dust below.  All bar coordinates come from the exact
cylinder endpoints.
"""

import os
from fractions import Fraction

from lipeq import IfsSpec
from lipeq.render import render_svg

spec = IfsSpec([Fraction(1, 5)] * 3,
               [Fraction(0), Fraction(3, 5), Fraction(4, 5)],
               role="touching")

svg = render_svg(spec, levels=3, width=900, with_dust=True)
out = os.path.join(os.path.dirname(__file__), "construction.svg")
with open(out, "w") as fh:
    fh.write(svg)
print("wrote", out)
print("bars per row: 1, 3, 9, 27; the second and third bars share an "
      "endpoint\nin the top rows but not in the dust rows")
