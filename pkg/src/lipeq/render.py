"""SVG rendering of the first construction levels.

Bars are drawn from the exact cylinder endpoints, so touching intervals
coincide to the pixel and gaps are to scale.  Output is deterministic:
equal inputs give byte-identical SVG.
"""

from itertools import product

from .exactnum import exact_float
from .ifs import canonical_dust

BAR_H = 16
ROW_GAP = 10
MARGIN = 12
LABEL_H = 18

_TOUCH_FILL = "#2f6db3"
_DUST_FILL = "#b3622f"


def _fmt(x):
    return ("%.4f" % x).rstrip("0").rstrip(".")


def _level_bars(spec, level, width):
    bars = []
    for word in product(range(1, spec.n + 1), repeat=level):
        lo, hi = spec.cyl_interval(word)
        x = exact_float(lo) * width
        w = exact_float(hi - lo) * width
        bars.append((x, w))
    return bars


def _row_svg(out, spec, levels, x0, y0, width, fill, title):
    out.append('<text x="%s" y="%s" font-size="12" '
               'font-family="monospace">%s</text>'
               % (_fmt(x0), _fmt(y0 + 12), title))
    y = y0 + LABEL_H
    for level in range(0, levels + 1):
        for x, w in _level_bars(spec, level, width):
            out.append('<rect x="%s" y="%s" width="%s" height="%s" '
                       'fill="%s"/>'
                       % (_fmt(x0 + x), _fmt(y), _fmt(w), _fmt(BAR_H),
                          fill))
        y += BAR_H + ROW_GAP
    return y


def render_svg(spec, levels=2, width=640, with_dust=False):
    """SVG of construction levels 0..levels; optionally with the dust
    counterpart drawn underneath for side-by-side comparison."""
    if levels < 0:
        raise ValueError("levels must be nonnegative")
    out = []
    y = MARGIN
    body = []
    y = _row_svg(body, spec, levels, MARGIN, y, width, _TOUCH_FILL,
                 "attractor")
    if with_dust:
        y += ROW_GAP
        dust = canonical_dust(spec.ratios, spec.bases)
        y = _row_svg(body, dust, levels, MARGIN, y, width, _DUST_FILL,
                     "equally spaced dust")
    total_w = width + 2 * MARGIN
    total_h = y + MARGIN
    out.append('<svg xmlns="http://www.w3.org/2000/svg" width="%d" '
               'height="%s" viewBox="0 0 %d %s">'
               % (total_w, _fmt(total_h), total_w, _fmt(total_h)))
    out.extend(body)
    out.append('</svg>')
    return "\n".join(out) + "\n"
