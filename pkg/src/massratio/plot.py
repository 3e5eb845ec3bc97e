"""Minimal self-contained SVG 1.1 line charts."""
from xml.sax.saxutils import escape

WIDTH, HEIGHT = 640, 420
MARGIN = dict(left=70, right=20, top=40, bottom=55)
COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")


def _ticks(lo, hi, count=5):
    if hi == lo:
        return [lo]
    step = (hi - lo) / (count - 1)
    return [lo + k * step for k in range(count)]


def _num(x):
    return format(x, ".4g")


def line_chart(series, title="", xlabel="", ylabel=""):
    """Render ``series`` (list of ``(label, xs, ys)``) as an SVG document string."""
    xs = [x for _, sx, _ in series for x in sx]
    ys = [y for _, _, sy in series for y in sy]
    if not xs:
        raise ValueError("nothing to plot")
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys + [0.0]), max(ys)
    if x1 == x0:
        x0, x1 = x0 - 1.0, x1 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0
    pw = WIDTH - MARGIN["left"] - MARGIN["right"]
    ph = HEIGHT - MARGIN["top"] - MARGIN["bottom"]

    def px(x):
        return MARGIN["left"] + (x - x0) / (x1 - x0) * pw

    def py(y):
        return MARGIN["top"] + (1.0 - (y - y0) / (y1 - y0)) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" '
        f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>',
        f'<text x="{WIDTH / 2:.2f}" y="22" text-anchor="middle" font-family="sans-serif" '
        f'font-size="15">{escape(title)}</text>',
        f'<g id="axes" stroke="#000000" stroke-width="1">'
        f'<line x1="{px(x0):.2f}" y1="{py(y0):.2f}" x2="{px(x1):.2f}" y2="{py(y0):.2f}"/>'
        f'<line x1="{px(x0):.2f}" y1="{py(y0):.2f}" x2="{px(x0):.2f}" y2="{py(y1):.2f}"/>'
        '</g>',
    ]
    for t in _ticks(x0, x1):
        out.append(f'<line x1="{px(t):.2f}" y1="{py(y0):.2f}" x2="{px(t):.2f}" '
                   f'y2="{py(y0) + 5:.2f}" stroke="#000000"/>')
        out.append(f'<text x="{px(t):.2f}" y="{py(y0) + 18:.2f}" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="11">{_num(t)}</text>')
    for t in _ticks(y0, y1):
        out.append(f'<line x1="{px(x0) - 5:.2f}" y1="{py(t):.2f}" x2="{px(x0):.2f}" '
                   f'y2="{py(t):.2f}" stroke="#000000"/>')
        out.append(f'<text x="{px(x0) - 8:.2f}" y="{py(t) + 4:.2f}" text-anchor="end" '
                   f'font-family="sans-serif" font-size="11">{_num(t)}</text>')
    out.append(f'<text x="{MARGIN["left"] + pw / 2:.2f}" y="{HEIGHT - 12}" text-anchor="middle" '
               f'font-family="sans-serif" font-size="13">{escape(xlabel)}</text>')
    out.append(f'<text x="16" y="{MARGIN["top"] + ph / 2:.2f}" text-anchor="middle" '
               f'font-family="sans-serif" font-size="13" transform="rotate(-90 16 '
               f'{MARGIN["top"] + ph / 2:.2f})">{escape(ylabel)}</text>')
    for k, (label, sx, sy) in enumerate(series):
        color = COLORS[k % len(COLORS)]
        pts = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(sx, sy))
        out.append(f'<polyline class="series" data-label="{escape(label)}" points="{pts}" '
                   f'fill="none" stroke="{color}" stroke-width="2"/>')
        ly = MARGIN["top"] + 14 + 16 * k
        lx = MARGIN["left"] + 12
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 22}" y2="{ly}" stroke="{color}" '
                   f'stroke-width="2"/>')
        out.append(f'<text x="{lx + 28}" y="{ly + 4}" font-family="sans-serif" '
                   f'font-size="12">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
