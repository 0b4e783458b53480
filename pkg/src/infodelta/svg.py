"""Minimal static SVG charts with byte-deterministic output.

No scripting, no timestamps, fixed 2-decimal coordinate formatting; the
same data always renders to the same bytes.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

SUPPLY_COLOR = "#1f77b4"
DEMAND_COLOR = "#d62728"
GRID_COLOR = "#cccccc"
TEXT_COLOR = "#333333"

_HEADER = (
    '<?xml version="1.0" encoding="UTF-8"?>\n'
    '<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
    'viewBox="0 0 {w} {h}">\n'
)


def _fmt(x: float) -> str:
    return f"{x:.2f}"


class Canvas:
    """Accumulates SVG elements and serializes them deterministically."""

    def __init__(self, width: int, height: int):
        self.width = width
        self.height = height
        self.parts: list[str] = []
        self.parts.append(f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>')

    def line(self, x1, y1, x2, y2, color=GRID_COLOR, width=1.0, dash: str | None = None):
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        self.parts.append(
            f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
            f'stroke="{color}" stroke-width="{_fmt(width)}"{dash_attr}/>'
        )

    def polyline(self, points, color, width=1.5):
        coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in points)
        self.parts.append(
            f'<polyline points="{coords}" fill="none" stroke="{color}" '
            f'stroke-width="{_fmt(width)}"/>'
        )

    def circle(self, x, y, radius, color):
        self.parts.append(
            f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(radius)}" fill="{color}"/>'
        )

    def rect(self, x, y, w, h, color):
        self.parts.append(
            f'<rect x="{_fmt(x)}" y="{_fmt(y)}" width="{_fmt(w)}" height="{_fmt(h)}" fill="{color}"/>'
        )

    def text(self, x, y, content, size=11, color=TEXT_COLOR, anchor="start"):
        self.parts.append(
            f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-family="sans-serif" '
            f'font-size="{size}" fill="{color}" text-anchor="{anchor}">{escape(content)}</text>'
        )

    def render(self) -> str:
        body = "\n".join(self.parts)
        return _HEADER.format(w=self.width, h=self.height) + body + "\n</svg>\n"


class _Scale:
    def __init__(self, lo: float, hi: float, out_lo: float, out_hi: float):
        if hi <= lo:
            hi = lo + 1.0
        self.lo, self.hi = lo, hi
        self.out_lo, self.out_hi = out_lo, out_hi

    def __call__(self, v: float) -> float:
        frac = (v - self.lo) / (self.hi - self.lo)
        return self.out_lo + frac * (self.out_hi - self.out_lo)


MARGIN_LEFT = 48
MARGIN_RIGHT = 12
MARGIN_TOP = 28
MARGIN_BOTTOM = 26
CHART_W = 640
CHART_H = 220


def _frame(canvas: Canvas, title: str, x_labels: tuple[str, str], y_lo: float, y_hi: float):
    plot_w = canvas.width - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = canvas.height - MARGIN_TOP - MARGIN_BOTTOM
    canvas.text(MARGIN_LEFT, 18, title, size=13)
    canvas.line(MARGIN_LEFT, MARGIN_TOP, MARGIN_LEFT, MARGIN_TOP + plot_h)
    canvas.line(MARGIN_LEFT, MARGIN_TOP + plot_h, MARGIN_LEFT + plot_w, MARGIN_TOP + plot_h)
    canvas.text(MARGIN_LEFT - 4, MARGIN_TOP + 4, f"{y_hi:g}", size=10, anchor="end")
    canvas.text(MARGIN_LEFT - 4, MARGIN_TOP + plot_h + 4, f"{y_lo:g}", size=10, anchor="end")
    canvas.text(MARGIN_LEFT, canvas.height - 8, x_labels[0], size=10)
    canvas.text(MARGIN_LEFT + plot_w, canvas.height - 8, x_labels[1], size=10, anchor="end")
    return plot_w, plot_h


def line_chart(
    title: str,
    x_labels: tuple[str, str],
    series: list[tuple[str, list[float], str]],
    y_range: tuple[float, float],
    hlines: list[tuple[float, str, str]] | None = None,
) -> str:
    """Render named series as polylines over a shared frame.

    `series` entries are (legend label, values, color); `hlines` entries
    are (y value, color, dash pattern).
    """
    canvas = Canvas(CHART_W, CHART_H)
    y_lo, y_hi = y_range
    plot_w, plot_h = _frame(canvas, title, x_labels, y_lo, y_hi)
    n = max(len(values) for _, values, _ in series)
    xs = _Scale(0, max(n - 1, 1), MARGIN_LEFT, MARGIN_LEFT + plot_w)
    ys = _Scale(y_lo, y_hi, MARGIN_TOP + plot_h, MARGIN_TOP)

    for y, color, dash in hlines or []:
        canvas.line(MARGIN_LEFT, ys(y), MARGIN_LEFT + plot_w, ys(y), color=color, dash=dash)
    legend_x = MARGIN_LEFT + 8.0
    for label, values, color in series:
        canvas.polyline([(xs(i), ys(v)) for i, v in enumerate(values)], color)
        canvas.rect(legend_x, MARGIN_TOP + 6, 10, 10, color)
        canvas.text(legend_x + 14, MARGIN_TOP + 15, label, size=10)
        legend_x += 16 + 7.0 * len(label) + 14
    return canvas.render()


def scatter_chart(
    title: str,
    points: list[tuple[float, float]],
    x_range: tuple[float, float],
    y_range: tuple[float, float],
    axis_labels: tuple[str, str],
    color: str = SUPPLY_COLOR,
) -> str:
    """Render a scatter of (x, y) points with labeled axes."""
    canvas = Canvas(CHART_W, CHART_H)
    y_lo, y_hi = y_range
    plot_w, plot_h = _frame(canvas, title, (f"{x_range[0]:g}", f"{x_range[1]:g}"), y_lo, y_hi)
    xs = _Scale(x_range[0], x_range[1], MARGIN_LEFT, MARGIN_LEFT + plot_w)
    ys = _Scale(y_lo, y_hi, MARGIN_TOP + plot_h, MARGIN_TOP)
    for x, y in points:
        canvas.circle(xs(x), ys(y), 2.2, color)
    canvas.text(CHART_W // 2, canvas.height - 8, axis_labels[0], size=10, anchor="middle")
    canvas.text(MARGIN_LEFT + 4, MARGIN_TOP + plot_h - 6, axis_labels[1], size=10)
    return canvas.render()


def bar_table(
    title: str,
    rows: list[tuple[str, float, float]],
    legend: tuple[str, str],
    colors: tuple[str, str] = (SUPPLY_COLOR, DEMAND_COLOR),
) -> str:
    """Render paired horizontal bars, one row per label."""
    row_h = 26
    label_w = 250
    height = MARGIN_TOP + row_h * len(rows) + 16
    width = 720
    canvas = Canvas(width, height)
    canvas.text(12, 18, title, size=13)
    peak = max((max(a, b) for _, a, b in rows), default=1.0) or 1.0
    scale = _Scale(0, peak, 0, width - label_w - 90)
    for i, (label, a, b) in enumerate(rows):
        y = MARGIN_TOP + i * row_h
        canvas.text(label_w - 8, y + 12, label, size=10, anchor="end")
        canvas.rect(label_w, y + 2, scale(a), 8, colors[0])
        canvas.rect(label_w, y + 12, scale(b), 8, colors[1])
        canvas.text(label_w + scale(a) + 4, y + 10, f"{a:g}", size=9)
        canvas.text(label_w + scale(b) + 4, y + 20, f"{b:g}", size=9)
    legend_y = height - 6
    canvas.rect(12, legend_y - 10, 10, 10, colors[0])
    canvas.text(26, legend_y - 1, legend[0], size=10)
    canvas.rect(112, legend_y - 10, 10, 10, colors[1])
    canvas.text(126, legend_y - 1, legend[1], size=10)
    return canvas.render()
