"""Standalone SVG line charts for sweep output.

Hand-rolled SVG 1.1 with no external resources, so the files validate as
plain XML and render anywhere.
"""

from __future__ import annotations

import math
import xml.etree.ElementTree as ET

WIDTH, HEIGHT = 800, 500
MARGIN_LEFT, MARGIN_RIGHT, MARGIN_TOP, MARGIN_BOTTOM = 80, 160, 30, 60

PALETTE = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
]


def _ticks_linear(lo: float, hi: float, count: int = 5):
    if hi == lo:
        hi = lo + 1.0
    step = (hi - lo) / (count - 1)
    return [(lo + i * step, f"{lo + i * step:.4g}") for i in range(count)]


def _ticks_log(lo: float, hi: float):
    k_lo, k_hi = math.floor(math.log10(lo)), math.ceil(math.log10(hi))
    if k_hi == k_lo:
        k_hi += 1
    stride = max(1, (k_hi - k_lo) // 8)
    return [(10.0 ** k, f"1e{k}") for k in range(k_lo, k_hi + 1, stride)]


def write_line_chart(
    series: dict[str, list[tuple[float, float]]],
    x_label: str,
    y_label: str,
    out_path: str,
    log_y: bool = False,
) -> None:
    """Write one polyline per named series to a standalone SVG file."""
    if not series or all(not pts for pts in series.values()):
        raise ValueError("no data rows")
    points = [p for pts in series.values() for p in pts]
    if log_y:
        points = [(x, y) for x, y in points if y > 0]
        if not points:
            raise ValueError("log scale requires positive y values")
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    if log_y:
        y_ticks = _ticks_log(y_lo, y_hi)
        y_lo, y_hi = math.log10(y_ticks[0][0]), math.log10(y_ticks[-1][0])
        y_value = lambda y: math.log10(y)
    else:
        y_ticks = _ticks_linear(y_lo, y_hi)
        y_lo, y_hi = y_ticks[0][0], y_ticks[-1][0]
        y_value = lambda y: y
    if y_hi == y_lo:
        y_hi = y_lo + 1.0

    def sx(x):
        return MARGIN_LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w

    def sy(y):
        return MARGIN_TOP + plot_h - (y_value(y) - y_lo) / (y_hi - y_lo) * plot_h

    svg = ET.Element(
        "svg",
        {
            "xmlns": "http://www.w3.org/2000/svg",
            "version": "1.1",
            "width": str(WIDTH),
            "height": str(HEIGHT),
            "viewBox": f"0 0 {WIDTH} {HEIGHT}",
        },
    )
    ET.SubElement(
        svg,
        "rect",
        {"x": "0", "y": "0", "width": str(WIDTH), "height": str(HEIGHT), "fill": "white"},
    )
    axis_style = {"stroke": "black", "stroke-width": "1"}
    ET.SubElement(svg, "line", {
        "x1": str(MARGIN_LEFT), "y1": str(MARGIN_TOP + plot_h),
        "x2": str(MARGIN_LEFT + plot_w), "y2": str(MARGIN_TOP + plot_h), **axis_style,
    })
    ET.SubElement(svg, "line", {
        "x1": str(MARGIN_LEFT), "y1": str(MARGIN_TOP),
        "x2": str(MARGIN_LEFT), "y2": str(MARGIN_TOP + plot_h), **axis_style,
    })
    for xv, label in _ticks_linear(x_lo, x_hi):
        px = sx(xv)
        ET.SubElement(svg, "line", {
            "x1": f"{px:.1f}", "y1": str(MARGIN_TOP + plot_h),
            "x2": f"{px:.1f}", "y2": str(MARGIN_TOP + plot_h + 5), **axis_style,
        })
        tick = ET.SubElement(svg, "text", {
            "x": f"{px:.1f}", "y": str(MARGIN_TOP + plot_h + 20),
            "font-size": "12", "text-anchor": "middle",
        })
        tick.text = label
    for yv, label in y_ticks:
        py = sy(yv)
        ET.SubElement(svg, "line", {
            "x1": str(MARGIN_LEFT - 5), "y1": f"{py:.1f}",
            "x2": str(MARGIN_LEFT), "y2": f"{py:.1f}", **axis_style,
        })
        tick = ET.SubElement(svg, "text", {
            "x": str(MARGIN_LEFT - 8), "y": f"{py + 4:.1f}",
            "font-size": "12", "text-anchor": "end",
        })
        tick.text = label
    xlab = ET.SubElement(svg, "text", {
        "x": str(MARGIN_LEFT + plot_w / 2), "y": str(HEIGHT - 15),
        "font-size": "14", "text-anchor": "middle",
    })
    xlab.text = x_label
    ylab = ET.SubElement(svg, "text", {
        "x": "20", "y": str(MARGIN_TOP + plot_h / 2),
        "font-size": "14", "text-anchor": "middle",
        "transform": f"rotate(-90 20 {MARGIN_TOP + plot_h / 2})",
    })
    ylab.text = y_label

    for idx, (name, pts) in enumerate(series.items()):
        color = PALETTE[idx % len(PALETTE)]
        usable = [(x, y) for x, y in pts if not log_y or y > 0]
        if not usable:
            continue
        coords = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in sorted(usable))
        ET.SubElement(svg, "polyline", {
            "points": coords, "fill": "none", "stroke": color, "stroke-width": "1.5",
        })
        ly = MARGIN_TOP + 15 + idx * 18
        ET.SubElement(svg, "line", {
            "x1": str(MARGIN_LEFT + plot_w + 10), "y1": str(ly - 4),
            "x2": str(MARGIN_LEFT + plot_w + 30), "y2": str(ly - 4),
            "stroke": color, "stroke-width": "1.5",
        })
        entry = ET.SubElement(svg, "text", {
            "x": str(MARGIN_LEFT + plot_w + 35), "y": str(ly),
            "font-size": "11",
        })
        entry.text = name

    ET.ElementTree(svg).write(out_path, encoding="unicode", xml_declaration=True)
