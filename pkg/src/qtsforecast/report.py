"""Deterministic JSON, CSV and SVG emitters."""

from __future__ import annotations

import json
import math
from html import escape

FLOAT_DIGITS = 17


class ReportError(ValueError):
    pass


def format_float(x: float) -> str:
    if not math.isfinite(x):
        raise ReportError(f"refusing to serialize non-finite value {x!r}")
    s = format(x, f".{FLOAT_DIGITS}g")
    if not any(c in s for c in ".en"):
        s += ".0"
    return s


def _encode(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(_encode(v, indent, level) for v in obj) + "]"
        items = [pad + _encode(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if hasattr(obj, "item"):  # numpy scalar
        return _encode(obj.item(), indent, level)
    raise ReportError(f"cannot serialize {type(obj).__name__}")


def dumps_json(obj, indent: int = 2) -> str:
    """JSON with keys in insertion order and floats at 17 significant digits."""
    return _encode(obj, indent, 0) + "\n"


def mse_table(report: dict) -> str:
    rows = ["model,mse"]
    for m in report["models"]:
        rows.append(f"{m['name']},{'' if m['mse'] is None else format_float(m['mse'])}")
    return "\n".join(rows) + "\n"


def load_forecast_json(text: str, label: str = "") -> tuple[list[float], list[tuple[str, list[float]]]]:
    """Return ``(actuals, [(name, predictions), ...])`` from a forecast or benchmark file."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ReportError(f"{label}: malformed JSON: {exc}") from None
    try:
        if "models" in doc:
            actuals = [float(v) for v in doc["meta"]["actuals"]]
            series = [(str(m["name"]), [float(v) for v in m["predictions"]]) for m in doc["models"]]
        else:
            actuals = [float(v) for v in doc["actuals"]]
            series = [(str(doc["model"]), [float(v) for v in doc["predictions"]])]
    except (KeyError, TypeError, ValueError) as exc:
        raise ReportError(f"{label}: not a forecast file ({exc})") from None
    return actuals, series


PALETTE = ("#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf")


def render_svg(actuals: list[float], series: list[tuple[str, list[float]]],
               width: int = 800, height: int = 400) -> str:
    """Line chart of actuals (black) and each prediction sequence, with a legend."""
    left, right, top, bottom = 70, 160, 20, 40
    pw, ph = width - left - right, height - top - bottom
    drawn = [(name, ys) for name, ys in series if ys]
    values = list(actuals) + [v for _, ys in drawn for v in ys]
    steps = max([len(actuals)] + [len(ys) for _, ys in drawn] + [1])
    lo, hi = (min(values), max(values)) if values else (0.0, 1.0)
    if hi == lo:
        lo, hi = lo - 0.5, hi + 0.5

    def xy(i: int, v: float) -> str:
        x = left + (pw * i / (steps - 1) if steps > 1 else pw / 2)
        y = top + ph * (hi - v) / (hi - lo)
        return f"{x:.2f},{y:.2f}"

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<line class="axis" x1="{left}" y1="{top + ph}" x2="{left + pw}" y2="{top + ph}" stroke="black"/>',
        f'<line class="axis" x1="{left}" y1="{top}" x2="{left}" y2="{top + ph}" stroke="black"/>',
        f'<text x="{left - 5}" y="{top + 4}" text-anchor="end" font-size="11">{hi:.6g}</text>',
        f'<text x="{left - 5}" y="{top + ph}" text-anchor="end" font-size="11">{lo:.6g}</text>',
        f'<text x="{left}" y="{height - 12}" font-size="11">step 0</text>',
        f'<text x="{left + pw}" y="{height - 12}" text-anchor="end" font-size="11">step {steps - 1}</text>',
    ]
    legend = []
    if actuals:
        pts = " ".join(xy(i, v) for i, v in enumerate(actuals))
        out.append(f'<polyline class="actual" fill="none" stroke="black" stroke-width="2" points="{pts}"/>')
        legend.append(("actual", "black"))
    for k, (name, ys) in enumerate(drawn):
        color = PALETTE[k % len(PALETTE)]
        pts = " ".join(xy(i, v) for i, v in enumerate(ys))
        out.append(
            f'<polyline class="prediction" data-model="{escape(name)}" fill="none" '
            f'stroke="{color}" stroke-width="1.5" points="{pts}"/>'
        )
        legend.append((name, color))
    out.append('<g class="legend">')
    for k, (name, color) in enumerate(legend):
        y = top + 10 + 18 * k
        x = left + pw + 15
        out.append(f'<line x1="{x}" y1="{y}" x2="{x + 20}" y2="{y}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{x + 26}" y="{y + 4}" font-size="12">{escape(name)}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
