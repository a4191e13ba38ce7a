"""Deterministic SVG output for the conic scene and construction scenes.

World coordinates are mapped to the canvas with a fixed affine transform
(y flipped) and every number is written with exactly six decimals, so the
same input always yields the same bytes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from xml.sax.saxutils import escape, quoteattr

from . import euclid
from .euclid import Circle, Line, Point, Ray, Segment, Triangle

__all__ = ["SvgDocument", "figure1", "scene_figure", "fmt"]


def fmt(v: float) -> str:
    """Six-decimal, locale-free formatting; ``-0`` is normalised to ``0``."""
    s = f"{v:.6f}"
    return "0.000000" if s == "-0.000000" else s


@dataclass
class SvgDocument:
    """World-coordinate drawing list rendered into an SVG 1.1 document."""

    xmin: float
    ymin: float
    xmax: float
    ymax: float
    width: int = 800
    elements: list[str] = field(default_factory=list)

    @property
    def scale(self) -> float:
        return self.width / (self.xmax - self.xmin)

    @property
    def height(self) -> int:
        return max(1, round((self.ymax - self.ymin) * self.scale))

    def to_canvas(self, x: float, y: float) -> tuple[str, str]:
        return fmt((x - self.xmin) * self.scale), fmt((self.ymax - y) * self.scale)

    def polyline(self, pts, cls: str, ident: str | None = None, closed: bool = False) -> None:
        coords = " ".join(",".join(self.to_canvas(x, y)) for x, y in pts)
        tag = "polygon" if closed else "polyline"
        id_attr = f" id={quoteattr(ident)}" if ident else ""
        self.elements.append(f'<{tag} class="{cls}"{id_attr} points="{coords}" fill="none" stroke="black"/>')

    def segment(self, p, q, cls: str = "segment", ident: str | None = None) -> None:
        (x1, y1), (x2, y2) = self.to_canvas(*p), self.to_canvas(*q)
        id_attr = f" id={quoteattr(ident)}" if ident else ""
        self.elements.append(
            f'<line class="{cls}"{id_attr} x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="black"/>'
        )

    def circle(self, center, radius: float, cls: str = "circle", ident: str | None = None) -> None:
        cx, cy = self.to_canvas(*center)
        id_attr = f" id={quoteattr(ident)}" if ident else ""
        self.elements.append(
            f'<circle class="{cls}"{id_attr} cx="{cx}" cy="{cy}" r="{fmt(radius * self.scale)}" '
            'fill="none" stroke="gray"/>'
        )

    def point(self, p, label: str) -> None:
        cx, cy = self.to_canvas(*p)
        self.elements.append(f'<circle class="point" id={quoteattr("pt-" + label)} cx="{cx}" cy="{cy}" r="3.000000"/>')
        lx, ly = self.to_canvas(p[0], p[1])
        self.elements.append(
            f'<text class="label" x="{fmt(float(lx) + 5)}" y="{fmt(float(ly) - 5)}">{escape(label)}</text>'
        )

    def render(self) -> str:
        head = (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{self.width}" '
            f'height="{self.height}" viewBox="0 0 {self.width} {self.height}">\n'
        )
        return head + "".join(f"  {e}\n" for e in self.elements) + "</svg>\n"


# ---------------------------------------------------------------------------
# the solved conic scene: ellipse, right hyperbola branch, named points


def figure1(sol, samples: int = 512) -> str:
    if samples < 16:
        raise ValueError("samples must be at least 16")
    lay = sol.layout
    a, b = float(sol.system.a), float(sol.system.b)
    yp = float(sol.y_P)
    doc = SvgDocument(-a - 0.4, -b - 0.4, a + 0.9, b + 0.4)
    ellipse = [
        (a * math.cos(2 * math.pi * k / samples), b * math.sin(2 * math.pi * k / samples))
        for k in range(samples)
    ]
    doc.polyline(ellipse + ellipse[:1], "curve", "ellipse")
    ys = [-1.1 * yp + 2.2 * yp * k / (samples - 1) for k in range(samples)]
    doc.polyline([(math.sqrt(1 + (y / b) ** 2), y) for y in ys], "curve", "hyperbola")
    hx = float(lay.H.x)
    doc.segment((hx, -b - 0.3), (hx, b + 0.3), "directrix", "directrix")
    pts = {name: p.to_float() for name, p in lay.points().items()}
    doc.segment(pts["K"], pts["F2"], "segment", "seg-KF2")
    doc.segment(pts["P"], pts["N"], "segment", "seg-PN")
    doc.segment(pts["P"], pts["Q"], "segment", "seg-PQ")
    for name, xy in pts.items():
        doc.point(xy, name)
    return doc.render()


# ---------------------------------------------------------------------------
# construction scenes


def _line_extent(line: Line, box: tuple[float, float, float, float]):
    """Clip the carrier of ``line`` to ``box`` (ray/segment limits respected)."""
    (px, py), (qx, qy) = line.p.to_float(), line.q.to_float()
    dx, dy = qx - px, qy - py
    xmin, ymin, xmax, ymax = box
    lo, hi = -math.inf, math.inf
    for d, p0, mn, mx in ((dx, px, xmin, xmax), (dy, py, ymin, ymax)):
        if abs(d) < 1e-15:
            continue
        t1, t2 = (mn - p0) / d, (mx - p0) / d
        lo, hi = max(lo, min(t1, t2)), min(hi, max(t1, t2))
    if isinstance(line, (Ray, Segment)):
        lo = max(lo, 0.0)
    if isinstance(line, Segment):
        hi = min(hi, 1.0)
    return (px + lo * dx, py + lo * dy), (px + hi * dx, py + hi * dy)


def _drawables(scene) -> list[tuple[str, object]]:
    """Curves, triangles and points in trace order; unnamed curves come from
    the arguments and results of the recorded primitive calls."""
    out: list[tuple[str, object]] = []
    seen: set[str] = set()

    def add(name, obj):
        if isinstance(obj, (list, tuple)):
            for o in obj:
                add(None, o)
            return
        if not isinstance(obj, (Point, Line, Circle, Triangle)):
            return
        if name is None and isinstance(obj, Point):
            return
        key = euclid.serialize_object(obj)
        if key in seen:
            return
        seen.add(key)
        out.append((name, obj))

    for step in scene.trace.steps:
        for call in step.calls:
            for arg in call.args:
                add(None, arg)
            add(None, call.result)
        for name, obj in step.created.items():
            add(name, obj)
    return out


def scene_figure(scene) -> str:
    """Draw an executed script: curves and triangles first, then points."""
    items = _drawables(scene)
    xs, ys = [], []
    for _, obj in items:
        if isinstance(obj, Circle):
            cx, cy = obj.center.to_float()
            r = float(obj.radius)
            xs += [cx - r, cx + r]
            ys += [cy - r, cy + r]
            continue
        if isinstance(obj, Point):
            pts = [obj]
        elif isinstance(obj, Triangle):
            pts = list(obj.vertices)
        else:
            pts = [obj.p, obj.q]
        for p in pts:
            x, y = p.to_float()
            xs.append(x)
            ys.append(y)
    if not xs:
        xs, ys = [0.0, 1.0], [0.0, 1.0]
    pad = 0.1 * max(max(xs) - min(xs), max(ys) - min(ys), 1.0)
    box = (min(xs) - pad, min(ys) - pad, max(xs) + pad, max(ys) + pad)
    doc = SvgDocument(*box)
    for name, obj in items:
        cls = "named" if name else "aux"
        if isinstance(obj, Triangle):
            doc.polyline([v.to_float() for v in obj.vertices], f"triangle {cls}", name, closed=True)
        elif isinstance(obj, Line):
            p, q = _line_extent(obj, box)
            doc.segment(p, q, f"{type(obj).__name__.lower()} {cls}", name)
        elif isinstance(obj, Circle):
            doc.circle(obj.center.to_float(), float(obj.radius), f"circle {cls}", name)
    for name, obj in items:
        if isinstance(obj, Point):
            doc.point(obj.to_float(), name)
    return doc.render()
