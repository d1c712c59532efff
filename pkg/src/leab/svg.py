"""Minimal SVG emitter and scene builders for the shape-space and mesh figures."""

import math
from html import escape

from .mesh import TriMesh, corners

WIDTH = 700
HEIGHT = 700
_WINDOW = (-0.05, 1.05)


class Svg:
    """Accumulates SVG elements and renders a fixed-size document."""

    def __init__(self, width: int = WIDTH, height: int = HEIGHT):
        self.width = width
        self.height = height
        self.commands: list[str] = []

    def line(self, x1: float, y1: float, x2: float, y2: float,
             color: str = "black", width: float = 1.0, dash: str | None = None) -> None:
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        self.commands.append(
            f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
            f'stroke="{color}" stroke-width="{width}"{extra}/>'
        )

    def polyline(self, points, color: str = "black", width: float = 1.0) -> None:
        coords = " ".join(f"{x:.2f},{y:.2f}" for x, y in points)
        self.commands.append(
            f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="{width}"/>'
        )

    def polygon(self, points, stroke: str = "black", width: float = 1.0, fill: str = "none") -> None:
        coords = " ".join(f"{x:.2f},{y:.2f}" for x, y in points)
        self.commands.append(
            f'<polygon points="{coords}" fill="{fill}" stroke="{stroke}" stroke-width="{width}"/>'
        )

    def circle(self, x: float, y: float, r: float, color: str = "red") -> None:
        self.commands.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{r}" fill="{color}"/>')

    def text(self, x: float, y: float, content: str, size: int = 12, color: str = "black") -> None:
        self.commands.append(
            f'<text x="{x:.2f}" y="{y:.2f}" font-size="{size}" '
            f'font-family="sans-serif" fill="{color}">{escape(content)}</text>'
        )

    def render(self) -> str:
        head = (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.width}" '
            f'height="{self.height}" viewBox="0 0 {self.width} {self.height}">'
        )
        return "\n".join([head, *self.commands, "</svg>"]) + "\n"

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.render())


def _to_canvas(x: float, y: float) -> tuple[float, float]:
    lo, hi = _WINDOW
    s = WIDTH / (hi - lo)
    return ((x - lo) * s, HEIGHT - (y - lo) * s)


def _arc(cx: float, cy: float, r: float, theta0: float, theta1: float, n: int = 96):
    return [
        (cx + r * math.cos(theta0 + (theta1 - theta0) * i / n),
         cy + r * math.sin(theta0 + (theta1 - theta0) * i / n))
        for i in range(n + 1)
    ]


def shape_space_svg(points=None) -> str:
    """Shape region, right-triangle circle, branch lines, and labeled points."""
    svg = Svg()
    apex_im = math.sqrt(3.0) / 2.0
    # region boundary: base segment, right wall, and the unit arc around 1
    svg.line(*_to_canvas(0.0, 0.0), *_to_canvas(0.5, 0.0), color="black", width=1.5)
    svg.line(*_to_canvas(0.5, 0.0), *_to_canvas(0.5, apex_im), color="black", width=1.5)
    svg.polyline([_to_canvas(x, y) for x, y in _arc(1.0, 0.0, 1.0, 2.0 * math.pi / 3.0, math.pi)],
                 color="black", width=1.5)
    # circle of right-triangle shapes
    svg.polyline([_to_canvas(x, y) for x, y in _arc(0.5, 0.0, 0.5, math.pi / 2.0, math.pi)],
                 color="blue", width=1.5)
    # branch lines Re = Im and 1 - Re = Im of the child maps
    svg.line(*_to_canvas(0.0, 0.0), *_to_canvas(0.5, 0.5), color="gray", width=1.0, dash="4 3")
    inv = 1.0 / math.sqrt(2.0)
    svg.line(*_to_canvas(1.0 - inv, inv), *_to_canvas(0.5, 0.5), color="gray", width=1.0, dash="4 3")
    for z, label in points or []:
        x, y = _to_canvas(z.real, z.imag)
        svg.circle(x, y, 4.0, color="red")
        if label:
            svg.text(x + 6.0, y - 6.0, label, size=12, color="red")
    return svg.render()


def mesh_svg(mesh: TriMesh) -> str:
    """All elements of one mesh level drawn as outlined triangles."""
    svg = Svg()
    if not mesh.vertices:
        return svg.render()
    xs = [p.x for p in mesh.vertices]
    ys = [p.y for p in mesh.vertices]
    span = max(max(xs) - min(xs), max(ys) - min(ys)) or 1.0
    margin = 0.05 * span
    lo_x, lo_y = min(xs) - margin, min(ys) - margin
    s = WIDTH / (span + 2.0 * margin)

    def to_canvas(p):
        return ((p.x - lo_x) * s, HEIGHT - (p.y - lo_y) * s)

    for t in mesh.triangles:
        svg.polygon([to_canvas(p) for p in corners(t, mesh)], stroke="black", width=1.0)
    return svg.render()
