"""Planar indexed triangle meshes and the altitude / midpoint bisection operators."""

import json
import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import DegenerateTriangleError, MeshFormatError

AREA_EPS = 1e-14
MERGE_SCALE = 1e-9
_PARAM_TOL = 1e-12


@dataclass(frozen=True)
class Point2:
    """A point of the plane."""

    x: float
    y: float

    @property
    def z(self) -> complex:
        return complex(self.x, self.y)


@dataclass(frozen=True)
class Triangle:
    """Vertex indices of one element, stored counter-clockwise, with refinement lineage."""

    v: tuple[int, int, int]
    parent: int | None = None
    level: int = 0
    side: str | None = None


@dataclass
class TriMesh:
    """An indexed triangulation at one refinement level."""

    vertices: list[Point2]
    triangles: list[Triangle]
    level: int = 0


@dataclass(frozen=True)
class SimilarityTransform:
    """w = scale * exp(i*rotation) * (conj(p) if reflected else p) + translation, on points as complex numbers."""

    scale: float
    rotation: float
    translation: Point2
    reflected: bool = False

    def __post_init__(self) -> None:
        if not self.scale > 0.0:
            raise ValueError(f"scale must be positive, got {self.scale}")

    def apply(self, p: Point2) -> Point2:
        z = p.z.conjugate() if self.reflected else p.z
        w = self.scale * complex(math.cos(self.rotation), math.sin(self.rotation)) * z
        return Point2(w.real + self.translation.x, w.imag + self.translation.y)

    def invert(self) -> "SimilarityTransform":
        rot = complex(math.cos(self.rotation), math.sin(self.rotation))
        if self.reflected:
            # w = s*rot*conj(p) + t  =>  p = (rot/s)*conj(w) - (rot/s)*conj(t)
            shift = -(rot / self.scale) * self.translation.z.conjugate()
            return SimilarityTransform(
                1.0 / self.scale, self.rotation, Point2(shift.real, shift.imag), True
            )
        shift = -self.translation.z / (self.scale * rot)
        return SimilarityTransform(
            1.0 / self.scale, -self.rotation, Point2(shift.real, shift.imag), False
        )


def distance(p: Point2, q: Point2) -> float:
    """Euclidean distance."""
    return math.hypot(p.x - q.x, p.y - q.y)


def signed_area(a: Point2, b: Point2, c: Point2) -> float:
    """Half the cross product of the edge vectors; positive for counter-clockwise order."""
    return 0.5 * ((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x))


def require_nondegenerate(a: Point2, b: Point2, c: Point2) -> None:
    """Reject triangles whose area falls below the scale-invariant threshold."""
    d = max(distance(a, b), distance(b, c), distance(c, a))
    if d == 0.0 or abs(signed_area(a, b, c)) < AREA_EPS * d * d:
        raise DegenerateTriangleError(f"triangle {a}, {b}, {c} is degenerate")


def corners(t: Triangle, mesh: TriMesh) -> tuple[Point2, Point2, Point2]:
    """The triangle's vertex coordinates in stored order."""
    i, j, k = t.v
    return mesh.vertices[i], mesh.vertices[j], mesh.vertices[k]


def bounding_box_diagonal(mesh: TriMesh) -> float:
    """Diagonal length of the axis-aligned bounding box of all vertices."""
    if not mesh.vertices:
        return 0.0
    xs = [p.x for p in mesh.vertices]
    ys = [p.y for p in mesh.vertices]
    return math.hypot(max(xs) - min(xs), max(ys) - min(ys))


def merge_radius(mesh: TriMesh) -> float:
    """Radius below which two vertices count as the same point."""
    return MERGE_SCALE * bounding_box_diagonal(mesh)


class _VertexMerger:
    """Spatial hash that snaps new points onto existing vertices within a merge radius.

    The cell size bounds every query radius, so a 3x3 neighborhood always
    suffices; individual adds may use a smaller, locally scaled radius.
    """

    def __init__(self, mesh: TriMesh, max_radius: float):
        self.mesh = mesh
        self.max_radius = max_radius
        self.cell = max_radius if max_radius > 0.0 else 1.0
        self.grid: dict[tuple[int, int], list[int]] = {}
        for i, p in enumerate(mesh.vertices):
            self.grid.setdefault(self._key(p), []).append(i)

    def _key(self, p: Point2) -> tuple[int, int]:
        return (math.floor(p.x / self.cell), math.floor(p.y / self.cell))

    def add(self, p: Point2, radius: float | None = None) -> int:
        if radius is None or radius > self.max_radius:
            radius = self.max_radius
        kx, ky = self._key(p)
        for ix in (kx - 1, kx, kx + 1):
            for iy in (ky - 1, ky, ky + 1):
                for i in self.grid.get((ix, iy), ()):
                    if distance(p, self.mesh.vertices[i]) <= radius:
                        return i
        self.mesh.vertices.append(p)
        i = len(self.mesh.vertices) - 1
        self.grid.setdefault((kx, ky), []).append(i)
        return i


def longest_edge(t: Triangle, mesh: TriMesh) -> int:
    """Local index of the vertex opposite the longest edge; ties go to the smallest index."""
    pts = corners(t, mesh)
    require_nondegenerate(*pts)
    best = 0
    best_len = -1.0
    for i in range(3):
        length = distance(pts[(i + 1) % 3], pts[(i + 2) % 3])
        if length > best_len:
            best, best_len = i, length
    return best


def altitude_foot(a: Point2, b: Point2, c: Point2) -> Point2:
    """Orthogonal projection of c onto segment a-b, which must be the triangle's longest edge."""
    ab2 = (b.x - a.x) ** 2 + (b.y - a.y) ** 2
    if ab2 == 0.0:
        raise DegenerateTriangleError(f"edge endpoints coincide at {a}")
    t = ((c.x - a.x) * (b.x - a.x) + (c.y - a.y) * (b.y - a.y)) / ab2
    if t < -_PARAM_TOL or t > 1.0 + _PARAM_TOL:
        raise ValueError(f"a-b is not the longest edge: foot parameter {t} outside [0, 1]")
    return Point2(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))


def _split_common(t: Triangle, mesh: TriMesh, cut: Point2, merger: "_VertexMerger | None", parent_id: int | None) -> tuple[Triangle, Triangle]:
    """Insert the cut vertex on the longest edge and build the two children, left first."""
    opp = longest_edge(t, mesh)
    la, lb = (opp + 1) % 3, (opp + 2) % 3
    ia, ib, ic = t.v[la], t.v[lb], t.v[opp]
    a, b, c = mesh.vertices[ia], mesh.vertices[ib], mesh.vertices[ic]
    if merger is None:
        merger = _VertexMerger(mesh, merge_radius(mesh))
    # merge within a radius scaled to the edge being cut, not the whole mesh:
    # deep levels legitimately hold elements far smaller than the global radius
    cut_index = merger.add(cut, MERGE_SCALE * distance(a, b))
    # left child owns the longest-edge endpoint on the shorter remaining edge
    # (the endpoint normalization sends to 0); isoceles tie goes to the
    # endpoint with the smaller local index.
    da, db = distance(c, a), distance(c, b)
    a_is_left = da < db or (da == db and la < lb)
    child_a = Triangle((ia, cut_index, ic), parent=parent_id, level=t.level + 1,
                       side="left" if a_is_left else "right")
    child_b = Triangle((cut_index, ib, ic), parent=parent_id, level=t.level + 1,
                       side="right" if a_is_left else "left")
    return (child_a, child_b) if a_is_left else (child_b, child_a)


def leab_split(t: Triangle, mesh: TriMesh, merger: "_VertexMerger | None" = None, parent_id: int | None = None) -> tuple[Triangle, Triangle]:
    """Split by the altitude onto the longest edge, producing two right-triangle children."""
    opp = longest_edge(t, mesh)
    a = mesh.vertices[t.v[(opp + 1) % 3]]
    b = mesh.vertices[t.v[(opp + 2) % 3]]
    c = mesh.vertices[t.v[opp]]
    return _split_common(t, mesh, altitude_foot(a, b, c), merger, parent_id)


def leb_split(t: Triangle, mesh: TriMesh, merger: "_VertexMerger | None" = None, parent_id: int | None = None) -> tuple[Triangle, Triangle]:
    """Split by the segment from the longest-edge midpoint to the opposite vertex."""
    opp = longest_edge(t, mesh)
    a = mesh.vertices[t.v[(opp + 1) % 3]]
    b = mesh.vertices[t.v[(opp + 2) % 3]]
    mid = Point2(0.5 * (a.x + b.x), 0.5 * (a.y + b.y))
    return _split_common(t, mesh, mid, merger, parent_id)


def refine_global(mesh: TriMesh, steps: int, method: str = "leab") -> list[TriMesh]:
    """Split every element repeatedly; returns the meshes for levels 0 through steps."""
    if steps < 0:
        raise ValueError(f"steps must be nonnegative, got {steps}")
    if method not in ("leab", "leb"):
        raise ValueError(f"method must be 'leab' or 'leb', got {method!r}")
    split = leab_split if method == "leab" else leb_split
    radius = merge_radius(mesh)
    levels = [TriMesh(list(mesh.vertices), list(mesh.triangles), level=0)]
    for k in range(1, steps + 1):
        prev = levels[-1]
        nxt = TriMesh(list(prev.vertices), [], level=k)
        merger = _VertexMerger(nxt, radius)
        for parent_id, t in enumerate(prev.triangles):
            left, right = split(t, nxt, merger=merger, parent_id=parent_id)
            nxt.triangles.append(left)
            nxt.triangles.append(right)
        levels.append(nxt)
    return levels


class TriangleMetrics(NamedTuple):
    """Per-element size and angle summary."""

    diameter: float
    min_angle_deg: float
    max_angle_deg: float
    area: float


def triangle_angles_deg(t: Triangle, mesh: TriMesh) -> tuple[float, float, float]:
    """Interior angles in degrees at each stored vertex, via the clamped law of cosines."""
    pts = corners(t, mesh)
    sides = [distance(pts[(i + 1) % 3], pts[(i + 2) % 3]) for i in range(3)]
    angles = []
    for i in range(3):
        u, v, w = sides[(i + 1) % 3], sides[(i + 2) % 3], sides[i]
        cos_i = (u * u + v * v - w * w) / (2.0 * u * v)
        angles.append(math.degrees(math.acos(max(-1.0, min(1.0, cos_i)))))
    return angles[0], angles[1], angles[2]


def triangle_metrics(t: Triangle, mesh: TriMesh) -> TriangleMetrics:
    """Longest edge length, extreme interior angles in degrees, and area."""
    pts = corners(t, mesh)
    require_nondegenerate(*pts)
    angles = triangle_angles_deg(t, mesh)
    diam = max(distance(pts[i], pts[(i + 1) % 3]) for i in range(3))
    return TriangleMetrics(diam, min(angles), max(angles), abs(signed_area(*pts)))


def _point_segment(p: Point2, a: Point2, b: Point2) -> tuple[float, float]:
    """Distance from p to the line through a-b and the projection parameter along it."""
    ab2 = (b.x - a.x) ** 2 + (b.y - a.y) ** 2
    if ab2 == 0.0:
        return distance(p, a), 0.0
    t = ((p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y)) / ab2
    foot = Point2(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))
    return distance(p, foot), t


def find_hanging_nodes(mesh: TriMesh, tol: float | None = None) -> list[tuple[int, int, int]]:
    """Vertices lying strictly inside an edge of a triangle they do not belong to.

    Returns (vertex index, triangle id, local index of the vertex opposite the
    edge). When tol is None, each edge uses a tolerance scaled to its own
    length, so meshes mixing very large and very small elements stay clean.
    """
    diag = bounding_box_diagonal(mesh)
    if diag == 0.0:
        return []
    cell = diag / max(8.0, math.sqrt(len(mesh.vertices)))
    grid: dict[tuple[int, int], list[int]] = {}
    for i, p in enumerate(mesh.vertices):
        grid.setdefault((math.floor(p.x / cell), math.floor(p.y / cell)), []).append(i)
    hits: list[tuple[int, int, int]] = []
    seen: set[tuple[int, int, int]] = set()
    for tid, t in enumerate(mesh.triangles):
        pts = corners(t, mesh)
        for opp in range(3):
            a, b = pts[(opp + 1) % 3], pts[(opp + 2) % 3]
            edge_tol = tol if tol is not None else MERGE_SCALE * distance(a, b)
            x0 = math.floor((min(a.x, b.x) - edge_tol) / cell)
            x1 = math.floor((max(a.x, b.x) + edge_tol) / cell)
            y0 = math.floor((min(a.y, b.y) - edge_tol) / cell)
            y1 = math.floor((max(a.y, b.y) + edge_tol) / cell)
            for ix in range(x0, x1 + 1):
                for iy in range(y0, y1 + 1):
                    for vi in grid.get((ix, iy), ()):
                        if vi in t.v:
                            continue
                        p = mesh.vertices[vi]
                        dist, s = _point_segment(p, a, b)
                        if (dist <= edge_tol and 0.0 < s < 1.0
                                and distance(p, a) > edge_tol and distance(p, b) > edge_tol):
                            hit = (vi, tid, opp)
                            if hit not in seen:
                                seen.add(hit)
                                hits.append(hit)
    return hits


def mesh_to_dict(mesh: TriMesh) -> dict:
    """Plain-JSON form: vertex coordinate pairs, index triples, and the level tag."""
    return {
        "vertices": [[p.x, p.y] for p in mesh.vertices],
        "triangles": [list(t.v) for t in mesh.triangles],
        "level": mesh.level,
    }


def mesh_from_dict(data: dict) -> TriMesh:
    """Validate and build a mesh from its JSON form; clockwise triples are reoriented."""
    if not isinstance(data, dict):
        raise MeshFormatError(f"mesh document must be an object, got {type(data).__name__}")
    for key in ("vertices", "triangles"):
        if key not in data:
            raise MeshFormatError(f"missing field {key!r}")
        if not isinstance(data[key], list):
            raise MeshFormatError(f"field {key!r} must be a list")
    vertices = []
    for i, entry in enumerate(data["vertices"]):
        if not (isinstance(entry, list) and len(entry) == 2
                and all(isinstance(c, (int, float)) and math.isfinite(c) for c in entry)):
            raise MeshFormatError(f"vertices[{i}] must be a pair of finite numbers")
        vertices.append(Point2(float(entry[0]), float(entry[1])))
    level = data.get("level", 0)
    if not (isinstance(level, int) and level >= 0):
        raise MeshFormatError(f"field 'level' must be a nonnegative integer, got {level!r}")
    mesh = TriMesh(vertices, [], level=level)
    seen: dict[tuple[float, float], int] = {}
    for i, p in enumerate(vertices):
        j = seen.setdefault((p.x, p.y), i)
        if j != i:
            raise MeshFormatError(f"vertices[{i}] and vertices[{j}] coincide")
    for n, entry in enumerate(data["triangles"]):
        if not (isinstance(entry, list) and len(entry) == 3
                and all(isinstance(ix, int) and not isinstance(ix, bool) for ix in entry)):
            raise MeshFormatError(f"triangles[{n}] must be a triple of integers")
        i, j, k = entry
        if not all(0 <= ix < len(vertices) for ix in (i, j, k)) or len({i, j, k}) != 3:
            raise MeshFormatError(f"triangles[{n}] has out-of-range or repeated indices")
        if signed_area(vertices[i], vertices[j], vertices[k]) < 0.0:
            j, k = k, j
        require_nondegenerate(vertices[i], vertices[j], vertices[k])
        mesh.triangles.append(Triangle((i, j, k), level=level))
    return mesh


def load_mesh(path) -> TriMesh:
    """Read a mesh JSON file."""
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise MeshFormatError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    try:
        return mesh_from_dict(data)
    except MeshFormatError as exc:
        raise MeshFormatError(f"{path}: {exc}") from exc


def save_mesh(mesh: TriMesh, path) -> None:
    """Write a mesh JSON file with round-trip (shortest-repr) float coordinates."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(mesh_to_dict(mesh), fh)
        fh.write("\n")
