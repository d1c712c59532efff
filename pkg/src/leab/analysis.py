"""Quantitative bridge between mesh refinement and its shape-space dynamics."""

import csv
import math
from collections.abc import Sequence
from dataclasses import dataclass

from .errors import InsufficientLevelsError
from .mesh import (
    Point2,
    SimilarityTransform,
    Triangle,
    TriMesh,
    corners,
    distance,
    leab_split,
    require_nondegenerate,
    signed_area,
    triangle_angles_deg,
    triangle_metrics,
)
from .shape_space import ShapePoint, w_left, w_right

BOUND_SLACK = 1e-9
CLUSTER_TOL = 1e-8

STATS_HEADER = "k,n,min_diam,max_diam,min_angle_deg,max_angle_deg,heterogeneity,bound_lower,bound_upper,pass"


@dataclass(frozen=True)
class LevelStats:
    """Aggregate element metrics for one refinement level."""

    k: int
    n: int
    min_diam: float
    max_diam: float
    min_angle_deg: float
    max_angle_deg: float
    heterogeneity: float


@dataclass(frozen=True)
class BoundsRow:
    """Diameter envelope and observations for one level."""

    k: int
    bound_lower: float
    bound_upper: float
    observed_min: float
    observed_max: float
    passed: bool


@dataclass(frozen=True)
class Violation:
    """First element found outside its level's diameter envelope."""

    k: int
    triangle: int
    observed: float
    bound: float
    side: str


@dataclass(frozen=True)
class BoundsReport:
    """Per-level envelope checks plus the angle-halving comparison."""

    rows: tuple[BoundsRow, ...]
    alpha0_deg: float
    alpha1_deg: float
    angle_halving_passed: bool
    passed: bool
    first_violation: Violation | None


def _local_frames(a: Point2, b: Point2, c: Point2) -> tuple[int, int, int]:
    """Local indices (zero endpoint, one endpoint, apex) of the normalized frame."""
    pts = (a, b, c)
    opp = 0
    best = -1.0
    for i in range(3):
        length = distance(pts[(i + 1) % 3], pts[(i + 2) % 3])
        if length > best:
            opp, best = i, length
    la, lb = (opp + 1) % 3, (opp + 2) % 3
    da = distance(pts[opp], pts[la])
    db = distance(pts[opp], pts[lb])
    if da < db or (da == db and la < lb):
        return la, lb, opp
    return lb, la, opp


def normalize_triangle(a: Point2, b: Point2, c: Point2) -> tuple[ShapePoint, SimilarityTransform]:
    """Shape of a triangle and the similarity that carries it onto the normalized frame.

    The longest edge lands on [0,1] with the shortest edge attached to 0 and
    the remaining vertex in the upper half-plane (reflecting when needed).
    """
    require_nondegenerate(a, b, c)
    pts = (a, b, c)
    zero_i, one_i, apex_i = _local_frames(a, b, c)
    zero, one, apex = pts[zero_i].z, pts[one_i].z, pts[apex_i].z
    denom = one - zero
    z = (apex - zero) / denom
    scale = 1.0 / abs(denom)
    if z.imag < 0.0:
        z = z.conjugate()
        shift = -zero.conjugate() / denom.conjugate()
        transform = SimilarityTransform(
            scale, math.atan2(denom.imag, denom.real), Point2(shift.real, shift.imag), True
        )
    else:
        shift = -zero / denom
        transform = SimilarityTransform(
            scale, -math.atan2(denom.imag, denom.real), Point2(shift.real, shift.imag), False
        )
    return ShapePoint(z.real, z.imag), transform


def commutation_check(a: Point2, b: Point2, c: Point2) -> tuple[float, float]:
    """Residuals between child shapes computed geometrically and via the shape maps."""
    require_nondegenerate(a, b, c)
    if signed_area(a, b, c) < 0.0:
        b, c = c, b
    scratch = TriMesh([a, b, c], [Triangle((0, 1, 2))])
    parent_shape, _ = normalize_triangle(a, b, c)
    left, right = leab_split(scratch.triangles[0], scratch)
    left_shape, _ = normalize_triangle(*corners(left, scratch))
    right_shape, _ = normalize_triangle(*corners(right, scratch))
    return (
        abs(left_shape.z - w_left(parent_shape).z),
        abs(right_shape.z - w_right(parent_shape).z),
    )


def level_stats(mesh: TriMesh) -> LevelStats:
    """Min/max diameter and angle over all elements of one level."""
    if not mesh.triangles:
        raise ValueError("mesh has no elements")
    min_d = math.inf
    max_d = 0.0
    min_a = math.inf
    max_a = 0.0
    for t in mesh.triangles:
        m = triangle_metrics(t, mesh)
        min_d = min(min_d, m.diameter)
        max_d = max(max_d, m.diameter)
        min_a = min(min_a, m.min_angle_deg)
        max_a = max(max_a, m.max_angle_deg)
    return LevelStats(mesh.level, len(mesh.triangles), min_d, max_d, min_a, max_a, max_d / min_d)


def _check_consecutive(levels: Sequence[TriMesh]) -> None:
    for i, mesh in enumerate(levels):
        if mesh.level != i:
            raise ValueError(f"levels must be consecutive from 0, found level {mesh.level} at position {i}")


def verify_bounds(levels: Sequence[TriMesh]) -> BoundsReport:
    """Check every element against the diameter envelope calibrated from levels 0 and 1."""
    if len(levels) < 2:
        raise InsufficientLevelsError("need levels 0 and 1 to calibrate the envelope")
    _check_consecutive(levels)
    s0 = level_stats(levels[0])
    s1 = level_stats(levels[1])
    alpha0, alpha1 = s0.min_angle_deg, s1.min_angle_deg
    sin1 = math.sin(math.radians(alpha1))
    cos1 = math.cos(math.radians(alpha1))
    rows = []
    first: Violation | None = None
    for mesh in levels[1:]:
        k = mesh.level
        lower = s1.min_diam * sin1 ** (k - 1)
        upper = s1.max_diam * cos1 ** (k - 1)
        observed_min = math.inf
        observed_max = 0.0
        row_pass = True
        for tid, t in enumerate(mesh.triangles):
            d = triangle_metrics(t, mesh).diameter
            observed_min = min(observed_min, d)
            observed_max = max(observed_max, d)
            if d < lower * (1.0 - BOUND_SLACK):
                row_pass = False
                if first is None:
                    first = Violation(k, tid, d, lower, "lower")
            elif d > upper * (1.0 + BOUND_SLACK):
                row_pass = False
                if first is None:
                    first = Violation(k, tid, d, upper, "upper")
        rows.append(BoundsRow(k, lower, upper, observed_min, observed_max, row_pass))
    halving = alpha1 >= alpha0 / 2.0 - BOUND_SLACK
    passed = halving and all(r.passed for r in rows)
    return BoundsReport(tuple(rows), alpha0, alpha1, halving, passed, first)


def right_triangle_check(mesh: TriMesh, tol_deg: float = 1e-9) -> bool:
    """True iff every element has an angle within tol_deg of 90 degrees, opposite its longest edge."""
    for t in mesh.triangles:
        pts = corners(t, mesh)
        sides = [distance(pts[(i + 1) % 3], pts[(i + 2) % 3]) for i in range(3)]
        angles = triangle_angles_deg(t, mesh)
        nearest = min(range(3), key=lambda i: abs(angles[i] - 90.0))
        if abs(angles[nearest] - 90.0) > tol_deg:
            return False
        if sides[nearest] < max(sides) * (1.0 - 1e-12):
            return False
    return True


def similarity_class_count(mesh: TriMesh, tol: float = CLUSTER_TOL) -> int:
    """Number of shape clusters under greedy agglomeration with Euclidean tolerance."""
    reps: list[complex] = []
    for t in mesh.triangles:
        shape, _ = normalize_triangle(*corners(t, mesh))
        z = shape.z
        if all(abs(z - r) > tol for r in reps):
            reps.append(z)
    return len(reps)


def heterogeneity_ratio(levels: Sequence[TriMesh]) -> list[float]:
    """Max/min element diameter for each level k >= 1."""
    return [level_stats(mesh).heterogeneity for mesh in levels if mesh.level >= 1]


def write_stats_csv(levels: Sequence[TriMesh], path) -> BoundsReport | None:
    """Write the per-level stats table; envelope columns are filled for k >= 1."""
    report = verify_bounds(levels) if len(levels) >= 2 else None
    by_k = {row.k: row for row in report.rows} if report else {}
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(STATS_HEADER.split(","))
        for mesh in levels:
            s = level_stats(mesh)
            row = [s.k, s.n, s.min_diam, s.max_diam, s.min_angle_deg, s.max_angle_deg, s.heterogeneity]
            bound = by_k.get(s.k)
            if bound is None:
                row += ["", "", ""]
            else:
                row += [bound.bound_lower, bound.bound_upper, "true" if bound.passed else "false"]
            writer.writerow(row)
    return report
