"""Acceptance checks: one test per shipped guarantee, tolerances pinned.

The conftest hook prints one PASS/FAIL line per criterion after the run.
"""

import math
import random

import pytest

from leab import (
    Point2,
    ShapePoint,
    Triangle,
    TriMesh,
    commutation_check,
    find_hanging_nodes,
    gamma_point,
    gamma_residual,
    level_stats,
    ray_gamma_intersection,
    refine_global,
    right_triangle_check,
    sample_sigma,
    similarity_class_count,
    verify_bounds,
    w_left,
    w_right,
)
from leab.mesh import distance, signed_area, triangle_angles_deg

SQRT3 = math.sqrt(3.0)
RNG_SEED = 20260815
# rejection rule for the random scalene seed: interior angles at least 25
# degrees and pairwise edge lengths at least 5 percent apart
MIN_ANGLE_DEG = 25.0
EDGE_SPREAD = 1.05


def ccw(a: Point2, b: Point2, c: Point2) -> tuple[Point2, Point2, Point2]:
    return (a, b, c) if signed_area(a, b, c) >= 0.0 else (a, c, b)


def single(a: Point2, b: Point2, c: Point2) -> TriMesh:
    return TriMesh(list(ccw(a, b, c)), [Triangle((0, 1, 2))])


def corner_angles_deg(a: Point2, b: Point2, c: Point2) -> list[float]:
    mesh = single(a, b, c)
    return list(triangle_angles_deg(mesh.triangles[0], mesh))


def draw_scalene(rng: random.Random) -> tuple[Point2, Point2, Point2]:
    while True:
        a, b, c = (Point2(rng.random(), rng.random()) for _ in range(3))
        edges = sorted((distance(a, b), distance(b, c), distance(c, a)))
        if edges[2] == 0.0 or abs(signed_area(a, b, c)) < 1e-6 * edges[2] ** 2:
            continue
        if min(corner_angles_deg(a, b, c)) < MIN_ANGLE_DEG:
            continue
        if edges[1] < EDGE_SPREAD * edges[0] or edges[2] < EDGE_SPREAD * edges[1]:
            continue
        return a, b, c


def seed_meshes() -> dict[str, TriMesh]:
    s5, c5 = math.sin(math.radians(5.0)), math.cos(math.radians(5.0))
    return {
        "equilateral": single(Point2(0, 0), Point2(1, 0), Point2(0.5, SQRT3 / 2)),
        "right-3-4-5": single(Point2(0, 0), Point2(4, 0), Point2(4, 3)),
        "right-5-deg": single(Point2(0, 0), Point2(s5, 0), Point2(s5, c5)),
        "random-scalene": single(*draw_scalene(random.Random(RNG_SEED))),
    }


@pytest.fixture(scope="module")
def twelve_levels():
    return {name: refine_global(mesh, 12) for name, mesh in seed_meshes().items()}


def test_criterion_01():
    """Child shapes of 0.25+0.125i match their reference coordinates."""
    z = ShapePoint(0.25, 0.125)
    assert abs(w_left(z).z - complex(0.2, 0.4)) <= 1e-5
    assert abs(w_right(z).z - complex(0.027027, 0.162162)) <= 1e-5


def test_criterion_02():
    """Both child maps send the whole shape region onto the circle."""
    rng = random.Random(RNG_SEED)
    worst = 0.0
    for _ in range(10_000):
        z = sample_sigma(rng)
        worst = max(worst, gamma_residual(w_left(z).z), gamma_residual(w_right(z).z))
    assert worst <= 1e-10


def test_criterion_03():
    """Every point of the right-triangle circle is fixed by both maps."""
    worst = 0.0
    for i in range(1000):
        z = gamma_point(math.pi / 2.0 + (math.pi / 2.0) * i / 1000.0)
        worst = max(worst, abs(w_left(z).z - z.z), abs(w_right(z).z - z.z))
    assert worst <= 1e-10


def test_criterion_04():
    """Formula maps agree with the ray-circle intersection oracle."""
    rng = random.Random(RNG_SEED + 1)
    worst = 0.0
    for _ in range(10_000):
        z = sample_sigma(rng)
        worst = max(
            worst,
            abs(ray_gamma_intersection(0, z).z - w_left(z).z),
            abs(ray_gamma_intersection(1, z).z - w_right(z).z),
        )
    assert worst <= 1e-9


def test_criterion_05():
    """Geometric altitude splitting commutes with the shape maps."""
    rng = random.Random(RNG_SEED + 2)
    worst = 0.0
    for _ in range(1000):
        while True:
            a, b, c = (Point2(rng.random(), rng.random()) for _ in range(3))
            d = max(distance(a, b), distance(b, c), distance(c, a))
            if d > 0.0 and abs(signed_area(a, b, c)) > 1e-3 * d * d:
                break
        worst = max(worst, *commutation_check(a, b, c))
    assert worst <= 1e-9


def test_criterion_06(twelve_levels):
    """Two-sided diameter envelopes hold for 12 levels of all four seeds."""
    for name, levels in twelve_levels.items():
        report = verify_bounds(levels)
        assert report.passed, f"{name}: {report.first_violation}"
        assert report.angle_halving_passed, name
        assert report.alpha1_deg >= report.alpha0_deg / 2.0 - 1e-9, name
    for row in verify_bounds(twelve_levels["equilateral"]).rows:
        assert row.observed_min == pytest.approx(row.bound_lower, rel=1e-12)
        assert row.observed_max == pytest.approx(row.bound_upper, rel=1e-12)


def test_criterion_07(twelve_levels):
    """One equilateral split gives two unit diameters and a 30 degree angle."""
    s1 = level_stats(twelve_levels["equilateral"][1])
    assert s1.n == 2
    assert abs(s1.min_diam - 1.0) <= 1e-12
    assert abs(s1.max_diam - 1.0) <= 1e-12
    assert abs(s1.min_angle_deg - 30.0) <= 1e-12


def test_criterion_08(twelve_levels):
    """Refined elements stay right-angled with a constant class count."""
    failures = []
    for name, levels in twelve_levels.items():
        for mesh in levels[1:]:
            if not right_triangle_check(mesh, tol_deg=1e-9):
                failures.append(f"{name}: level {mesh.level} angle off 90 by more than 1e-9 deg")
        counts = [similarity_class_count(mesh) for mesh in levels[1:]]
        if len(set(counts)) != 1:
            failures.append(f"{name}: class counts vary over levels: {counts}")
    assert not failures, "; ".join(failures)


def test_criterion_09():
    """Size heterogeneity of the 5 degree seed follows the cotangent law."""
    h = 0.5 * math.tan(math.radians(5.0))
    seed = single(Point2(-0.5, -h), Point2(0.5, -h), Point2(0.0, 0.0))
    levels = refine_global(seed, 12)
    alpha1 = math.radians(level_stats(levels[1]).min_angle_deg)
    ratio = math.cos(alpha1) / math.sin(alpha1)
    for mesh in levels[1:]:
        k = mesh.level
        observed = level_stats(mesh).heterogeneity
        expected = ratio ** (k - 1)
        assert abs(observed - expected) <= 1e-9 * expected, f"level {k}"
    # at level 5 the spread is already around 1.7e4
    assert 1.6e4 < level_stats(levels[5]).heterogeneity < 1.8e4


def test_criterion_10():
    """A non-matching pair split hangs exactly one node at (0.5, 0)."""
    pair = TriMesh(
        [Point2(0.0, 0.0), Point2(1.0, 0.0), Point2(0.2, 0.8), Point2(0.5, -0.3)],
        [Triangle((0, 1, 2)), Triangle((0, 3, 1))],
    )
    refined = refine_global(pair, 1)[1]
    hits = find_hanging_nodes(refined)
    assert len(hits) == 1
    hang = refined.vertices[hits[0][0]]
    assert (hang.x, hang.y) == (0.5, 0.0)

    for mesh in seed_meshes().values():
        assert find_hanging_nodes(refine_global(mesh, 1)[1]) == []
    rng = random.Random(RNG_SEED + 3)
    for _ in range(100):
        while True:
            a, b, c = (Point2(rng.random(), rng.random()) for _ in range(3))
            d = max(distance(a, b), distance(b, c), distance(c, a))
            if d > 0.0 and abs(signed_area(a, b, c)) > 1e-3 * d * d:
                break
        assert find_hanging_nodes(refine_global(single(a, b, c), 1)[1]) == []
