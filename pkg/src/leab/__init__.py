"""Longest-edge altitude bisection of triangle meshes and its shape-space dynamics."""

from .analysis import (
    BoundsReport,
    BoundsRow,
    LevelStats,
    Violation,
    commutation_check,
    heterogeneity_ratio,
    level_stats,
    normalize_triangle,
    right_triangle_check,
    similarity_class_count,
    verify_bounds,
    write_stats_csv,
)
from .errors import (
    DegenerateShapeError,
    DegenerateTriangleError,
    InsufficientLevelsError,
    MeshFormatError,
)
from .mesh import (
    Point2,
    SimilarityTransform,
    Triangle,
    TriangleMetrics,
    TriMesh,
    altitude_foot,
    corners,
    find_hanging_nodes,
    leab_split,
    leb_split,
    load_mesh,
    longest_edge,
    refine_global,
    save_mesh,
    triangle_metrics,
)
from .shape_space import (
    OrbitTrace,
    ShapePoint,
    Word,
    canonical_symmetry,
    gamma_point,
    gamma_residual,
    is_in_sigma,
    is_on_gamma,
    orbit,
    poincare_distance,
    ray_gamma_intersection,
    sample_sigma,
    w_left,
    w_left_raw,
    w_right,
    w_right_raw,
)

__version__ = "0.1.0"

__all__ = [
    "BoundsReport",
    "BoundsRow",
    "DegenerateShapeError",
    "DegenerateTriangleError",
    "InsufficientLevelsError",
    "LevelStats",
    "MeshFormatError",
    "OrbitTrace",
    "Point2",
    "ShapePoint",
    "SimilarityTransform",
    "Triangle",
    "TriangleMetrics",
    "TriMesh",
    "Violation",
    "Word",
    "altitude_foot",
    "canonical_symmetry",
    "commutation_check",
    "corners",
    "find_hanging_nodes",
    "gamma_point",
    "gamma_residual",
    "heterogeneity_ratio",
    "is_in_sigma",
    "is_on_gamma",
    "leab_split",
    "leb_split",
    "level_stats",
    "load_mesh",
    "longest_edge",
    "normalize_triangle",
    "orbit",
    "poincare_distance",
    "ray_gamma_intersection",
    "refine_global",
    "right_triangle_check",
    "sample_sigma",
    "save_mesh",
    "similarity_class_count",
    "triangle_metrics",
    "verify_bounds",
    "w_left",
    "w_left_raw",
    "w_right",
    "w_right_raw",
    "write_stats_csv",
]
