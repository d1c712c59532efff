"""Normalized triangle shape space, its circle of right-triangle shapes, and the child-shape maps."""

import math
import random
from dataclasses import dataclass

from .errors import DegenerateShapeError

SIGMA_TOL = 1e-12
_MIN_IM = 1e-14


@dataclass(frozen=True)
class ShapePoint:
    """A similarity class of triangles: longest edge on [0,1], shortest edge attached to 0."""

    re: float
    im: float

    @property
    def z(self) -> complex:
        return complex(self.re, self.im)

    @classmethod
    def from_complex(cls, z: complex) -> "ShapePoint":
        return cls(z.real, z.imag)


@dataclass(frozen=True)
class Word:
    """A finite string over the letters L (left child) and R (right child)."""

    letters: tuple[str, ...]

    def __post_init__(self) -> None:
        for letter in self.letters:
            if letter not in ("L", "R"):
                raise ValueError(f"word letters must be L or R, got {letter!r}")

    @classmethod
    def parse(cls, text: str) -> "Word":
        return cls(tuple(text))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)


@dataclass(frozen=True)
class OrbitTrace:
    """Iterates of a start shape under a word of child maps, with per-step circle residuals."""

    start: ShapePoint
    steps: tuple[tuple[str, ShapePoint], ...]
    residuals: tuple[float, ...]


def canonical_symmetry(w: complex) -> ShapePoint:
    """Fold w into the half-strip: conjugate if below the real axis, then reflect across Re = 1/2."""
    if w.imag == 0.0:
        raise DegenerateShapeError(f"shape {w} is real (collinear triangle)")
    if w.imag < 0.0:
        w = w.conjugate()
    if w.real > 0.5:
        w = 1.0 - w.conjugate()
    return ShapePoint(w.real, w.imag)


def is_in_sigma(z: complex, tol: float = SIGMA_TOL) -> bool:
    """Membership in the shape region, with boundary comparisons relaxed by tol."""
    return (
        z.real > -tol
        and z.real <= 0.5 + tol
        and z.imag > -tol
        and abs(z - 1.0) <= 1.0 + tol
    )


def gamma_residual(z: complex) -> float:
    """Distance of |z - 1/2| from 1/2; zero exactly on the right-triangle circle."""
    return abs(abs(z - 0.5) - 0.5)


def is_on_gamma(z: complex, tol: float = SIGMA_TOL) -> bool:
    """True iff z is in the shape region and on the right-triangle circle within tol."""
    return is_in_sigma(z, tol) and gamma_residual(z) <= tol


def gamma_point(theta: float) -> ShapePoint:
    """Point of the right-triangle circle at angle theta (radians), theta in [pi/2, pi)."""
    # half-angle products instead of 0.5 + 0.5*cos(theta): the identity
    # re^2 + im^2 = re then holds to rounding even near theta = pi, where the
    # direct form cancels and points drift off the circle relative to |z|
    c = math.cos(0.5 * theta)
    s = math.sin(0.5 * theta)
    return ShapePoint(c * c, s * c)


def w_left_raw(z: complex) -> complex:
    """Unnormalized left-child map; the branch line is Re(z) = Im(z)."""
    if z.real <= z.imag:
        return (z + z.conjugate()) / (2.0 * z)
    return (z - z.conjugate()) / (2.0 * z)


def w_right_raw(z: complex) -> complex:
    """Unnormalized right-child map; the branch line is 1 - Re(z) = Im(z)."""
    if 1.0 - z.real <= z.imag:
        return (z + z.conjugate() - 2.0) / (2.0 * (z - 1.0))
    return (z - z.conjugate()) / (2.0 * (z - 1.0))


def w_left(z: ShapePoint) -> ShapePoint:
    """Shape of the left child after one altitude subdivision; lands on the circle."""
    return canonical_symmetry(w_left_raw(z.z))


def w_right(z: ShapePoint) -> ShapePoint:
    """Shape of the right child after one altitude subdivision; lands on the circle."""
    return canonical_symmetry(w_right_raw(z.z))


def ray_gamma_intersection(origin: int, z: ShapePoint) -> ShapePoint:
    """Intersect the ray from an endpoint of [0,1] through z with the right-triangle circle."""
    if origin not in (0, 1):
        raise ValueError(f"ray origin must be 0 or 1, got {origin!r}")
    if z.im < _MIN_IM:
        raise DegenerateShapeError(f"ray through {z.z} is tangent to the real axis")
    d = z.z - origin
    m = complex(origin - 0.5, 0.0)
    # |m + t*d|^2 = 1/4 with |m| = 1/2: the constant term vanishes, so the
    # quadratic's roots are t = 0 (the ray origin itself) and t = -b/a.
    a = d.real * d.real + d.imag * d.imag
    b = 2.0 * (m.real * d.real + m.imag * d.imag)
    t = -b / a
    return canonical_symmetry(origin + t * d)


def poincare_distance(z: complex, w: complex) -> float:
    """Hyperbolic distance between two points of the upper half-plane."""
    if z.imag <= 0.0 or w.imag <= 0.0:
        raise ValueError("both points must have positive imaginary part")
    q = abs(z - w) ** 2 / (2.0 * z.imag * w.imag)
    return math.acosh(1.0 + q)


def orbit(z: ShapePoint, word: Word) -> OrbitTrace:
    """Apply the child maps letter by letter, recording each shape and its circle residual."""
    steps: list[tuple[str, ShapePoint]] = []
    residuals: list[float] = []
    current = z
    for letter in word:
        current = w_left(current) if letter == "L" else w_right(current)
        steps.append((letter, current))
        residuals.append(gamma_residual(current.z))
    return OrbitTrace(start=z, steps=tuple(steps), residuals=tuple(residuals))


def sample_sigma(rng: random.Random) -> ShapePoint:
    """Rejection-sample a shape uniformly in area from the half-strip."""
    while True:
        re = 0.5 * (1.0 - rng.random())
        im = 1.0 - rng.random()
        if (re - 1.0) ** 2 + im * im <= 1.0:
            return ShapePoint(re, im)
