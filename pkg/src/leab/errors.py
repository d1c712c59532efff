"""Exception types shared across the package."""


class DegenerateShapeError(ValueError):
    """A shape-space input is real (zero-area similarity class)."""


class DegenerateTriangleError(ValueError):
    """A triangle's area is below the scale-invariant degeneracy threshold."""


class MeshFormatError(ValueError):
    """A mesh file or mesh structure violates the interchange format."""


class InsufficientLevelsError(ValueError):
    """A bounds check needs at least levels 0 and 1."""
