"""Uniform planar array geometry: element coordinates and linear indexing.

Linear indices are 1-based and enumerate the grid in row-major order; grid
coordinates (i, j) are 0-based.  Distances are computed from the exact integer
offset p**2 + q**2 so that no cancellation occurs for far-apart elements.
"""

import math
from dataclasses import dataclass

from fluidris.errors import DomainError


@dataclass(frozen=True)
class UpaGeometry:
    """Rectangular array of m_x * m_z elements with normalized spacing d_w.

    The physical inter-element spacing is ``d = d_w * lambda_c`` metres.
    """

    m_x: int
    m_z: int
    d_w: float
    lambda_c: float

    def __post_init__(self):
        if self.m_x < 1 or self.m_z < 1:
            raise DomainError(f"array dimensions must be >= 1, got {self.m_x}x{self.m_z}")
        if not (self.d_w > 0.0) or not (self.lambda_c > 0.0):
            raise DomainError("d_w and lambda_c must be strictly positive")

    @property
    def spacing(self) -> float:
        """Physical inter-element spacing in metres."""
        return self.d_w * self.lambda_c

    @property
    def size(self) -> int:
        """Total element count M = m_x * m_z."""
        return self.m_x * self.m_z


@dataclass(frozen=True)
class ElementIndex:
    """An element identified both by 1-based linear index and (i, j) grid pair.

    Instances are produced by :func:`linearize` / :func:`element`, which enforce
    ``linear == i + j*m_x + 1`` for the owning geometry.
    """

    linear: int
    grid: tuple


def linearize(geom: UpaGeometry, i: int, j: int) -> ElementIndex:
    """Map grid coordinates (i, j) to the row-major linear index i + j*m_x + 1."""
    if not (0 <= i < geom.m_x and 0 <= j < geom.m_z):
        raise DomainError(f"grid coordinates ({i}, {j}) outside {geom.m_x}x{geom.m_z} aperture")
    return ElementIndex(linear=i + j * geom.m_x + 1, grid=(i, j))


def delinearize(geom: UpaGeometry, m: int) -> tuple:
    """Inverse of :func:`linearize`: recover (i, j) from a 1-based linear index."""
    if not (1 <= m <= geom.size):
        raise DomainError(f"linear index {m} outside [1, {geom.size}]")
    i = (m - 1) % geom.m_x
    j = (m - 1) // geom.m_x
    return (i, j)


def element(geom: UpaGeometry, m: int) -> ElementIndex:
    """Build a validated ElementIndex from a 1-based linear index."""
    return ElementIndex(linear=m, grid=delinearize(geom, m))


def position(geom: UpaGeometry, idx: ElementIndex) -> tuple:
    """Physical coordinates (x, z) in metres of an element."""
    i, j = idx.grid
    if not (0 <= i < geom.m_x and 0 <= j < geom.m_z):
        raise DomainError(f"grid coordinates ({i}, {j}) outside aperture")
    d = geom.spacing
    return (i * d, j * d)


def distance(geom: UpaGeometry, a: ElementIndex, b: ElementIndex) -> float:
    """Euclidean distance in metres between two elements.

    Uses the exact integer offset form d * sqrt(p**2 + q**2).
    """
    ia, ja = a.grid
    ib, jb = b.grid
    for i, j in ((ia, ja), (ib, jb)):
        if not (0 <= i < geom.m_x and 0 <= j < geom.m_z):
            raise DomainError(f"grid coordinates ({i}, {j}) outside aperture")
    p = ib - ia
    q = jb - ja
    return geom.spacing * math.sqrt(p * p + q * q)
