"""Parametric coil geometries discretized into chains of straight segments.

Coils are built in a local frame with the winding axis along +z and the
first point on the +x axis; world placement is applied with
:func:`transform_coil`.  All lengths are in metres.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

__all__ = [
    "WireSpec",
    "CoilShape",
    "CoilGeometry",
    "build_coil",
    "transform_coil",
    "total_wire_length",
]


class GeometryError(ValueError):
    """Raised for non-physical or malformed coil parameters."""


@dataclass(frozen=True)
class WireSpec:
    """Round wire: bundle radius, material resistivity, litz strand count.

    ``cross_section_radius`` is the copper-equivalent bundle radius; for
    litz wire the individual strand radius is ``radius / sqrt(strands)``.
    """

    cross_section_radius: float
    resistivity: float = 1.68e-8  # annealed copper, ohm*m
    litz_strand_count: int = 1

    def __post_init__(self):
        if self.cross_section_radius <= 0:
            raise GeometryError("wire cross_section_radius must be > 0")
        if self.resistivity <= 0:
            raise GeometryError("wire resistivity must be > 0")
        if self.litz_strand_count < 1:
            raise GeometryError("litz_strand_count must be >= 1")

    @property
    def strand_radius(self) -> float:
        return self.cross_section_radius / np.sqrt(self.litz_strand_count)


@dataclass(frozen=True)
class CoilShape:
    """Multi-turn helical coil outline: circle or regular polygon.

    ``n_sides is None`` means a circular winding.  Polygon vertices lie on
    the circle of diameter ``aperture_diameter`` (inscribed polygon).
    ``pitch`` is the axial advance per turn.
    """

    aperture_diameter: float
    turns: int
    pitch: float = 0.0
    n_sides: int | None = None

    def __post_init__(self):
        if self.aperture_diameter <= 0:
            raise GeometryError("aperture_diameter must be > 0")
        if self.turns < 1:
            raise GeometryError("turns must be a positive integer")
        if self.pitch < 0:
            raise GeometryError("pitch must be >= 0")
        if self.n_sides is not None and self.n_sides < 3:
            raise GeometryError("polygon needs at least 3 sides")

    @classmethod
    def circle(cls, aperture_diameter, turns, pitch=0.0) -> "CoilShape":
        return cls(aperture_diameter, turns, pitch, n_sides=None)

    @classmethod
    def octagon(cls, aperture_diameter, turns, pitch=0.0) -> "CoilShape":
        return cls(aperture_diameter, turns, pitch, n_sides=8)

    @classmethod
    def polygon(cls, n_sides, aperture_diameter, turns, pitch=0.0) -> "CoilShape":
        return cls(aperture_diameter, turns, pitch, n_sides=n_sides)

    @property
    def is_circle(self) -> bool:
        return self.n_sides is None

    def default_segments_per_turn(self) -> int:
        # circles: 64 (convergence-tested); polygons: 4 subdivisions/edge
        if self.is_circle:
            return 64
        return 4 * self.n_sides


@dataclass(frozen=True, eq=False)
class CoilGeometry:
    """A continuous chain of straight wire segments plus the wire spec.

    Stored as the ordered vertex array ``points`` of shape (N+1, 3);
    segment i runs from ``points[i]`` to ``points[i+1]``, which makes path
    continuity hold by construction.
    """

    points: np.ndarray
    wire: WireSpec
    translation: np.ndarray = field(default_factory=lambda: np.zeros(3))
    rotation: np.ndarray = field(default_factory=lambda: np.eye(3))

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 3 or pts.shape[0] < 2:
            raise GeometryError("points must have shape (N+1, 3) with N >= 1")
        object.__setattr__(self, "points", pts)
        if np.any(np.linalg.norm(np.diff(pts, axis=0), axis=1) == 0.0):
            raise GeometryError("zero-length segment in coil path")

    @property
    def n_segments(self) -> int:
        return self.points.shape[0] - 1

    @property
    def segment_starts(self) -> np.ndarray:
        return self.points[:-1]

    @property
    def segment_vectors(self) -> np.ndarray:
        return np.diff(self.points, axis=0)

    @property
    def segments(self) -> np.ndarray:
        """(N, 2, 3) array of (start, end) pairs."""
        return np.stack([self.points[:-1], self.points[1:]], axis=1)

    @property
    def segment_lengths(self) -> np.ndarray:
        return np.linalg.norm(self.segment_vectors, axis=1)


def build_coil(shape: CoilShape, wire: WireSpec,
               segments_per_turn: int | None = None) -> CoilGeometry:
    """Discretize a helical coil into straight segments.

    The helix advances ``shape.pitch`` in z per turn, linearly with the
    sweep angle.  Polygon coils require ``segments_per_turn`` to be a
    multiple of ``n_sides`` (whole subdivisions per edge).
    """
    if segments_per_turn is None:
        segments_per_turn = shape.default_segments_per_turn()

    r = shape.aperture_diameter / 2.0
    turns = shape.turns
    pitch = shape.pitch

    if shape.is_circle:
        if segments_per_turn < 16:
            raise GeometryError("circles need segments_per_turn >= 16")
        n = segments_per_turn * turns
        theta = np.linspace(0.0, 2.0 * np.pi * turns, n + 1)
        pts = np.column_stack([
            r * np.cos(theta),
            r * np.sin(theta),
            pitch * theta / (2.0 * np.pi),
        ])
    else:
        n_sides = shape.n_sides
        if segments_per_turn < n_sides:
            raise GeometryError(
                f"polygon needs segments_per_turn >= n_sides ({n_sides})")
        if segments_per_turn % n_sides != 0:
            raise GeometryError(
                "polygon segments_per_turn must be a multiple of n_sides")
        subdiv = segments_per_turn // n_sides
        theta_v = np.linspace(0.0, 2.0 * np.pi * turns, n_sides * turns + 1)
        verts = np.column_stack([
            r * np.cos(theta_v),
            r * np.sin(theta_v),
            pitch * theta_v / (2.0 * np.pi),
        ])
        # subdivide each edge; z interpolates linearly along the chord
        f = np.arange(subdiv) / subdiv
        pts = (verts[:-1, None, :] * (1.0 - f)[None, :, None]
               + verts[1:, None, :] * f[None, :, None]).reshape(-1, 3)
        pts = np.vstack([pts, verts[-1]])

    return CoilGeometry(points=pts, wire=wire)


def _as_rotation_matrix(rotation) -> np.ndarray:
    if rotation is None:
        return np.eye(3)
    if hasattr(rotation, "as_matrix"):  # scipy.spatial.transform.Rotation
        mat = rotation.as_matrix()
    else:
        mat = np.asarray(rotation, dtype=float)
    if mat.shape != (3, 3):
        raise GeometryError("rotation must be a 3x3 matrix or scipy Rotation")
    if not np.allclose(mat @ mat.T, np.eye(3), atol=1e-10):
        raise GeometryError("rotation matrix is not orthogonal")
    if np.linalg.det(mat) < 0:
        raise GeometryError("improper rotation (reflection) not allowed")
    return mat


def transform_coil(coil: CoilGeometry, translation=(0.0, 0.0, 0.0),
                   rotation=None) -> CoilGeometry:
    """Apply a rigid transform (rotate about the origin, then translate)."""
    t = np.asarray(translation, dtype=float).reshape(3)
    mat = _as_rotation_matrix(rotation)
    pts = coil.points @ mat.T + t
    return replace(coil, points=pts,
                   translation=mat @ coil.translation + t,
                   rotation=mat @ coil.rotation)


def total_wire_length(coil: CoilGeometry | None) -> float:
    """Sum of Euclidean segment lengths; 0.0 for an empty segment list."""
    if coil is None:
        return 0.0
    return float(np.sum(coil.segment_lengths))
