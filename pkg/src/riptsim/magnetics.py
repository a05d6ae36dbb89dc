"""Self- and mutual-inductance extraction for segment-discretized coils.

Mutual inductance is the Neumann double line integral evaluated pairwise
over segments (thin-wire filaments at the wire centre).  Self-inductance
replaces the singular same-segment terms with the closed-form partial
inductance of a straight round wire.

M = (mu0 / 4 pi) * sum_i sum_j (dl_i . dl_j) / |r_i - r_j|
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss

from riptsim import _kernels
from riptsim.geometry import CoilGeometry

__all__ = [
    "MU0",
    "IntegrationSettings",
    "LinkInductances",
    "mutual_inductance",
    "self_inductance",
    "coupling_coefficient",
    "link_inductances",
    "partial_self_inductance",
]

MU0 = 4.0e-7 * np.pi  # vacuum permeability, H/m


class MagneticsError(ValueError):
    """Raised for non-physical layouts or invalid inductance inputs."""


@dataclass(frozen=True)
class IntegrationSettings:
    """Quadrature controls for the segment-pair double sum.

    Pairs with centre distance above ``min_center_distance_for_midpoint_rule``
    use a single midpoint evaluation; closer pairs use tensor
    Gauss-Legendre with ``quadrature_points_per_segment`` nodes per
    segment.  A threshold of 0.0 means automatic: 4x the longest segment.

    ``include_internal_inductance`` adds the DC internal term (l/4 in the
    round-wire partial-inductance bracket).  Off by default: the link
    operates well above the skin-depth crossover, where the textbook
    external-only loop inductance is the right reference.
    """

    quadrature_points_per_segment: int = 4
    min_center_distance_for_midpoint_rule: float = 0.0
    include_internal_inductance: bool = False

    def __post_init__(self):
        if self.quadrature_points_per_segment < 1:
            raise MagneticsError("quadrature_points_per_segment must be >= 1")
        if self.min_center_distance_for_midpoint_rule < 0:
            raise MagneticsError("midpoint-rule distance must be >= 0")

    def unit_rule(self):
        """Gauss-Legendre nodes/weights mapped to [0, 1]."""
        x, w = leggauss(self.quadrature_points_per_segment)
        return 0.5 * (x + 1.0), 0.5 * w


DEFAULT_SETTINGS = IntegrationSettings()


@dataclass(frozen=True)
class LinkInductances:
    """Lp, Ls, M and the coupling coefficient k = M / sqrt(Lp * Ls)."""

    L_primary: float
    L_secondary: float
    mutual: float
    coupling: float

    def __post_init__(self):
        if self.L_primary <= 0 or self.L_secondary <= 0:
            raise MagneticsError("self-inductances must be > 0")
        if abs(self.coupling) > 1.0:
            raise MagneticsError(f"|k| = {abs(self.coupling):.4g} exceeds 1")
        k_check = self.mutual / np.sqrt(self.L_primary * self.L_secondary)
        if abs(self.coupling - k_check) > 1e-12 * max(1.0, abs(k_check)):
            raise MagneticsError("coupling inconsistent with M/sqrt(Lp*Ls)")

    @classmethod
    def from_inductances(cls, L_primary, L_secondary, mutual) -> "LinkInductances":
        k = coupling_coefficient(L_primary, L_secondary, mutual)
        return cls(L_primary, L_secondary, mutual, k)


def _threshold(settings: IntegrationSettings, *coils: CoilGeometry) -> float:
    max_len = max(float(c.segment_lengths.max()) for c in coils)
    return max(settings.min_center_distance_for_midpoint_rule, 4.0 * max_len)


def _segment_min_distances(a: CoilGeometry, b: CoilGeometry) -> np.ndarray:
    """Exact pairwise minimum distance between straight segments.

    Vectorized closest-point-between-segments; returns an (Na, Nb) array.
    """
    p = a.segment_starts[:, None, :]
    u = a.segment_vectors[:, None, :]
    q = b.segment_starts[None, :, :]
    v = b.segment_vectors[None, :, :]
    w = p - q
    aa = np.sum(u * u, axis=2)
    bb = np.sum(u * v, axis=2)
    cc = np.sum(v * v, axis=2)
    dd = np.sum(u * w, axis=2)
    ee = np.sum(v * w, axis=2)
    den = aa * cc - bb * bb
    # parallel pairs: pin s=0 and rely on the clamped refinement below
    safe = np.where(den > 1e-14 * aa * cc, den, 1.0)
    s = np.where(den > 1e-14 * aa * cc,
                 np.clip((bb * ee - cc * dd) / safe, 0.0, 1.0), 0.0)
    t = np.clip((bb * s + ee) / cc, 0.0, 1.0)
    s = np.clip((bb * t - dd) / aa, 0.0, 1.0)
    diff = w + s[..., None] * u - t[..., None] * v
    return np.linalg.norm(diff, axis=2)


def _check_no_overlap(a: CoilGeometry, b: CoilGeometry):
    clearance = a.wire.cross_section_radius + b.wire.cross_section_radius
    dmin = float(_segment_min_distances(a, b).min())
    if dmin < clearance:
        raise MagneticsError(
            f"coil wires overlap: minimum segment distance {dmin:.4g} m "
            f"is below the wire clearance {clearance:.4g} m")


def mutual_inductance(a: CoilGeometry, b: CoilGeometry,
                      settings: IntegrationSettings = DEFAULT_SETTINGS) -> float:
    """Mutual inductance in henries between two non-overlapping coils."""
    _check_no_overlap(a, b)
    nodes, weights = settings.unit_rule()
    total = _kernels.pair_sum(
        a.segment_starts, a.segment_vectors,
        b.segment_starts, b.segment_vectors,
        False, nodes, weights, _threshold(settings, a, b))
    return MU0 / (4.0 * np.pi) * total


def partial_self_inductance(length, radius, include_internal=False):
    """Closed-form partial inductance of a straight round-wire segment."""
    l = np.asarray(length, float)
    rho = radius
    hyp = np.sqrt(l * l + rho * rho)
    bracket = l * np.log((l + hyp) / rho) - hyp + rho
    if include_internal:
        bracket = bracket + l / 4.0
    return MU0 / (2.0 * np.pi) * bracket


def self_inductance(a: CoilGeometry,
                    settings: IntegrationSettings = DEFAULT_SETTINGS) -> float:
    """Self-inductance in henries of one segment-discretized coil.

    Cross-segment terms use the Neumann quadrature; the singular i == j
    terms are replaced by the round-wire partial inductance.
    """
    rho = a.wire.cross_section_radius
    lengths = a.segment_lengths
    if float(lengths.min()) < 0.2 * rho:  # 0.1 * wire diameter
        raise MagneticsError(
            "segment shorter than 0.1 wire diameters; the partial-inductance "
            "closed form is unreliable at this discretization")
    nodes, weights = settings.unit_rule()
    total = _kernels.pair_sum(
        a.segment_starts, a.segment_vectors,
        a.segment_starts, a.segment_vectors,
        True, nodes, weights, _threshold(settings, a))
    own = np.sum(partial_self_inductance(
        lengths, rho, settings.include_internal_inductance))
    return MU0 / (4.0 * np.pi) * total + float(own)


def coupling_coefficient(L_primary, L_secondary, mutual) -> float:
    """k = M / sqrt(Lp * Ls)."""
    if L_primary <= 0 or L_secondary <= 0:
        raise MagneticsError("self-inductances must be > 0")
    return mutual / float(np.sqrt(L_primary * L_secondary))


def link_inductances(a: CoilGeometry, b: CoilGeometry,
                     settings: IntegrationSettings = DEFAULT_SETTINGS) -> LinkInductances:
    """Convenience: Lp, Ls, M, k for a transmitter/receiver pair."""
    Lp = self_inductance(a, settings)
    Ls = self_inductance(b, settings)
    M = mutual_inductance(a, b, settings)
    return LinkInductances.from_inductances(Lp, Ls, M)
