"""Pure-NumPy fallback for the segment-pair Neumann kernel."""

from __future__ import annotations

import numpy as np


def pair_sum(starts_a, vecs_a, starts_b, vecs_b, exclude_diagonal,
             nodes, weights, midpoint_distance):
    """Sum over segment pairs of (d_i . d_j) * I_ij.

    I_ij approximates the unit-parameter double integral of 1/|r| along
    the two segments: a single midpoint evaluation when the segment
    centres are farther apart than ``midpoint_distance``, otherwise a
    tensor Gauss-Legendre rule with the given unit-interval nodes/weights.
    ``exclude_diagonal`` skips i == j pairs (self-inductance use).
    """
    starts_a = np.asarray(starts_a, float)
    vecs_a = np.asarray(vecs_a, float)
    starts_b = np.asarray(starts_b, float)
    vecs_b = np.asarray(vecs_b, float)
    nodes = np.asarray(nodes, float)
    weights = np.asarray(weights, float)

    ca = starts_a + 0.5 * vecs_a
    cb = starts_b + 0.5 * vecs_b
    dots = vecs_a @ vecs_b.T
    dist = np.linalg.norm(ca[:, None, :] - cb[None, :, :], axis=2)

    far = dist > midpoint_distance
    near = ~far
    if exclude_diagonal:
        np.fill_diagonal(far, False)
        np.fill_diagonal(near, False)

    total = float(np.sum(dots[far] / dist[far]))

    ii, jj = np.nonzero(near)
    if ii.size:
        pa = starts_a[ii][:, None, :] + nodes[None, :, None] * vecs_a[ii][:, None, :]
        pb = starts_b[jj][:, None, :] + nodes[None, :, None] * vecs_b[jj][:, None, :]
        rr = np.linalg.norm(pa[:, :, None, :] - pb[:, None, :, :], axis=3)
        quad = np.einsum("i,j,pij->p", weights, weights, 1.0 / rr)
        total += float(np.sum(dots[ii, jj] * quad))
    return total
