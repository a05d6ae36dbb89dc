# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled segment-pair Neumann kernel (hot loop of inductance extraction)."""

from libc.math cimport sqrt

import numpy as np


def pair_sum(starts_a, vecs_a, starts_b, vecs_b, bint exclude_diagonal,
             nodes, weights, double midpoint_distance):
    """See riptsim._kernels.numpy_backend.pair_sum for the contract."""
    cdef double[:, ::1] sa = np.ascontiguousarray(starts_a, dtype=np.float64)
    cdef double[:, ::1] va = np.ascontiguousarray(vecs_a, dtype=np.float64)
    cdef double[:, ::1] sb = np.ascontiguousarray(starts_b, dtype=np.float64)
    cdef double[:, ::1] vb = np.ascontiguousarray(vecs_b, dtype=np.float64)
    cdef double[::1] gx = np.ascontiguousarray(nodes, dtype=np.float64)
    cdef double[::1] gw = np.ascontiguousarray(weights, dtype=np.float64)

    cdef Py_ssize_t na = sa.shape[0], nb = sb.shape[0], nq = gx.shape[0]
    cdef Py_ssize_t i, j, p, q
    cdef double cax, cay, caz, cbx, cby, cbz, dx, dy, dz
    cdef double dot, dist, contrib, quad
    cdef double pax, pay, paz, rx, ry, rz
    cdef double total = 0.0, comp = 0.0, y, t

    with nogil:
        for i in range(na):
            cax = sa[i, 0] + 0.5 * va[i, 0]
            cay = sa[i, 1] + 0.5 * va[i, 1]
            caz = sa[i, 2] + 0.5 * va[i, 2]
            for j in range(nb):
                if exclude_diagonal and i == j:
                    continue
                cbx = sb[j, 0] + 0.5 * vb[j, 0]
                cby = sb[j, 1] + 0.5 * vb[j, 1]
                cbz = sb[j, 2] + 0.5 * vb[j, 2]
                dx = cax - cbx
                dy = cay - cby
                dz = caz - cbz
                dist = sqrt(dx * dx + dy * dy + dz * dz)
                dot = (va[i, 0] * vb[j, 0] + va[i, 1] * vb[j, 1]
                       + va[i, 2] * vb[j, 2])
                if dist > midpoint_distance:
                    contrib = dot / dist
                else:
                    quad = 0.0
                    for p in range(nq):
                        pax = sa[i, 0] + gx[p] * va[i, 0]
                        pay = sa[i, 1] + gx[p] * va[i, 1]
                        paz = sa[i, 2] + gx[p] * va[i, 2]
                        for q in range(nq):
                            rx = pax - (sb[j, 0] + gx[q] * vb[j, 0])
                            ry = pay - (sb[j, 1] + gx[q] * vb[j, 1])
                            rz = paz - (sb[j, 2] + gx[q] * vb[j, 2])
                            quad += gw[p] * gw[q] / sqrt(
                                rx * rx + ry * ry + rz * rz)
                    contrib = dot * quad
                # Kahan-compensated accumulation keeps reduction noise
                # below the 1e-12 relative determinism budget
                y = contrib - comp
                t = total + y
                comp = (t - total) - y
                total = t
    return total
