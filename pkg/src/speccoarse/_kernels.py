"""Numba-compiled inner loops shared by the fitness and eigensolver code.

Both kernels are written so their floating-point operation order is fixed:
results are bit-identical across runs and across worker-thread counts.
"""

import numpy as np
from numba import njit


@njit(nogil=True, cache=True)
def fitness_range(indptr, indices, weights, inv_deg, eu, ev, out, start, stop):
    """Fill out[start:stop] with the 1-norm fitness of edges (eu[k], ev[k]).

    For each pair the two sorted adjacency rows are merged index by index,
    accumulating |w_u[i]/d_u - w_v[i]/d_v| in ascending index order. Work per
    edge is proportional to the two neighbor counts. Releases the GIL so
    disjoint ranges can run on concurrent threads.
    """
    for k in range(start, stop):
        u = eu[k]
        v = ev[k]
        iu = indptr[u]
        endu = indptr[u + 1]
        iv = indptr[v]
        endv = indptr[v + 1]
        du = inv_deg[u]
        dv = inv_deg[v]
        acc = 0.0
        while iu < endu and iv < endv:
            cu = indices[iu]
            cv = indices[iv]
            if cu < cv:
                acc += abs(weights[iu] * du)
                iu += 1
            elif cv < cu:
                acc += abs(weights[iv] * dv)
                iv += 1
            else:
                acc += abs(weights[iu] * du - weights[iv] * dv)
                iu += 1
                iv += 1
        while iu < endu:
            acc += abs(weights[iu] * du)
            iu += 1
        while iv < endv:
            acc += abs(weights[iv] * dv)
            iv += 1
        out[k] = acc


@njit(cache=True)
def jacobi_sweep(S, UT, accumulate):
    """One cyclic pass of Jacobi rotations over the symmetric matrix S.

    Every strictly-upper pair (p, q) is annihilated once, in row-major
    order. Rows are rotated contiguously and mirrored into the columns,
    which keeps S exactly symmetric. When `accumulate` is true the rotations
    are also applied to UT, which holds the transpose of the accumulated
    orthogonal factor (so UT rows stay contiguous too).
    """
    n = S.shape[0]
    for p in range(n - 1):
        for q in range(p + 1, n):
            spq = S[p, q]
            if spq == 0.0:
                continue
            app = S[p, p]
            aqq = S[q, q]
            tau = (aqq - app) / (2.0 * spq)
            if tau >= 0.0:
                t = 1.0 / (tau + (1.0 + tau * tau) ** 0.5)
            else:
                t = -1.0 / (-tau + (1.0 + tau * tau) ** 0.5)
            c = 1.0 / (1.0 + t * t) ** 0.5
            s = t * c
            for i in range(n):
                rp = S[p, i]
                rq = S[q, i]
                S[p, i] = c * rp - s * rq
                S[q, i] = s * rp + c * rq
            S[p, p] = app - t * spq
            S[q, q] = aqq + t * spq
            S[p, q] = 0.0
            S[q, p] = 0.0
            for i in range(n):
                if i != p and i != q:
                    S[i, p] = S[p, i]
                    S[i, q] = S[q, i]
            if accumulate:
                for i in range(n):
                    up = UT[p, i]
                    uq = UT[q, i]
                    UT[p, i] = c * up - s * uq
                    UT[q, i] = s * up + c * uq
