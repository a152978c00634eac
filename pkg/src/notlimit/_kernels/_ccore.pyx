# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels; see ``_fallback.py`` for semantics."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, cos, sin, fmod, M_PI

cnp.import_array()


cdef inline double _distance(const double complex[:] g, double p, double theta) noexcept nogil:
    cdef double q = 1.0 - p
    cdef double a = sqrt(p)
    cdef double complex w10 = sqrt(q) * a * (cos(theta) + 1j * sin(theta))
    cdef double complex w01 = w10.conjugate()
    cdef double complex r00 = p * g[0] + w01 * g[4] + w10 * g[8] + q * g[12]
    cdef double complex r01 = p * g[1] + w01 * g[5] + w10 * g[9] + q * g[13]
    cdef double complex r11 = p * g[3] + w01 * g[7] + w10 * g[11] + q * g[15]
    cdef double d00 = r00.real - q
    cdef double d11 = r11.real - p
    cdef double complex d01 = r01 - w10
    cdef double rad = d01.real * d01.real + d01.imag * d01.imag - d00 * d11
    if rad > 0.0:
        return sqrt(rad)
    return 0.0


def distance_grid(G, p, theta):
    cdef const double complex[:] g = np.ascontiguousarray(G, dtype=np.complex128).ravel()
    cdef const double[:] ps = np.ascontiguousarray(p, dtype=np.float64)
    cdef const double[:] ts = np.ascontiguousarray(theta, dtype=np.float64)
    cdef Py_ssize_t n_p = ps.shape[0], n_t = ts.shape[0], i, j
    out = np.empty((n_p, n_t), dtype=np.float64)
    cdef double[:, :] o = out
    with nogil:
        for i in range(n_p):
            for j in range(n_t):
                o[i, j] = _distance(g, ps[i], ts[j])
    return out


def distance_point(G, double p, double theta):
    cdef const double complex[:] g = np.ascontiguousarray(G, dtype=np.complex128).ravel()
    return _distance(g, p, theta)


def refine_max(G, double p, double theta, double step_p, double step_theta,
               double tol, int max_iter):
    cdef const double complex[:] g = np.ascontiguousarray(G, dtype=np.complex128).ravel()
    cdef double best = _distance(g, p, theta)
    cdef double cand_p, cand_t, cand_v, tp, tt, v
    cdef double dps[4]
    cdef double dts[4]
    cdef int it = 0, k
    with nogil:
        while it < max_iter and (step_p > tol or step_theta > tol):
            it += 1
            dps[0] = step_p; dps[1] = -step_p; dps[2] = 0.0; dps[3] = 0.0
            dts[0] = 0.0; dts[1] = 0.0; dts[2] = step_theta; dts[3] = -step_theta
            cand_p = p
            cand_t = theta
            cand_v = best
            for k in range(4):
                tp = p + dps[k]
                if tp < 0.0:
                    tp = 0.0
                elif tp > 1.0:
                    tp = 1.0
                tt = theta + dts[k]
                v = _distance(g, tp, tt)
                if v > cand_v:
                    cand_p = tp
                    cand_t = tt
                    cand_v = v
            if cand_v > best:
                p = cand_p
                theta = cand_t
                best = cand_v
            else:
                step_p *= 0.5
                step_theta *= 0.5
    theta = fmod(theta, 2 * M_PI)
    if theta < 0.0:
        theta += 2 * M_PI
    return p, theta, best, it


def tridiag_power_iteration(int l, double offdiag, double shift, int max_iter, double tol):
    x_arr = np.full(l, 1.0 / sqrt(l))
    sx_arr = np.zeros(l)
    cdef double[:] x = x_arr
    cdef double[:] sx = sx_arr
    cdef double mu = 0.0, res, nrm, left, right
    cdef int it = 0, j
    with nogil:
        while it < max_iter:
            it += 1
            mu = 0.0
            for j in range(l):
                left = x[j - 1] if j > 0 else 0.0
                right = x[j + 1] if j < l - 1 else 0.0
                sx[j] = offdiag * (left + right)
                mu += x[j] * sx[j]
            res = 0.0
            for j in range(l):
                res += (sx[j] - mu * x[j]) * (sx[j] - mu * x[j])
            if sqrt(res) < tol:
                break
            nrm = 0.0
            for j in range(l):
                sx[j] = sx[j] + shift * x[j]
                nrm += sx[j] * sx[j]
            nrm = sqrt(nrm)
            for j in range(l):
                x[j] = sx[j] / nrm
    return mu, x_arr, it


def overlap_sums(a):
    cdef const double[:, :] arr = np.ascontiguousarray(a, dtype=np.float64)
    cdef Py_ssize_t rows = arr.shape[0], cols = arr.shape[1], r, n
    out = np.zeros(rows, dtype=np.float64)
    cdef double[:] o = out
    cdef double acc
    with nogil:
        for r in range(rows):
            acc = 0.0
            for n in range(cols - 2):
                acc += arr[r, n + 2] * arr[r, n]
            o[r] = acc
    return out
