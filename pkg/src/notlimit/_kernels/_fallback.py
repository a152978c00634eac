"""Pure-Python/numpy versions of the hot kernels.

Every function here has a twin of the same signature in ``_ccore.pyx``.
``G`` is always the flattened response tensor of length 16 with
``G[((i*2 + k)*2 + j)*2 + l] = <A^k_l | A^i_j>``.
"""

import math

import numpy as np


def distance_grid(G, p, theta):
    """Output trace distance to the ideal NOT on the grid ``p x theta``."""
    G = np.asarray(G, dtype=complex).reshape(2, 2, 2, 2)
    p = np.asarray(p, dtype=float)[:, None]
    theta = np.asarray(theta, dtype=float)[None, :]
    a = np.sqrt(p)
    b = np.sqrt(1.0 - p) * np.exp(1j * theta)
    w10 = b * a
    w01 = np.conj(w10)

    def rho(j, l):
        return p * G[0, 0, j, l] + w01 * G[0, 1, j, l] + w10 * G[1, 0, j, l] + (1.0 - p) * G[1, 1, j, l]

    d00 = rho(0, 0).real - (1.0 - p)
    d11 = rho(1, 1).real - p
    d01 = rho(0, 1) - w10
    rad = np.abs(d01) ** 2 - d00 * d11
    return np.sqrt(np.maximum(rad, 0.0))


def distance_point(G, p, theta):
    """Scalar version of :func:`distance_grid`."""
    g = [complex(x) for x in np.asarray(G).ravel()]
    a = math.sqrt(p)
    q = 1.0 - p
    w10 = math.sqrt(q) * a * complex(math.cos(theta), math.sin(theta))
    w01 = w10.conjugate()
    r00 = p * g[0] + w01 * g[4] + w10 * g[8] + q * g[12]
    r01 = p * g[1] + w01 * g[5] + w10 * g[9] + q * g[13]
    r11 = p * g[3] + w01 * g[7] + w10 * g[11] + q * g[15]
    d00 = r00.real - q
    d11 = r11.real - p
    d01 = r01 - w10
    rad = d01.real * d01.real + d01.imag * d01.imag - d00 * d11
    return math.sqrt(rad) if rad > 0.0 else 0.0


def refine_max(G, p, theta, step_p, step_theta, tol, max_iter):
    """Compass search for a local maximum of the distance in ``(p, theta)``.

    Each iteration probes ``p +- step_p`` and ``theta +- step_theta`` and
    moves to the best improving probe; steps halve when nothing improves.
    Stops once both steps fall below ``tol`` or after ``max_iter`` iterations.

    Returns ``(p, theta, value, iterations)``.
    """
    g = np.asarray(G, dtype=complex).ravel()
    best = distance_point(g, p, theta)
    it = 0
    while it < max_iter and (step_p > tol or step_theta > tol):
        it += 1
        cand_p, cand_t, cand_v = p, theta, best
        for dp, dt in ((step_p, 0.0), (-step_p, 0.0), (0.0, step_theta), (0.0, -step_theta)):
            tp = min(1.0, max(0.0, p + dp))
            tt = theta + dt
            v = distance_point(g, tp, tt)
            if v > cand_v:
                cand_p, cand_t, cand_v = tp, tt, v
        if cand_v > best:
            p, theta, best = cand_p, cand_t, cand_v
        else:
            step_p *= 0.5
            step_theta *= 0.5
    return float(p), float(theta) % (2 * math.pi), float(best), it


def tridiag_power_iteration(l, offdiag, shift, max_iter, tol):
    """Power iteration on ``S + shift*I`` with ``S`` tridiagonal, zero diagonal.

    Starts from the all-ones vector. Convergence is declared when the
    residual ``||S x - mu x||`` of the Rayleigh quotient ``mu`` of ``S``
    drops below ``tol``.

    Returns ``(mu, x, iterations)`` with ``x`` unit-norm.
    """
    x = np.full(l, 1.0 / math.sqrt(l))
    mu = 0.0
    it = 0
    sx = np.zeros(l)
    for it in range(1, max_iter + 1):
        sx[:] = 0.0
        sx[1:] += offdiag * x[:-1]
        sx[:-1] += offdiag * x[1:]
        mu = float(x @ sx)
        if np.linalg.norm(sx - mu * x) < tol:
            break
        y = sx + shift * x
        x = y / np.linalg.norm(y)
    return mu, x, it


def overlap_sums(a):
    """Row-wise ``sum_n a[r, n+2] * a[r, n]`` of a 2-d float array."""
    a = np.asarray(a, dtype=float)
    if a.shape[1] < 3:
        return np.zeros(a.shape[0])
    return np.einsum("rn,rn->r", a[:, 2:], a[:, :-2])
