"""Independent reference computations used as test oracles.

Everything here goes through dense matrices and generic numpy linear
algebra, never through the package's own structured paths.
"""

import math

import numpy as np

X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.diag([1.0, -1.0]).astype(complex)


def kron_all(*ops):
    out = np.ones((1, 1), dtype=complex)
    for op in ops:
        out = np.kron(out, op)
    return out


def total_z(N):
    """``Z_S + sum_i Z_{A_i}`` built from Kronecker products.

    Ancilla qubit ``A_{i+1}`` is bit ``i`` of the ancilla index, i.e. the
    ``i``-th factor counted from the right.
    """
    I2 = np.eye(2)
    ops = [kron_all(Z, *([I2] * N))]
    for i in range(N):
        factors = [I2] + [I2] * N
        factors[N - i] = Z
        ops.append(kron_all(*factors))
    return sum(ops)


def commutator_max(U, N):
    Zt = total_z(N)
    return float(np.max(np.abs(U @ Zt - Zt @ U)))


def dense_channel(U, rho_A, psi, N):
    """``Tr_A[U (|psi><psi| (x) rho_A) U^dag]`` by explicit reshaping."""
    rho_A = np.asarray(rho_A, dtype=complex)
    if rho_A.ndim == 1:
        rho_A = np.outer(rho_A, rho_A.conj())
    joint = np.kron(np.outer(psi, np.conj(psi)), rho_A)
    out = U @ joint @ U.conj().T
    d = 2**N
    return np.einsum("iaja->ij", out.reshape(2, d, 2, d))


def trace_distance_eig(rho, sigma):
    return 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(rho - sigma))))


def not_output(psi):
    v = np.asarray(psi, dtype=complex)[::-1]
    return np.outer(v, v.conj())


def random_qubit_density(rng, pure=None):
    if pure is None:
        pure = rng.random() < 0.3
    if pure:
        v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        v /= np.linalg.norm(v)
        return np.outer(v, v.conj())
    G = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    rho = G @ G.conj().T
    return rho / np.trace(rho)


def random_qubit_vector(rng):
    v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    return v / np.linalg.norm(v)


def half_one_minus_cos(d):
    return 0.5 * (1 - math.cos(2 * math.pi / d))
