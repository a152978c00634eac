"""Dense linear algebra on the system-plus-ancilla space.

Index convention: a joint basis index is ``s * 2**N + a`` where ``s`` is the
system bit and ``a`` the ancilla bitstring read as an integer. Bit ``i`` of
``a`` is ancilla qubit ``i + 1`` and a set bit means Z eigenvalue -1, so the
Hamming weight of ``a`` is the ancilla sector label ``n`` (Z_A = N - 2n).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, ShapeError, ValidationError
from .policy import POLICY

__all__ = [
    "PureQubitState",
    "SectorBasis",
    "check_density",
    "hamming_sectors",
    "hermitian_2x2_eigvals",
    "partial_trace_ancilla",
    "popcount",
    "tensor",
    "total_z_diagonal",
]


@dataclass(frozen=True)
class PureQubitState:
    """System input ``alpha|0> + beta|1>`` with ``alpha = sqrt(p)`` real.

    ``p`` is the weight on ``|0>`` and ``theta`` the relative phase, so that
    ``conj(alpha) * beta = sqrt(p (1 - p)) * exp(i theta)``.
    """

    p: float
    theta: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValidationError(f"p must lie in [0, 1], got {self.p}")
        object.__setattr__(self, "theta", float(self.theta) % (2 * math.pi))

    @property
    def alpha(self) -> complex:
        return complex(math.sqrt(self.p))

    @property
    def beta(self) -> complex:
        return math.sqrt(1.0 - self.p) * cmath.exp(1j * self.theta)

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.alpha, self.beta], dtype=complex)

    @property
    def density(self) -> np.ndarray:
        v = self.vector
        return np.outer(v, v.conj())

    @classmethod
    def zero(cls) -> "PureQubitState":
        return cls(1.0, 0.0)

    @classmethod
    def one(cls) -> "PureQubitState":
        return cls(0.0, 0.0)

    @classmethod
    def plus(cls) -> "PureQubitState":
        return cls(0.5, 0.0)

    @classmethod
    def minus(cls) -> "PureQubitState":
        return cls(0.5, math.pi)

    @classmethod
    def plus_i(cls) -> "PureQubitState":
        return cls(0.5, math.pi / 2)

    @classmethod
    def minus_i(cls) -> "PureQubitState":
        return cls(0.5, 3 * math.pi / 2)

    @classmethod
    def tomographic(cls) -> tuple["PureQubitState", ...]:
        """The six Pauli eigenstates |0>, |1>, |+>, |->, |+i>, |-i>."""
        return (cls.zero(), cls.one(), cls.plus(), cls.minus(), cls.plus_i(), cls.minus_i())


def _check_dense(dim: int) -> None:
    limit = 2 ** (POLICY.dense_limit + 1)
    if dim > limit:
        raise CapacityError(f"dense dimension {dim} exceeds limit {limit}")


def tensor(v: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Kronecker product of two state vectors, first factor most significant."""
    v = np.asarray(v)
    w = np.asarray(w)
    if v.ndim != 1 or w.ndim != 1:
        raise ShapeError("tensor expects 1-d state vectors")
    if not (np.all(np.isfinite(v)) and np.all(np.isfinite(w))):
        raise ValidationError("tensor inputs must be finite")
    _check_dense(v.size * w.size)
    return np.kron(v, w)


def partial_trace_ancilla(joint: np.ndarray, N: int) -> np.ndarray:
    """Reduced 2x2 density matrix of the system qubit.

    ``rho[s, s'] = sum_a c[s, a] conj(c[s', a])`` with ``c`` the joint
    amplitudes reshaped to ``(2, 2**N)``.
    """
    joint = np.asarray(joint, dtype=complex)
    if joint.ndim != 1 or joint.size != 2 ** (N + 1):
        raise ShapeError(f"expected a vector of length 2**{N + 1}, got shape {joint.shape}")
    c = joint.reshape(2, -1)
    return c @ c.conj().T


def popcount(indices) -> np.ndarray:
    """Number of set bits of each non-negative integer in ``indices``."""
    x = np.asarray(indices, dtype=np.int64).copy()
    count = np.zeros_like(x)
    while np.any(x):
        count += x & 1
        x >>= 1
    return count


@dataclass(frozen=True)
class SectorBasis:
    """Hamming-weight decomposition of the N-qubit ancilla space.

    ``sector_of[a]`` is the sector of basis index ``a``; ``indices_of[n]`` the
    ascending basis indices in sector ``n``; ``dims[n] = binomial(N, n)``.
    Sector ``n`` is the Z_A eigenspace with eigenvalue ``N - 2n``.
    """

    N: int
    sector_of: np.ndarray
    indices_of: tuple[np.ndarray, ...]
    dims: tuple[int, ...]

    def eigenvalue(self, n: int) -> int:
        return self.N - 2 * n

    def project(self, vec: np.ndarray, n: int) -> np.ndarray:
        """Component of an ancilla vector inside sector ``n`` (full length)."""
        out = np.zeros_like(vec)
        idx = self.indices_of[n]
        out[idx] = vec[idx]
        return out


def hamming_sectors(N: int) -> SectorBasis:
    if N < 1:
        raise ShapeError(f"need at least one ancilla qubit, got N={N}")
    _check_dense(2**N)
    sector_of = popcount(np.arange(2**N))
    indices_of = tuple(np.flatnonzero(sector_of == n) for n in range(N + 1))
    dims = tuple(math.comb(N, n) for n in range(N + 1))
    return SectorBasis(N, sector_of, indices_of, dims)


def total_z_diagonal(N: int) -> np.ndarray:
    """Diagonal of ``Z_S + sum_i Z_{A_i}`` on the joint space."""
    _check_dense(2 ** (N + 1))
    a = np.arange(2**N)
    z_a = N - 2 * popcount(a)
    return np.concatenate([1 + z_a, -1 + z_a]).astype(float)


def hermitian_2x2_eigvals(M: np.ndarray) -> tuple[float, float]:
    """Eigenvalues of a 2x2 Hermitian matrix by the quadratic formula, descending."""
    M = np.asarray(M, dtype=complex)
    if M.shape != (2, 2):
        raise ShapeError(f"expected a 2x2 matrix, got {M.shape}")
    if np.max(np.abs(M - M.conj().T)) > POLICY.validation:
        raise ValidationError("matrix is not Hermitian")
    a = M[0, 0].real
    d = M[1, 1].real
    half_gap = math.sqrt(((a - d) / 2) ** 2 + abs(M[0, 1]) ** 2)
    mid = (a + d) / 2
    return mid + half_gap, mid - half_gap


def check_density(rho: np.ndarray, tol: float = POLICY.structural) -> np.ndarray:
    """Validate a 2x2 density matrix and return it as a complex array."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise ShapeError(f"expected a 2x2 density matrix, got {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > tol:
        raise ValidationError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1) > tol:
        raise ValidationError(f"density matrix trace {np.trace(rho).real} != 1")
    if hermitian_2x2_eigvals(rho)[1] < -tol:
        raise ValidationError("density matrix has a negative eigenvalue")
    return rho
