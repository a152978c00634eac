"""Explicit implementations: the optimal classically complete chain, the uniform
ancilla, and purification of mixed-ancilla implementations."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channels import ComponentDecomposition, Implementation, trace_distance_qubit
from .conservation import (
    AncillaCoefficients,
    BlockUnitary,
    PermutationUnitary,
    _rng,
    haar_unitary,
    random_conservative,
)
from .errors import CapacityError, DomainError, ShapeError, ValidationError
from .hilbert import PureQubitState
from .policy import POLICY
from .spectral import max_overlap_sum

__all__ = [
    "ChainImplementation",
    "PurificationPlan",
    "canonical_index",
    "evaluate_chain",
    "is_classically_complete",
    "optimal_ancilla",
    "optimal_unitary",
    "purify",
    "random_mixed_implementation",
    "uniform_ancilla",
]


def canonical_index(n: int) -> int:
    """Basis index of the canonical representative of sector ``n`` (n low bits set)."""
    return 2**n - 1


@dataclass(frozen=True)
class ChainImplementation:
    """Chain permutation ``|0>|e_n> <-> |1>|e_{n-1}>`` (n = 1..N) with ancilla ``sum_n c_n |e_n>``.

    ``|e_n>`` is the canonical representative of sector ``n``; every other
    basis vector is left fixed. The span of ``|s>|e_n>`` is invariant, so
    the sparse path works with ``2(N+1)`` amplitudes for any ``N``.
    """

    N: int
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float)
        object.__setattr__(self, "coeffs", c)
        if c.shape != (self.N + 1,):
            raise ShapeError(f"expected {self.N + 1} coefficients, got {c.shape}")
        if abs(np.sum(c**2) - 1) > POLICY.structural:
            raise ValidationError("chain coefficients are not normalized")
        if c[0] != 0.0 or c[-1] != 0.0:
            raise ValidationError("chain coefficients must vanish at both endpoints")

    def _step(self, c: np.ndarray) -> np.ndarray:
        out = np.empty_like(c)
        out[1, :-1] = c[0, 1:]
        out[0, 0] = c[0, 0]
        out[0, 1:] = c[1, :-1]
        out[1, -1] = c[1, -1]
        return out

    def _evolved(self, state_vec: np.ndarray) -> np.ndarray:
        return self._step(np.outer(state_vec, self.coeffs).astype(complex))

    def apply(self, state: PureQubitState) -> np.ndarray:
        out = self._evolved(state.vector)
        return out @ out.conj().T

    def components(self) -> ComponentDecomposition:
        """Components in chain coordinates (entry ``n`` is the ``|e_n>`` amplitude)."""
        zero = self._evolved(np.array([1.0, 0.0]))
        one = self._evolved(np.array([0.0, 1.0]))
        return ComponentDecomposition(zero[0], zero[1], one[0], one[1])

    def permutation(self) -> np.ndarray:
        if self.N > POLICY.dense_limit:
            raise CapacityError(f"N={self.N} exceeds dense limit {POLICY.dense_limit}")
        dim = 2**self.N
        perm = np.arange(2 * dim)
        for n in range(1, self.N + 1):
            i0 = canonical_index(n)
            i1 = dim + canonical_index(n - 1)
            perm[i0], perm[i1] = i1, i0
        return perm

    def unitary(self) -> PermutationUnitary:
        return PermutationUnitary(self.N, self.permutation())

    def ancilla_state(self) -> np.ndarray:
        return AncillaCoefficients(self.N, self.coeffs).to_state()

    def dense_implementation(self) -> Implementation:
        return Implementation(self.N, self.unitary(), self.ancilla_state())


def evaluate_chain(impl: ChainImplementation, state: PureQubitState) -> np.ndarray:
    return impl.apply(state)


def optimal_ancilla(N: int) -> AncillaCoefficients:
    """Ancilla amplitudes of the optimal classically complete implementation.

    Weight sits on odd subscripts ``1, 3, ...`` as the normalized top
    eigenvector of the matching ``S_l``; the overlap sum then equals
    ``cos(2 pi / (N + 2))`` for even ``N`` and ``cos(2 pi / (N + 1))`` for odd.
    """
    if N < 2:
        raise DomainError(f"need N >= 2, got {N}")
    _, coeffs = max_overlap_sum(N, classically_complete=True)
    return AncillaCoefficients(N, coeffs)


def optimal_unitary(N: int) -> ChainImplementation:
    return ChainImplementation(N, optimal_ancilla(N).a)


def uniform_ancilla(N: int) -> AncillaCoefficients:
    """Equal amplitude ``1/sqrt(N+1)`` on every sector's canonical representative."""
    if N < 1:
        raise DomainError(f"need N >= 1, got {N}")
    return AncillaCoefficients(N, np.full(N + 1, 1.0 / math.sqrt(N + 1)))


@dataclass(frozen=True)
class PurificationPlan:
    """Data of ``|A'> = sum_j sqrt(p_j) |phi_j> (x) |xi_j>`` on ``N + ceil(log2 R)`` qubits.

    The extension kets ``xi_j`` are computational basis states of the extra
    qubits, assigned in order of descending weight.
    """

    N: int
    rank: int
    weights: np.ndarray
    eigvecs: np.ndarray
    ext_kets: np.ndarray
    extended_state: np.ndarray

    @property
    def extra_qubits(self) -> int:
        return math.ceil(math.log2(self.rank)) if self.rank > 1 else 0

    @property
    def N_extended(self) -> int:
        return self.N + self.extra_qubits

    def reduced_ancilla(self) -> np.ndarray:
        """Partial trace of ``|A'><A'|`` over the extension qubits."""
        m = self.extended_state.reshape(2**self.N, 2**self.extra_qubits)
        return m @ m.conj().T


def purify(impl: Implementation) -> tuple[Implementation, PurificationPlan]:
    """Pure-ancilla implementation realizing the same channel."""
    weights, vecs = impl.spectrum()
    R = len(weights)
    k = math.ceil(math.log2(R)) if R > 1 else 0
    ext = np.eye(2**k)[:R]
    state = sum(math.sqrt(w) * np.kron(v, xi) for w, v, xi in zip(weights, vecs.T, ext))
    state = np.asarray(state, dtype=complex)
    plan = PurificationPlan(impl.N, R, weights, vecs, ext, state)

    U = impl.U
    if isinstance(U, PermutationUnitary):
        U = U.to_block_unitary()
    if isinstance(U, BlockUnitary):
        U2 = U.extend(k)
    elif isinstance(U, np.ndarray):
        U2 = np.kron(U, np.eye(2**k))
    else:
        raise ShapeError(f"cannot extend operator of type {type(U).__name__}")
    return Implementation(impl.N + k, U2, state), plan


def random_mixed_implementation(N: int, rank: int, seed) -> Implementation:
    """Haar-random conservative U with a random rank-``rank`` ancilla density."""
    if not 1 <= rank <= 2**N:
        raise DomainError(f"rank must lie in [1, 2**{N}], got {rank}")
    rng = _rng(seed)
    U = random_conservative(N, rng)
    basis = haar_unitary(2**N, rng)[:, :rank]
    p = rng.dirichlet(np.ones(rank))
    rho = (basis * p[None, :]) @ basis.conj().T
    return Implementation(N, U, rho)


def is_classically_complete(impl, tol: float = POLICY.validation) -> bool:
    """True iff ``|0> -> |1><1|`` and ``|1> -> |0><0|`` within trace distance ``tol``."""
    zero, one = PureQubitState.zero(), PureQubitState.one()
    return (
        trace_distance_qubit(impl.apply(zero), one.density) <= tol
        and trace_distance_qubit(impl.apply(one), zero.density) <= tol
    )
