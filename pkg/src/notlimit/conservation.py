"""Conserved total-Z structure: block unitaries, sampling, and ancilla bounds.

The joint eigenspace of ``Z = Z_S + Z_A`` with eigenvalue ``N + 1 - 2n``
(``n = 0 .. N+1``) is spanned by ``|0> (x) sector n`` followed by
``|1> (x) sector n-1``; a conservative unitary is one unitary block per
eigenspace in that basis order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .channels import ComponentDecomposition, evolve
from .errors import CapacityError, ShapeError, ValidationError
from .hilbert import SectorBasis, hamming_sectors, total_z_diagonal
from .policy import POLICY

__all__ = [
    "AncillaCoefficients",
    "BlockUnitary",
    "PermutationUnitary",
    "ancilla_sector_coefficients",
    "assemble_conservative",
    "block_dims",
    "block_indices",
    "commutator_norm",
    "component_bound",
    "extract_components",
    "fixed_ancilla_bound",
    "haar_unitary",
    "overlap_bound",
    "overlap_from_sectors",
    "random_conservative",
    "random_pure_state",
]


def block_dims(N: int) -> list[int]:
    """Dimensions ``d_n + d_{n-1}`` of the joint Z eigenspaces, ``n = 0 .. N+1``."""
    d = [math.comb(N, n) for n in range(N + 1)]
    return [(d[n] if n <= N else 0) + (d[n - 1] if n >= 1 else 0) for n in range(N + 2)]


@lru_cache(maxsize=32)
def block_indices(N: int) -> tuple[np.ndarray, ...]:
    """Joint basis indices spanning each eigenspace, in canonical block order."""
    sectors = hamming_sectors(N)
    dim = 2**N
    out = []
    for n in range(N + 2):
        s0 = sectors.indices_of[n] if n <= N else np.empty(0, dtype=np.int64)
        s1 = sectors.indices_of[n - 1] + dim if n >= 1 else np.empty(0, dtype=np.int64)
        idx = np.concatenate([s0, s1]).astype(np.int64)
        idx.flags.writeable = False
        out.append(idx)
    return tuple(out)


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


@dataclass(frozen=True)
class BlockUnitary:
    """Conservative evolution stored as one unitary per total-Z eigenspace."""

    N: int
    blocks: tuple[np.ndarray, ...]

    def indices(self) -> tuple[np.ndarray, ...]:
        return block_indices(self.N)

    def apply(self, vec: np.ndarray) -> np.ndarray:
        vec = np.asarray(vec, dtype=complex)
        out = np.zeros_like(vec)
        for idx, B in zip(self.indices(), self.blocks):
            if len(idx):
                out[idx] = B @ vec[idx]
        return out

    def to_dense(self) -> np.ndarray:
        if self.N > POLICY.dense_limit - 2:
            raise CapacityError(f"dense operator expansion limited to N <= {POLICY.dense_limit - 2}")
        dim = 2 ** (self.N + 1)
        U = np.zeros((dim, dim), dtype=complex)
        for idx, B in zip(self.indices(), self.blocks):
            U[np.ix_(idx, idx)] = B
        return U

    @classmethod
    def from_dense(cls, U: np.ndarray, N: int, tol: float = POLICY.structural) -> "BlockUnitary":
        """Split a dense conservative unitary into blocks; rejects non-conservative input."""
        U = np.asarray(U, dtype=complex)
        if commutator_norm(U, N) > tol:
            raise ValidationError("operator does not commute with the total Z")
        return assemble_conservative(N, [U[np.ix_(idx, idx)] for idx in block_indices(N)])

    def extend(self, k: int) -> "BlockUnitary":
        """``U (x) I`` on ``k`` extra ancilla qubits appended as least-significant bits."""
        if k == 0:
            return self
        N2 = self.N + k
        old_idx = self.indices()
        lookup_block = np.empty(2 ** (self.N + 1), dtype=np.int64)
        lookup_pos = np.empty(2 ** (self.N + 1), dtype=np.int64)
        for b, idx in enumerate(old_idx):
            lookup_block[idx] = b
            lookup_pos[idx] = np.arange(len(idx))
        blocks = []
        for idx in block_indices(N2):
            s = idx >> N2
            rest = idx & (2**N2 - 1)
            old = s * 2**self.N + (rest >> k)
            ext = rest & (2**k - 1)
            b = lookup_block[old]
            pos = lookup_pos[old]
            M = np.zeros((len(idx), len(idx)), dtype=complex)
            for blk in np.unique(b):
                for e in np.unique(ext[b == blk]):
                    sel = np.flatnonzero((b == blk) & (ext == e))
                    M[np.ix_(sel, sel)] = self.blocks[blk][np.ix_(pos[sel], pos[sel])]
            blocks.append(M)
        return assemble_conservative(N2, blocks)


@dataclass(frozen=True)
class PermutationUnitary:
    """Joint operator sending basis vector ``i`` to basis vector ``perm[i]``."""

    N: int
    perm: np.ndarray

    def apply(self, vec: np.ndarray) -> np.ndarray:
        vec = np.asarray(vec, dtype=complex)
        out = np.empty_like(vec)
        out[self.perm] = vec
        return out

    def to_dense(self) -> np.ndarray:
        dim = len(self.perm)
        U = np.zeros((dim, dim), dtype=complex)
        U[self.perm, np.arange(dim)] = 1.0
        return U

    def to_block_unitary(self) -> BlockUnitary:
        blocks = []
        for idx in block_indices(self.N):
            pos = {int(v): r for r, v in enumerate(idx)}
            M = np.zeros((len(idx), len(idx)), dtype=complex)
            for c, v in enumerate(idx):
                r = pos.get(int(self.perm[v]))
                if r is None:
                    raise ValidationError("permutation leaves a total-Z eigenspace")
                M[r, c] = 1.0
            blocks.append(M)
        return assemble_conservative(self.N, blocks)


def assemble_conservative(N: int, blocks) -> BlockUnitary:
    dims = block_dims(N)
    blocks = [np.asarray(B, dtype=complex) for B in blocks]
    if len(blocks) != N + 2:
        raise ShapeError(f"expected {N + 2} blocks, got {len(blocks)}")
    for n, (B, d) in enumerate(zip(blocks, dims)):
        if B.shape != (d, d):
            raise ShapeError(f"block {n} has shape {B.shape}, expected {(d, d)}")
        if np.max(np.abs(B.conj().T @ B - np.eye(d))) > POLICY.validation:
            raise ValidationError(f"block {n} is not unitary")
    return BlockUnitary(N, tuple(blocks))


def commutator_norm(U, N: int) -> float:
    """Largest entry magnitude of ``U Z - Z U`` with ``Z`` the total Z.

    ``(UZ - ZU)[i, j] = U[i, j] (z_j - z_i)``, evaluated on stored entries
    only; entries outside the blocks of a :class:`BlockUnitary` are zero.
    """
    if isinstance(U, BlockUnitary):
        z = total_z_diagonal(N)
        worst = 0.0
        for idx, B in zip(U.indices(), U.blocks):
            if len(idx):
                dz = z[idx][None, :] - z[idx][:, None]
                worst = max(worst, float(np.max(np.abs(B * dz))))
        return worst
    if isinstance(U, PermutationUnitary):
        z = total_z_diagonal(N)
        return float(np.max(np.abs(z - z[U.perm])))
    U = np.asarray(U)
    if U.shape != (2 ** (N + 1),) * 2:
        raise ShapeError(f"operator shape {U.shape} does not match N={N}")
    z = total_z_diagonal(N)
    return float(np.max(np.abs(U * (z[None, :] - z[:, None]))))


def haar_unitary(d: int, rng) -> np.ndarray:
    """Haar-random ``d x d`` unitary: QR of a complex Ginibre matrix, R-phases fixed."""
    rng = _rng(rng)
    Z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / math.sqrt(2)
    Q, R = np.linalg.qr(Z)
    ph = np.diagonal(R) / np.abs(np.diagonal(R))
    return Q * ph[None, :]


def random_conservative(N: int, seed) -> BlockUnitary:
    """Blockwise Haar-random conservative unitary; deterministic for an integer seed."""
    if N > POLICY.dense_limit:
        raise CapacityError(f"N={N} exceeds dense limit {POLICY.dense_limit}")
    rng = _rng(seed)
    return assemble_conservative(N, [haar_unitary(d, rng) for d in block_dims(N)])


def random_pure_state(dim: int, seed) -> np.ndarray:
    """Uniformly random unit vector in ``C^dim``."""
    rng = _rng(seed)
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def extract_components(U, A: np.ndarray, N: int | None = None) -> ComponentDecomposition:
    A = np.asarray(A, dtype=complex)
    dim = A.size
    if N is None:
        N = int(round(math.log2(dim)))
    if dim != 2**N:
        raise ShapeError(f"ancilla length {dim} is not 2**{N}")
    if abs(np.vdot(A, A).real - 1) > POLICY.validation:
        raise ValidationError("ancilla state is not normalized")
    parts = []
    for i in range(2):
        joint = np.zeros(2 * dim, dtype=complex)
        joint[i * dim : (i + 1) * dim] = A
        out = evolve(U, joint)
        parts.append((out[:dim], out[dim:]))
    return ComponentDecomposition(parts[0][0], parts[0][1], parts[1][0], parts[1][1])


@dataclass(frozen=True)
class AncillaCoefficients:
    """Sector amplitudes ``a_n`` of ``|A> = sum_n a_n |phi_n>``.

    ``a`` holds the non-negative amplitudes (phases live in the
    representatives). ``reps`` maps ``n`` to the unit representative
    ``|phi_n>`` for each non-zero ``a_n``; ``None`` means the canonical
    representatives, the lowest-index basis vector of each sector.
    """

    N: int
    a: np.ndarray
    reps: dict[int, np.ndarray] | None = None

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float)
        object.__setattr__(self, "a", a)
        if a.shape != (self.N + 1,):
            raise ShapeError(f"expected {self.N + 1} amplitudes, got {a.shape}")
        if abs(np.sum(a**2) - 1) > POLICY.structural:
            raise ValidationError("sector amplitudes are not normalized")

    def representative(self, n: int) -> np.ndarray:
        if self.reps is not None:
            return self.reps[n]
        v = np.zeros(2**self.N, dtype=complex)
        v[2**n - 1] = 1.0
        return v

    def to_state(self) -> np.ndarray:
        """Dense ancilla vector ``sum_n a_n |phi_n>``."""
        if self.N > POLICY.dense_limit:
            raise CapacityError(f"N={self.N} exceeds dense limit")
        out = np.zeros(2**self.N, dtype=complex)
        for n, an in enumerate(self.a):
            if an != 0.0:
                out += an * self.representative(n)
        return out


def ancilla_sector_coefficients(A: np.ndarray, sectors: SectorBasis | None = None) -> AncillaCoefficients:
    A = np.asarray(A, dtype=complex)
    if sectors is None:
        sectors = hamming_sectors(int(round(math.log2(A.size))))
    if A.size != 2**sectors.N:
        raise ShapeError("ancilla length does not match the sector basis")
    a = np.zeros(sectors.N + 1)
    reps = {}
    for n in range(sectors.N + 1):
        proj = sectors.project(A, n)
        a[n] = np.linalg.norm(proj)
        if a[n] > POLICY.structural:
            reps[n] = proj / a[n]
        else:
            a[n] = 0.0
    a /= np.linalg.norm(a)
    return AncillaCoefficients(sectors.N, a, reps)


def overlap_bound(coeffs: AncillaCoefficients) -> float:
    """``sum_{n=0}^{N-2} |a_{n+2}| |a_n|``, an upper bound on ``|<A^0_1|A^1_0>|``."""
    a = np.abs(coeffs.a)
    return float(np.dot(a[2:], a[:-2]))


def fixed_ancilla_bound(coeffs: AncillaCoefficients) -> float:
    """Lower bound on the gate trace distance of any conservative U with this ancilla."""
    return 0.5 * (1.0 - overlap_bound(coeffs))


def component_bound(comp: ComponentDecomposition) -> float:
    """``|1 - <A^0_1|A^1_0>| / 2``, attained or beaten at :func:`analytic_witness`."""
    return 0.5 * abs(1 - comp.overlap)


def overlap_from_sectors(U, coeffs: AncillaCoefficients) -> complex:
    """``<A^0_1|A^1_0>`` rebuilt sector by sector.

    ``sum_n conj(a_{n+2}) a_n <X_{n+2} | Y_n>`` where ``X_m`` is the ``|1>``
    part of ``U(|0> (x) |phi_m>)`` and ``Y_m`` the ``|0>`` part of
    ``U(|1> (x) |phi_m>)``. Only the ``n -> n+2`` sector pairs contribute.
    """
    N = coeffs.N
    dim = 2**N

    def part(i, n, j):
        joint = np.zeros(2 * dim, dtype=complex)
        joint[i * dim : (i + 1) * dim] = coeffs.representative(n)
        return evolve(U, joint)[j * dim : (j + 1) * dim]

    total = 0j
    for n in range(N - 1):
        if coeffs.a[n] == 0.0 or coeffs.a[n + 2] == 0.0:
            continue
        total += coeffs.a[n + 2] * coeffs.a[n] * np.vdot(part(0, n + 2, 1), part(1, n, 0))
    return complex(total)


def sector_norms(vec: np.ndarray, sectors: SectorBasis) -> np.ndarray:
    """Norm of ``vec`` inside each ancilla sector."""
    return np.array([np.linalg.norm(vec[idx]) for idx in sectors.indices_of])

