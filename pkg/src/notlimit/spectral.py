"""Chebyshev polynomials of the second kind, the S_l spectrum, and closed-form bounds.

``S_l`` is the ``l x l`` symmetric tridiagonal matrix with ``1/2`` on the
first off-diagonals and zeros elsewhere. Its eigenvectors are
``(W_0(x), ..., W_{l-1}(x))`` at the roots ``x = cos(k pi / (l + 1))`` of
``W_l``, so its top eigenvalue is ``cos(pi / (l + 1))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DomainError

__all__ = [
    "BoundReport",
    "TridiagSpectrum",
    "bound_cc",
    "bound_general",
    "bound_hadamard_ref",
    "bound_mixed",
    "bound_mixed_worst",
    "chebyshev_W",
    "max_overlap_sum",
    "overlap_chains",
    "overlap_quadratic_form",
    "overlap_sum",
    "power_iteration",
    "tridiag_matrix",
    "tridiag_max_eig",
]


def chebyshev_W(l: int, x):
    """``W_l(x)`` by the forward recurrence ``W_{k+1} = 2x W_k - W_{k-1}``.

    Works elementwise on arrays.
    """
    if l < 0:
        raise DomainError("degree must be non-negative")
    x = np.asarray(x, dtype=float)
    prev, cur = np.ones_like(x), 2 * x
    if l == 0:
        return prev if prev.ndim else float(prev)
    for _ in range(l - 1):
        prev, cur = cur, 2 * x * cur - prev
    return cur if cur.ndim else float(cur)


def _chebyshev_sequence(l: int, x: float) -> np.ndarray:
    """``[W_0(x), ..., W_{l-1}(x)]`` in one recurrence pass."""
    out = np.empty(l)
    out[0] = 1.0
    if l > 1:
        out[1] = 2 * x
    for k in range(2, l):
        out[k] = 2 * x * out[k - 1] - out[k - 2]
    return out


def tridiag_matrix(l: int) -> np.ndarray:
    if l < 1:
        raise DomainError("matrix size must be at least 1")
    S = np.zeros((l, l))
    i = np.arange(l - 1)
    S[i, i + 1] = S[i + 1, i] = 0.5
    return S


@dataclass(frozen=True)
class TridiagSpectrum:
    """Top eigenpair of ``S_l``.

    ``eigenvector`` holds the unnormalized Chebyshev values
    ``W_j(cos(pi/(l+1)))`` for ``j = 0 .. l-1`` and ``normalizer`` its norm.
    """

    l: int
    max_eigenvalue: float
    eigenvector: np.ndarray
    normalizer: float

    @property
    def unit_eigenvector(self) -> np.ndarray:
        return self.eigenvector / self.normalizer


def tridiag_max_eig(l: int) -> TridiagSpectrum:
    if l < 1:
        raise DomainError("matrix size must be at least 1")
    x = math.cos(math.pi / (l + 1))
    vec = _chebyshev_sequence(l, x)
    return TridiagSpectrum(l, x, vec, float(np.linalg.norm(vec)))


def power_iteration(l: int, max_iter: int = 10_000, tol: float = 1e-14) -> tuple[float, np.ndarray, int]:
    """Numeric top eigenpair of ``S_l`` by power iteration on ``S_l + I``.

    The unit shift makes the spectrum positive, since ``S_l`` also has
    ``-cos(pi/(l+1))`` as an eigenvalue of equal magnitude. Starts from
    the all-ones vector. Returns ``(eigenvalue, unit_vector, iterations)``.
    """
    if l < 1:
        raise DomainError("matrix size must be at least 1")
    mu, vec, it = _kernels.tridiag_power_iteration(l, 0.5, 1.0, max_iter, tol)
    return float(mu), np.asarray(vec), int(it)


def overlap_sum(a) -> float:
    """``sum_{n=0}^{N-2} |a_{n+2}| |a_n|`` computed directly."""
    a = np.abs(np.asarray(a))
    return float(np.dot(a[2:], a[:-2]))


def overlap_quadratic_form(a) -> float:
    """The same sum as ``A_odd^T S A_odd + A_even^T S' A_even``."""
    a = np.abs(np.asarray(a, dtype=complex)).astype(float)
    total = 0.0
    for chain in (a[1::2], a[0::2]):
        if len(chain):
            total += float(chain @ tridiag_matrix(len(chain)) @ chain)
    return total


def overlap_chains(N: int, classically_complete: bool = False) -> tuple[list[int], list[int]]:
    """The two parity chains of allowed subscripts, the one starting lowest first.

    For classically complete implementations the endpoints ``0`` and ``N``
    carry no weight and are excluded.
    """
    lo, hi = (1, N - 1) if classically_complete else (0, N)
    first = list(range(lo, hi + 1, 2))
    second = list(range(lo + 1, hi + 1, 2))
    return first, second


def max_overlap_sum(N: int, classically_complete: bool = False) -> tuple[float, np.ndarray]:
    """Maximum of the overlap sum over unit coefficient vectors, with a maximizer.

    The sum splits into two decoupled chains (even and odd subscripts), each
    a quadratic form in ``S_l``; the optimum puts all weight on the longer
    chain as its top eigenvector. On a tie the chain starting at the lowest
    allowed subscript is used.
    """
    if N < 2:
        raise DomainError(f"need N >= 2, got {N}")
    first, second = overlap_chains(N, classically_complete)
    chain = first if len(first) >= len(second) else second
    spec = tridiag_max_eig(len(chain))
    coeffs = np.zeros(N + 1)
    coeffs[chain] = spec.unit_eigenvector
    return spec.max_eigenvalue, coeffs


@dataclass(frozen=True)
class BoundReport:
    N: int
    variant: str
    value: float


def _half_one_minus_cos(denominator: float) -> float:
    return 0.5 * (1.0 - math.cos(2 * math.pi / denominator))


def bound_general(N: int, parity: str = "exact") -> BoundReport:
    """Lower bound on the gate trace distance of any pure conservative implementation.

    ``parity="exact"`` uses ``N + 4`` for even and ``N + 3`` for odd ``N``;
    ``parity="uniform"`` uses the weaker common form ``N + 4``.
    """
    if N < 2:
        raise DomainError(f"need N >= 2, got {N}")
    if parity == "uniform":
        return BoundReport(N, "general-any", _half_one_minus_cos(N + 4))
    if parity != "exact":
        raise DomainError(f"unknown parity mode {parity!r}")
    if N % 2 == 0:
        return BoundReport(N, "general-even", _half_one_minus_cos(N + 4))
    return BoundReport(N, "general-odd", _half_one_minus_cos(N + 3))


def bound_cc(N: int) -> BoundReport:
    """Attainable bound for classically complete pure conservative implementations."""
    if N < 2:
        raise DomainError(f"need N >= 2, got {N}")
    if N % 2 == 0:
        return BoundReport(N, "cc-even", _half_one_minus_cos(N + 2))
    return BoundReport(N, "cc-odd", _half_one_minus_cos(N + 1))


def bound_mixed(N: int, rank: int, classically_complete: bool = False) -> BoundReport:
    """Bound for an ancilla state of the given rank: ``N + log2(rank)`` effective qubits."""
    if N < 1:
        raise DomainError(f"need N >= 1, got {N}")
    if not 1 <= rank <= 2**N:
        raise DomainError(f"rank must lie in [1, 2**{N}], got {rank}")
    offset = 2 if classically_complete else 4
    return BoundReport(N, "mixed-rank", _half_one_minus_cos(N + math.log2(rank) + offset))


def bound_mixed_worst(N: int, classically_complete: bool = False) -> BoundReport:
    """Rank-free form obtained from ``N + log2(rank) <= 2N``."""
    if N < 1:
        raise DomainError(f"need N >= 1, got {N}")
    denom = N + 1 if classically_complete else N + 2
    return BoundReport(N, "mixed-rank", 0.5 * (1.0 - math.cos(math.pi / denom)))


def bound_hadamard_ref(N: int) -> BoundReport:
    """Reference bound ``1 / (4 N^2 + 4)`` known for the Hadamard gate."""
    if N < 1:
        raise DomainError(f"need N >= 1, got {N}")
    return BoundReport(N, "hadamard-ref", 1.0 / (4 * N * N + 4))
