"""Gate channels, distances, and worst-case search over pure inputs."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import ShapeError, ValidationError
from .hilbert import PureQubitState, check_density, hermitian_2x2_eigvals, partial_trace_ancilla
from .policy import POLICY

__all__ = [
    "ComponentDecomposition",
    "Implementation",
    "SearchConfig",
    "analytic_witness",
    "apply_implementation",
    "distance_via_components",
    "evolve",
    "fidelity_to_pure",
    "gate_trace_distance",
    "ideal_not",
    "output_distance",
    "trace_distance_qubit",
    "trace_distance_spectral",
]


def evolve(U, vec: np.ndarray) -> np.ndarray:
    """Apply a joint operator given either as a dense matrix or as an object with ``apply``."""
    if isinstance(U, np.ndarray):
        return U @ vec
    return U.apply(vec)


@dataclass(frozen=True)
class ComponentDecomposition:
    """Ancilla vectors defined by ``U(|i> (x) |A>) = sum_j |j> (x) A^i_j``.

    Attribute ``Aij`` stores the ancilla vector for input ``|i>`` and output
    system state ``|j>``.
    """

    A00: np.ndarray
    A01: np.ndarray
    A10: np.ndarray
    A11: np.ndarray

    def __post_init__(self):
        n0 = np.vdot(self.A00, self.A00).real + np.vdot(self.A01, self.A01).real
        n1 = np.vdot(self.A10, self.A10).real + np.vdot(self.A11, self.A11).real
        if abs(n0 - 1) > POLICY.validation or abs(n1 - 1) > POLICY.validation:
            raise ValidationError(f"component norms violate unitarity: {n0}, {n1}")

    @property
    def eps0(self) -> float:
        return float(np.vdot(self.A00, self.A00).real)

    @property
    def eps1(self) -> float:
        return float(np.vdot(self.A11, self.A11).real)

    @property
    def overlap(self) -> complex:
        """``<A^0_1 | A^1_0>``; equals 1 only for a perfect NOT."""
        return complex(np.vdot(self.A01, self.A10))

    def vectors(self) -> tuple[tuple[np.ndarray, np.ndarray], tuple[np.ndarray, np.ndarray]]:
        return (self.A00, self.A01), (self.A10, self.A11)

    def response(self) -> np.ndarray:
        """Gram tensor ``G[i, k, j, l] = <A^k_l | A^i_j>`` of shape (2, 2, 2, 2).

        The output density for input ``psi`` is
        ``rho[j, l] = sum_{i,k} psi_i conj(psi_k) G[i, k, j, l]``.
        """
        v = self.vectors()
        G = np.empty((2, 2, 2, 2), dtype=complex)
        for i in range(2):
            for k in range(2):
                for j in range(2):
                    for l in range(2):
                        G[i, k, j, l] = np.vdot(v[k][l], v[i][j])
        return G


@dataclass
class Implementation:
    """A gate implementation ``(U, rho_A)`` with an N-qubit ancilla.

    ``U`` is a dense ``2**(N+1)`` unitary or any operator object with an
    ``apply`` method (e.g. :class:`~notlimit.conservation.BlockUnitary`).
    ``ancilla`` is a unit vector of length ``2**N`` or a ``2**N x 2**N``
    density matrix.
    """

    N: int
    U: object
    ancilla: np.ndarray
    _spectrum: tuple[np.ndarray, np.ndarray] | None = field(default=None, init=False, repr=False)

    def __post_init__(self):
        dim = 2**self.N
        self.ancilla = np.asarray(self.ancilla, dtype=complex)
        if isinstance(self.U, np.ndarray):
            U = self.U
            if U.shape != (2 * dim, 2 * dim):
                raise ShapeError(f"U has shape {U.shape}, expected {(2 * dim, 2 * dim)}")
            if np.max(np.abs(U.conj().T @ U - np.eye(2 * dim))) > POLICY.validation:
                raise ValidationError("U is not unitary")
        elif getattr(self.U, "N", self.N) != self.N:
            raise ShapeError(f"operator acts on N={self.U.N} ancilla qubits, not {self.N}")
        if self.ancilla.shape == (dim,):
            if abs(np.vdot(self.ancilla, self.ancilla).real - 1) > POLICY.validation:
                raise ValidationError("pure ancilla is not normalized")
        elif self.ancilla.shape == (dim, dim):
            rho = self.ancilla
            if np.max(np.abs(rho - rho.conj().T)) > POLICY.validation:
                raise ValidationError("ancilla density is not Hermitian")
            if abs(np.trace(rho).real - 1) > POLICY.validation:
                raise ValidationError("ancilla density does not have unit trace")
            if np.linalg.eigvalsh(rho)[0] < -POLICY.validation:
                raise ValidationError("ancilla density is not positive semidefinite")
        else:
            raise ShapeError(f"ancilla has shape {self.ancilla.shape}, expected ({dim},) or ({dim}, {dim})")

    @property
    def is_pure(self) -> bool:
        return self.ancilla.ndim == 1

    def spectrum(self) -> tuple[np.ndarray, np.ndarray]:
        """Weights (descending) and eigenvectors (columns) of the ancilla state."""
        if self._spectrum is None:
            if self.is_pure:
                self._spectrum = (np.ones(1), self.ancilla[:, None])
            else:
                w, v = np.linalg.eigh(self.ancilla)
                order = np.argsort(-w, kind="stable")
                w, v = w[order], v[:, order]
                keep = w > POLICY.validation
                w = w[keep] / w[keep].sum()
                self._spectrum = (w, v[:, keep])
        return self._spectrum

    @property
    def rank(self) -> int:
        return len(self.spectrum()[0])

    def _outputs(self, i: int) -> list[np.ndarray]:
        dim = 2**self.N
        weights, vecs = self.spectrum()
        out = []
        for j in range(len(weights)):
            joint = np.zeros(2 * dim, dtype=complex)
            joint[i * dim : (i + 1) * dim] = vecs[:, j]
            out.append(evolve(self.U, joint))
        return out

    def components(self) -> ComponentDecomposition:
        """Component decomposition; for mixed ancillas, that of the purification.

        With ``rho_A = sum_j p_j |phi_j><phi_j|`` the purified components are
        the concatenations ``(sqrt(p_1) A^i_j(phi_1), sqrt(p_2) A^i_j(phi_2), ...)``,
        which reproduce the channel exactly.
        """
        dim = 2**self.N
        w = np.sqrt(self.spectrum()[0])
        parts = []
        for i in range(2):
            outs = self._outputs(i)
            lo = np.concatenate([wj * o[:dim] for wj, o in zip(w, outs)])
            hi = np.concatenate([wj * o[dim:] for wj, o in zip(w, outs)])
            parts.append((lo, hi))
        return ComponentDecomposition(parts[0][0], parts[0][1], parts[1][0], parts[1][1])

    def apply(self, state: PureQubitState) -> np.ndarray:
        """Channel output by joint evolution and partial trace, mixed spectrally."""
        weights, vecs = self.spectrum()
        rho = np.zeros((2, 2), dtype=complex)
        for w, a in zip(weights, vecs.T):
            joint = np.kron(state.vector, a)
            rho += w * partial_trace_ancilla(evolve(self.U, joint), self.N)
        return rho


def apply_implementation(impl, state: PureQubitState) -> np.ndarray:
    return impl.apply(state)


def ideal_not(state: PureQubitState) -> np.ndarray:
    """``X |psi><psi| X``."""
    v = state.vector[::-1]
    return np.outer(v, v.conj())


def trace_distance_qubit(rho: np.ndarray, sigma: np.ndarray) -> float:
    """Trace distance of two qubit states, ``sqrt(|d01|^2 - d00 d11)`` with ``d = rho - sigma``."""
    rho = check_density(rho, POLICY.validation)
    sigma = check_density(sigma, POLICY.validation)
    d = rho - sigma
    rad = abs(d[0, 1]) ** 2 - d[0, 0].real * d[1, 1].real
    if rad < -POLICY.structural:
        raise ValidationError(f"negative radicand {rad} in trace distance")
    return math.sqrt(max(rad, 0.0))


def trace_distance_spectral(rho: np.ndarray, sigma: np.ndarray) -> float:
    """Trace distance as half the sum of absolute eigenvalues of ``rho - sigma``."""
    l1, l2 = hermitian_2x2_eigvals(np.asarray(rho) - np.asarray(sigma))
    return (abs(l1) + abs(l2)) / 2


def fidelity_to_pure(rho: np.ndarray, psi: PureQubitState) -> float:
    """``sqrt(<psi|rho|psi>)``."""
    v = psi.vector
    val = np.vdot(v, np.asarray(rho) @ v).real
    return math.sqrt(min(max(val, 0.0), 1.0))


def output_distance(impl, state: PureQubitState) -> float:
    """Trace distance between the implementation's output and the ideal NOT output."""
    return trace_distance_qubit(impl.apply(state), ideal_not(state))


def distance_via_components(comp: ComponentDecomposition, state: PureQubitState) -> float:
    """Output trace distance from the component inner products alone."""
    a, b = state.alpha, state.beta
    ab = a.conjugate() * b
    ip = np.vdot
    first = (
        ab * (1 - ip(comp.A01, comp.A10))
        - a * b.conjugate() * ip(comp.A11, comp.A00)
        - abs(a) ** 2 * ip(comp.A01, comp.A00)
        - abs(b) ** 2 * ip(comp.A11, comp.A10)
    )
    second = -abs(a) ** 2 * comp.eps0 + abs(b) ** 2 * comp.eps1 - 2 * (ab * ip(comp.A00, comp.A10)).real
    return math.sqrt(abs(first) ** 2 + second**2)


def _polar(z: complex) -> tuple[float, float]:
    r = abs(z)
    if r == 0.0:
        return 0.0, 0.0
    return r, cmath.phase(z) % (2 * math.pi)


def analytic_witness(comp: ComponentDecomposition) -> PureQubitState:
    """Equal-weight input whose output distance is at least ``|1 - <A^0_1|A^1_0>| / 2``.

    Writes ``1 - <A01|A10> = r1 e^{i phi1}``, ``-<A11|A00> = r2 e^{i phi2}``
    and ``-<A01|A00> - <A11|A10> = r3 e^{i phi3}``; picks
    ``theta = (phi2 - phi1) / 2`` when ``r2 >= r3`` and ``theta = phi3 - phi1``
    otherwise. Zero moduli get phase 0.
    """
    ip = np.vdot
    r1, phi1 = _polar(1 - ip(comp.A01, comp.A10))
    r2, phi2 = _polar(-ip(comp.A11, comp.A00))
    r3, phi3 = _polar(-ip(comp.A01, comp.A00) - ip(comp.A11, comp.A10))
    if r2 >= r3:
        theta = (phi2 - phi1) / 2
    else:
        theta = phi3 - phi1
    return PureQubitState(0.5, theta)


@dataclass(frozen=True)
class SearchConfig:
    """Grid resolution and local refinement settings for the input search."""

    grid_p: int = 64
    grid_theta: int = 128
    refine_tol: float = 1e-10
    max_refine_iters: int = 200

    def __post_init__(self):
        if self.grid_p < 8 or self.grid_theta < 8:
            raise ValidationError("grid sizes must be at least 8")
        if not self.refine_tol > 0:
            raise ValidationError("refine_tol must be positive")


def gate_trace_distance(impl, cfg: SearchConfig | None = None) -> tuple[float, PureQubitState]:
    """Maximum over pure inputs of the output trace distance to the ideal NOT.

    ``impl`` is anything exposing ``components()``. The (p, theta) grid is
    scanned, then compass-search refinement runs from the best grid cell and
    from :func:`analytic_witness`; the larger result wins.
    """
    cfg = cfg or SearchConfig()
    comp = impl.components()
    G = comp.response().ravel()
    ps = np.linspace(0.0, 1.0, cfg.grid_p)
    ts = np.linspace(0.0, 2 * math.pi, cfg.grid_theta, endpoint=False)
    grid = _kernels.distance_grid(G, ps, ts)
    i, j = np.unravel_index(int(np.argmax(grid)), grid.shape)
    step_p = 1.0 / (cfg.grid_p - 1)
    step_t = 2 * math.pi / cfg.grid_theta

    seed = analytic_witness(comp)
    runs = [
        _kernels.refine_max(G, ps[i], ts[j], step_p, step_t, cfg.refine_tol, cfg.max_refine_iters),
        _kernels.refine_max(G, seed.p, seed.theta, step_p, step_t, cfg.refine_tol, cfg.max_refine_iters),
    ]
    p, theta, value, _ = max(runs, key=lambda r: r[2])
    return float(min(value, 1.0)), PureQubitState(p, theta)
