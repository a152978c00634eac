import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from notlimit.channels import ComponentDecomposition
from notlimit.conservation import (
    AncillaCoefficients,
    BlockUnitary,
    PermutationUnitary,
    ancilla_sector_coefficients,
    assemble_conservative,
    block_dims,
    block_indices,
    commutator_norm,
    component_bound,
    extract_components,
    fixed_ancilla_bound,
    haar_unitary,
    overlap_bound,
    overlap_from_sectors,
    random_conservative,
    random_pure_state,
    sector_norms,
)
from notlimit.constructions import optimal_ancilla, optimal_unitary, uniform_ancilla
from notlimit.errors import CapacityError, ShapeError, ValidationError
from notlimit.hilbert import hamming_sectors

import oracles

seeds = st.integers(0, 2**32 - 1)
SWAP = np.eye(4)[[0, 2, 1, 3]]


class TestBlocks:
    def test_dims(self):
        assert block_dims(1) == [1, 2, 1]
        assert block_dims(2) == [1, 3, 3, 1]

    @pytest.mark.parametrize("N", range(1, 7))
    def test_indices_partition_joint_space(self, N):
        idx = np.concatenate(block_indices(N))
        np.testing.assert_array_equal(np.sort(idx), np.arange(2 ** (N + 1)))
        z = np.diag(oracles.total_z(N)).real
        for n, block in enumerate(block_indices(N)):
            assert np.all(z[block] == N + 1 - 2 * n)
            assert len(block) == block_dims(N)[n]

    def test_block_order_s0_first(self):
        # N=2, n=1: |0>|01>, |0>|10>, then |1>|00>
        np.testing.assert_array_equal(block_indices(2)[1], [1, 2, 4])

    def test_identity_assembly(self):
        U = assemble_conservative(2, [np.eye(d) for d in block_dims(2)])
        np.testing.assert_array_equal(U.to_dense(), np.eye(8))
        assert commutator_norm(U, 2) == 0.0

    def test_assembly_errors(self):
        with pytest.raises(ShapeError):
            assemble_conservative(2, [np.eye(1)] * 3)
        with pytest.raises(ShapeError):
            assemble_conservative(1, [np.eye(1), np.eye(3), np.eye(1)])
        with pytest.raises(ValidationError):
            assemble_conservative(1, [np.eye(1), 2 * np.eye(2), np.eye(1)])

    def test_dense_capacity(self):
        U = assemble_conservative(11, [np.eye(d) for d in block_dims(11)])
        with pytest.raises(CapacityError):
            U.to_dense()

    def test_assembled_commutes_dense(self):
        for N in range(1, 7):
            for seed in range(50):
                U = random_conservative(N, seed)
                assert oracles.commutator_max(U.to_dense(), N) <= 1e-12

    @given(seeds, st.integers(1, 4))
    def test_apply_matches_dense(self, seed, N):
        U = random_conservative(N, seed)
        v = random_pure_state(2 ** (N + 1), seed + 1)
        np.testing.assert_allclose(U.apply(v), U.to_dense() @ v, atol=1e-13)

    @given(seeds, st.integers(1, 4))
    def test_from_dense_round_trip(self, seed, N):
        U = random_conservative(N, seed)
        back = BlockUnitary.from_dense(U.to_dense(), N)
        for B1, B2 in zip(U.blocks, back.blocks):
            np.testing.assert_array_equal(B1, B2)

    def test_from_dense_rejects_flip(self):
        with pytest.raises(ValidationError):
            BlockUnitary.from_dense(np.kron(oracles.X, np.eye(2)), 1)

    @given(seeds, st.integers(1, 3), st.integers(0, 2))
    def test_extend_is_kron_identity(self, seed, N, k):
        U = random_conservative(N, seed)
        ext = U.extend(k)
        assert ext.N == N + k
        np.testing.assert_allclose(ext.to_dense(), np.kron(U.to_dense(), np.eye(2**k)), atol=1e-15)
        assert commutator_norm(ext, N + k) <= 1e-12


class TestCommutator:
    def test_block_unitary_is_zero(self):
        assert commutator_norm(random_conservative(3, 1), 3) <= 1e-12

    def test_flip_on_system(self):
        # entrywise max of |UZ - ZU| for X (x) I is 2
        U = np.kron(oracles.X, np.eye(2))
        assert commutator_norm(U, 1) == pytest.approx(2.0)
        assert oracles.commutator_max(U, 1) == pytest.approx(2.0)

    def test_swap_conserves(self):
        assert commutator_norm(SWAP, 1) == 0.0
        assert oracles.commutator_max(SWAP, 1) == 0.0

    @given(seeds, st.integers(1, 3))
    def test_dense_matches_oracle(self, seed, N):
        U = haar_unitary(2 ** (N + 1), seed)
        assert commutator_norm(U, N) == pytest.approx(oracles.commutator_max(U, N), abs=1e-12)

    def test_shape_mismatch(self):
        with pytest.raises(ShapeError):
            commutator_norm(np.eye(4), 2)

    def test_permutations(self):
        P = optimal_unitary(4).unitary()
        assert commutator_norm(P, 4) == 0.0
        assert oracles.commutator_max(P.to_dense(), 4) == 0.0
        bad = PermutationUnitary(1, np.array([2, 1, 0, 3]))
        assert commutator_norm(bad, 1) == pytest.approx(oracles.commutator_max(bad.to_dense(), 1))
        with pytest.raises(ValidationError):
            bad.to_block_unitary()

    def test_permutation_to_blocks(self):
        P = optimal_unitary(3).unitary()
        np.testing.assert_array_equal(P.to_block_unitary().to_dense(), P.to_dense())


class TestSampling:
    def test_haar_unitary(self):
        U = haar_unitary(5, 1)
        np.testing.assert_allclose(U.conj().T @ U, np.eye(5), atol=1e-13)

    def test_haar_first_moment(self):
        rng = np.random.default_rng(0)
        vals = [abs(haar_unitary(4, rng)[0, 0]) ** 2 for _ in range(4000)]
        assert np.mean(vals) == pytest.approx(0.25, abs=0.01)

    def test_determinism(self):
        a, b = random_conservative(3, 42), random_conservative(3, 42)
        for B1, B2 in zip(a.blocks, b.blocks):
            np.testing.assert_array_equal(B1, B2)
        np.testing.assert_array_equal(random_pure_state(8, 5), random_pure_state(8, 5))

    def test_capacity(self):
        with pytest.raises(CapacityError):
            random_conservative(13, 0)

    def test_overlap_never_exceeds_sum(self):
        for seed in range(1000):
            rng = np.random.default_rng(seed)
            U = random_conservative(2, rng)
            A = random_pure_state(4, rng)
            comp = extract_components(U, A)
            assert abs(comp.overlap) <= overlap_bound(ancilla_sector_coefficients(A)) + 1e-12


class TestComponents:
    def test_identity(self):
        A = random_pure_state(4, 0)
        comp = extract_components(np.eye(8), A)
        np.testing.assert_array_equal(comp.A00, A)
        np.testing.assert_array_equal(comp.A11, A)
        assert not comp.A01.any() and not comp.A10.any()

    @pytest.mark.parametrize("N", [2, 3, 6])
    def test_optimal(self, N):
        chain = optimal_unitary(N)
        comp = extract_components(chain.unitary(), chain.ancilla_state())
        assert comp.eps0 == pytest.approx(0, abs=1e-24) and comp.eps1 == pytest.approx(0, abs=1e-24)
        assert np.linalg.norm(comp.A01) == pytest.approx(1) and np.linalg.norm(comp.A10) == pytest.approx(1)

    @pytest.mark.parametrize("n", [0, 1, 2])
    def test_sector_shift(self, n):
        sb = hamming_sectors(2)
        U = random_conservative(2, 9)
        A = sb.project(random_pure_state(4, n), n)
        comp = extract_components(U, A / np.linalg.norm(A))
        for vec, target in ((comp.A00, n), (comp.A11, n), (comp.A01, n - 1), (comp.A10, n + 1)):
            norms = sector_norms(vec, sb)
            outside = [norms[m] for m in range(3) if m != target]
            assert max(outside) <= 1e-12

    def test_validation(self):
        with pytest.raises(ShapeError):
            extract_components(np.eye(8), np.ones(3) / math.sqrt(3))
        with pytest.raises(ValidationError):
            extract_components(np.eye(8), np.ones(4))

    def test_unitarity_phase_constraint(self):
        for seed in range(100):
            rng = np.random.default_rng(seed)
            N = int(rng.integers(1, 5))
            comp = extract_components(random_conservative(N, rng), random_pure_state(2**N, rng))
            cross = np.vdot(comp.A00, comp.A10) + np.vdot(comp.A01, comp.A11)
            for p in np.linspace(0, 1, 7):
                for t in np.linspace(0, 2 * math.pi, 9):
                    ab = math.sqrt(p * (1 - p)) * np.exp(1j * t)
                    assert abs((ab * cross).real) <= 1e-10


class TestAncillaCoefficients:
    def test_ground_state(self):
        A = np.zeros(8)
        A[0] = 1
        np.testing.assert_array_equal(ancilla_sector_coefficients(A).a, [1, 0, 0, 0])

    def test_uniform_superposition(self):
        c = ancilla_sector_coefficients(np.full(4, 0.5))
        np.testing.assert_allclose(c.a, [0.5, math.sqrt(2) / 2, 0.5])

    def test_optimal_n4(self):
        c = ancilla_sector_coefficients(optimal_ancilla(4).to_state())
        np.testing.assert_allclose(c.a, [0, 1 / math.sqrt(2), 0, 1 / math.sqrt(2), 0], atol=1e-15)

    @given(seeds, st.integers(1, 6))
    def test_reconstruction_and_support(self, seed, N):
        A = random_pure_state(2**N, seed)
        c = ancilla_sector_coefficients(A)
        sb = hamming_sectors(N)
        assert np.sum(c.a**2) == pytest.approx(1, abs=1e-12)
        for n, rep in c.reps.items():
            assert np.linalg.norm(rep - sb.project(rep, n)) <= 1e-12
        np.testing.assert_allclose(c.to_state(), A, atol=1e-12)

    def test_degenerate_sector_excluded(self):
        A = np.zeros(4, dtype=complex)
        A[0], A[3] = 0.6, 0.8j
        c = ancilla_sector_coefficients(A)
        assert c.a[1] == 0.0 and 1 not in c.reps

    def test_validation(self):
        with pytest.raises(ShapeError):
            AncillaCoefficients(2, np.ones(2) / math.sqrt(2))
        with pytest.raises(ValidationError):
            AncillaCoefficients(2, np.ones(3))

    def test_canonical_representative(self):
        c = uniform_ancilla(3)
        for n in range(4):
            assert np.flatnonzero(c.representative(n)).tolist() == [2**n - 1]


class TestBounds:
    def test_overlap_bound_examples(self):
        assert overlap_bound(AncillaCoefficients(3, [1, 0, 0, 0])) == 0.0
        assert overlap_bound(uniform_ancilla(3)) == pytest.approx(0.5)
        assert overlap_bound(optimal_ancilla(4)) == pytest.approx(0.5)

    def test_fixed_ancilla_examples(self):
        assert fixed_ancilla_bound(AncillaCoefficients(3, [1, 0, 0, 0])) == 0.5
        assert fixed_ancilla_bound(uniform_ancilla(3)) == pytest.approx(0.25)
        assert fixed_ancilla_bound(optimal_ancilla(4)) == pytest.approx(0.25)

    def test_component_bound_examples(self):
        assert component_bound(extract_components(np.eye(8), random_pure_state(4, 1))) == pytest.approx(0.5)
        a = random_pure_state(4, 2)
        z = np.zeros(4)
        assert component_bound(ComponentDecomposition(z, a, a, z)) == pytest.approx(0, abs=1e-15)
        chain = optimal_unitary(4)
        assert component_bound(chain.components()) == pytest.approx(0.25)

    def test_sector_shift_law(self):
        for k in range(500):
            rng = np.random.default_rng(10_000 + k)
            N = 2 + k % 3
            U = random_conservative(N, rng)
            A = random_pure_state(2**N, rng)
            comp = extract_components(U, A)
            coeffs = ancilla_sector_coefficients(A)
            assert abs(overlap_from_sectors(U, coeffs) - comp.overlap) <= 1e-10

    @given(seeds, st.integers(2, 5))
    def test_dominance_chain(self, seed, N):
        A = random_pure_state(2**N, seed)
        fixed = fixed_ancilla_bound(ancilla_sector_coefficients(A))
        worst = min(component_bound(extract_components(random_conservative(N, seed + j), A)) for j in range(5))
        assert worst >= fixed - 1e-12
