"""Tests for dense tensors and multilinear kernels."""

import numpy as np
import pytest

from src.errors import DimensionMismatchError, InvalidInputError, InvalidTensorError
from src.tensors.core import (
    BlockVector,
    DenseTensor,
    OrthogonalMatrix,
    SymmetricTensor,
    contract_all_but_one,
    contract_all_but_two,
    contract_leave_slot,
    contract_leave_two_slots,
    contraction_jacobian,
    diagonal_tensor,
    hs_norm,
    inner,
    is_symmetric,
    orth_act,
    random_orthogonal,
    random_symmetric,
    random_tensor,
    segre,
    symmetrize,
    unit_vector,
    veronese,
)


@pytest.fixture
def e1_cubed():
    """e1^{⊗3} in dimension 2."""
    return veronese(unit_vector(2, 0), 3)


class TestDenseTensor:
    """Tests for DenseTensor construction and arithmetic."""

    def test_from_entries_row_major(self):
        """Test entries fill the last index fastest."""
        A = DenseTensor.from_entries([2, 2, 2], list(range(8)))
        assert A.array[1, 0, 1] == 5
        assert A.array[0, 1, 1] == 3
        assert A.dims == (2, 2, 2)
        assert A.order == 3

    def test_rejects_order_two(self):
        """Test matrices are not tensors here."""
        with pytest.raises(InvalidTensorError) as exc:
            DenseTensor(np.eye(2))
        assert exc.value.field == "order"

    def test_rejects_non_finite(self):
        """Test NaN entries are rejected."""
        array = np.zeros((2, 2, 2))
        array[0, 0, 0] = np.nan
        with pytest.raises(InvalidTensorError):
            DenseTensor(array)

    def test_rejects_wrong_entry_count(self):
        """Test entry count must match dims."""
        with pytest.raises(InvalidTensorError) as exc:
            DenseTensor.from_entries([2, 2, 2], [1.0] * 7)
        assert exc.value.field == "entries"

    def test_array_is_read_only(self):
        """Test stored arrays cannot be mutated."""
        A = random_tensor([2, 2, 2], seed=0)
        with pytest.raises(ValueError):
            A.array[0, 0, 0] = 1.0

    def test_add_and_scale(self):
        """Test entrywise addition and scalar multiplication."""
        A = random_tensor([2, 3, 2], seed=1)
        B = random_tensor([2, 3, 2], seed=2)
        C = 2.0 * A + B
        assert np.allclose(C.array, 2.0 * A.array + B.array)

    def test_add_dim_mismatch(self):
        """Test adding tensors with different dims fails."""
        with pytest.raises(DimensionMismatchError):
            random_tensor([2, 2, 2], seed=0) + random_tensor([2, 2, 3], seed=0)


class TestSymmetricTensor:
    """Tests for SymmetricTensor verification and projection."""

    def test_rejects_nonsymmetric(self):
        """Test verification catches asymmetric entries."""
        with pytest.raises(InvalidTensorError):
            SymmetricTensor(random_tensor([2, 2, 2], seed=3))

    def test_rejects_unequal_dims(self):
        """Test symmetric tensors need equal dims."""
        with pytest.raises(InvalidTensorError) as exc:
            SymmetricTensor(random_tensor([2, 3, 2], seed=3))
        assert exc.value.field == "dims"

    def test_symmetrize_projects(self):
        """Test symmetrize averages over permutations."""
        A = symmetrize(random_tensor([3, 3, 3], seed=4))
        assert is_symmetric(A)
        assert A.n == 3

    def test_symmetrize_is_idempotent(self):
        """Test projecting a symmetric tensor leaves it unchanged."""
        A = random_symmetric(3, 4, seed=5)
        assert np.allclose(symmetrize(A).array, A.array, atol=1e-14)

    def test_random_symmetric_seeded(self):
        """Test identical seeds give identical tensors."""
        assert np.array_equal(random_symmetric(2, 3, seed=9).array, random_symmetric(2, 3, seed=9).array)

    def test_diagonal_tensor(self):
        """Test diagonal weights land on the superdiagonal."""
        A = diagonal_tensor([2.0, 1.0], 3)
        assert A.array[0, 0, 0] == 2.0
        assert A.array[1, 1, 1] == 1.0
        assert hs_norm(A) == pytest.approx(np.sqrt(5.0))


class TestContractions:
    """Tests for the contraction kernels."""

    def test_all_but_one_e1_cubed(self, e1_cubed):
        """Test A x^2 for e1^{⊗3} at (1,1)/√2."""
        x = np.array([1.0, 1.0]) / np.sqrt(2.0)
        assert np.allclose(contract_all_but_one(e1_cubed, x), [0.5, 0.0])

    def test_all_but_two_e1_cubed(self, e1_cubed):
        """Test A x for e1^{⊗3} at e1 is e1 e1ᵀ."""
        assert np.allclose(contract_all_but_two(e1_cubed, unit_vector(2, 0)), [[1.0, 0.0], [0.0, 0.0]])

    def test_contraction_jacobian_symmetric(self):
        """Test the derivative equals (k-1) A x^{k-2} for symmetric A."""
        A = random_symmetric(3, 4, seed=6)
        x = np.array([0.3, -0.5, 0.8])
        assert np.allclose(contraction_jacobian(A, x), 3 * contract_all_but_two(A, x))

    def test_contraction_jacobian_finite_difference(self):
        """Test the derivative of x -> A x^{k-1} for a nonsymmetric tensor."""
        A = random_tensor([3, 3, 3], seed=7)
        x = np.array([0.2, 0.7, -0.4])
        h = 1e-6
        numeric = np.column_stack([
            (contract_all_but_one(A, x + h * e) - contract_all_but_one(A, x - h * e)) / (2 * h)
            for e in np.eye(3)
        ])
        assert np.allclose(contraction_jacobian(A, x), numeric, atol=1e-8)

    def test_leave_slot_matches_full_contraction(self):
        """Test single-slot contractions agree with the inner product."""
        A = random_tensor([2, 3, 4], seed=8)
        blocks = BlockVector((np.ones(2), np.arange(3.0), np.array([1.0, -1.0, 0.5, 2.0])))
        total = inner(A, segre(blocks))
        for slot in range(3):
            assert contract_leave_slot(A, blocks, slot) @ blocks[slot] == pytest.approx(total)

    def test_leave_two_slots_orientation(self):
        """Test rows follow the first requested slot."""
        A = random_tensor([2, 3, 4], seed=8)
        blocks = [np.ones(2), np.ones(3), np.ones(4)]
        forward = contract_leave_two_slots(A, blocks, 0, 2)
        backward = contract_leave_two_slots(A, blocks, 2, 0)
        assert forward.shape == (2, 4)
        assert np.allclose(backward, forward.T)

    def test_leave_two_slots_same_slot(self):
        """Test repeated slots are rejected."""
        A = random_tensor([2, 2, 2], seed=0)
        with pytest.raises(InvalidInputError):
            contract_leave_two_slots(A, [np.ones(2)] * 3, 1, 1)

    def test_block_length_mismatch(self):
        """Test a block of the wrong length is rejected."""
        A = random_tensor([2, 3, 2], seed=0)
        with pytest.raises(DimensionMismatchError):
            contract_leave_slot(A, [np.ones(2), np.ones(2), np.ones(2)], 0)

    def test_vector_length_mismatch(self):
        """Test contracting with a vector of the wrong length fails."""
        with pytest.raises(DimensionMismatchError):
            contract_all_but_one(random_symmetric(3, 3, seed=0), np.ones(2))


class TestRankOneMaps:
    """Tests for veronese and segre."""

    def test_veronese_inner_product(self):
        """Test <A, x^{⊗k}> equals x·A x^{k-1}."""
        A = random_symmetric(3, 3, seed=10)
        x = np.array([0.6, 0.0, 0.8])
        assert inner(A, veronese(x, 3)) == pytest.approx(x @ contract_all_but_one(A, x))

    def test_veronese_norm(self):
        """Test ||x^{⊗k}|| = ||x||^k."""
        x = np.array([1.0, 2.0])
        assert hs_norm(veronese(x, 4)) == pytest.approx(np.linalg.norm(x) ** 4)

    def test_segre_shape(self):
        """Test the segre product of unit blocks."""
        T = segre(BlockVector((unit_vector(2, 0), unit_vector(3, 2), unit_vector(2, 1))))
        assert T.dims == (2, 3, 2)
        assert T.array[0, 2, 1] == 1.0
        assert hs_norm(T) == pytest.approx(1.0)


class TestBlockVector:
    """Tests for BlockVector helpers."""

    def test_from_stacked_round_trip(self):
        """Test splitting a stacked vector by dims."""
        x = BlockVector.from_stacked(np.arange(7.0), [2, 3, 2])
        assert x.dims == (2, 3, 2)
        assert np.array_equal(x[1], [2.0, 3.0, 4.0])
        assert np.array_equal(x.stacked(), np.arange(7.0))

    def test_normalized_on_sphere(self):
        """Test normalization puts every block on its sphere."""
        x = BlockVector((np.array([3.0, 4.0]), np.array([0.0, 2.0])))
        assert not x.on_sphere()
        assert x.normalized().on_sphere()


class TestOrthogonalAction:
    """Tests for the orthogonal group action."""

    def test_rejects_non_orthogonal(self):
        """Test OrthogonalMatrix verifies UᵀU = I."""
        with pytest.raises(InvalidInputError):
            OrthogonalMatrix(np.array([[1.0, 1.0], [0.0, 1.0]]))

    @pytest.mark.parametrize("seed", range(10))
    def test_norm_preserved(self, seed):
        """Test ||U·A|| = ||A||."""
        A = random_symmetric(3, 3, seed=seed)
        U = random_orthogonal(3, seed=seed + 100)
        assert abs(hs_norm(orth_act(U, A)) - hs_norm(A)) <= 1e-11

    @pytest.mark.parametrize("seed", range(10))
    def test_contraction_equivariance(self, seed):
        """Test (U·A)(Ux)^{k-1} = U (A x^{k-1})."""
        A = random_symmetric(3, 4, seed=seed)
        U = random_orthogonal(3, seed=seed + 200)
        x = np.random.default_rng(seed).standard_normal(3)
        lhs = contract_all_but_one(orth_act(U, A), U @ x)
        assert np.allclose(lhs, U @ contract_all_but_one(A, x), atol=1e-11)

    def test_identity_action(self):
        """Test the identity leaves a nonsymmetric tensor unchanged."""
        A = random_tensor([3, 3, 3], seed=11)
        assert np.allclose(orth_act(np.eye(3), A).array, A.array)

    def test_action_composes(self):
        """Test (UV)·A = U·(V·A)."""
        A = random_tensor([2, 2, 2], seed=12)
        U = random_orthogonal(2, seed=1)
        V = random_orthogonal(2, seed=2)
        assert np.allclose(orth_act(U @ V, A).array, orth_act(U, orth_act(V, A)).array)

    def test_keeps_symmetric_kind(self):
        """Test a symmetric tensor stays symmetric."""
        A = random_symmetric(2, 3, seed=13)
        assert isinstance(orth_act(random_orthogonal(2, seed=3), A), SymmetricTensor)
