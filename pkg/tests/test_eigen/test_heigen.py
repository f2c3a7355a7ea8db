"""Tests for H-eigenpairs and the n = 2 characteristic polynomial."""

import numpy as np
import pytest

from src.errors import InvalidInputError, NotAnEigenpairError
from src.eigen.heigen import (
    charpoly_n2,
    h_jacobian,
    h_nondegenerate,
    h_residual,
    solve_h_n2,
)
from src.eigen.polynomials import binary_forms_n2, direction_distance, resultant
from src.tensors.core import diagonal_tensor, random_symmetric, random_tensor, unit_vector, veronese

E1 = unit_vector(2, 0)
E2 = unit_vector(2, 1)


@pytest.fixture
def identity_diagonal():
    """Order-3 diagonal tensor diag(1, 1)."""
    return diagonal_tensor([1.0, 1.0], 3)


@pytest.fixture
def twice_e1_cubed():
    """2·e1^{⊗3}."""
    return 2.0 * veronese(E1, 3)


class TestHResidual:
    """Tests for h_residual and h_jacobian."""

    @pytest.mark.parametrize("x", [[1.0, 1.0], [1.0, -1.0], [1.0, 0.0], [0.0, 1.0]])
    def test_diagonal_eigenvectors(self, identity_diagonal, x):
        """Test every listed direction is an eigenvector for λ = 1."""
        assert np.allclose(h_residual(identity_diagonal, x, 1.0), 0.0)

    def test_scaling(self):
        """Test residual(t·x) = t^{k-1}·residual(x)."""
        A = random_symmetric(3, 4, seed=0)
        x = np.array([0.2, -0.7, 1.1])
        assert np.allclose(h_residual(A, 2.0 * x, 0.5), 8.0 * h_residual(A, x, 0.5))

    def test_rejects_zero_vector(self, identity_diagonal):
        """Test eigenvectors must be nonzero."""
        with pytest.raises(InvalidInputError):
            h_residual(identity_diagonal, [0.0, 0.0], 1.0)

    def test_jacobian_vanishes_on_diagonal(self, identity_diagonal):
        """Test the Jacobian of diag(1,1) at (e1, 1) is zero."""
        assert np.allclose(h_jacobian(identity_diagonal, E1, 1.0), 0.0)

    def test_jacobian_annihilates_eigenvector(self):
        """Test ∇·x = (k-1)·residual, the Euler identity."""
        A = random_symmetric(2, 4, seed=3)
        x = np.array([0.4, 1.0])
        assert np.allclose(h_jacobian(A, x, 0.7) @ x, 3 * h_residual(A, x, 0.7))

    def test_jacobian_finite_difference(self):
        """Test the Jacobian of a nonsymmetric tensor against differences."""
        A = random_tensor([3, 3, 3], seed=4)
        x = np.array([0.5, -0.2, 0.9])
        h = 1e-6
        numeric = np.column_stack([
            (h_residual(A, x + h * e, 0.3) - h_residual(A, x - h * e, 0.3)) / (2 * h) for e in np.eye(3)
        ])
        assert np.allclose(h_jacobian(A, x, 0.3), numeric, atol=1e-8)


class TestHNondegenerate:
    """Tests for the rank-based verdict."""

    def test_diagonal_degenerate(self, identity_diagonal):
        """Test (e1, 1) of diag(1,1) is degenerate."""
        assert h_nondegenerate(identity_diagonal, E1, 1.0) is False

    def test_zero_eigenvalue_degenerate(self, twice_e1_cubed):
        """Test (e2, 0) of 2·e1^{⊗3} is degenerate."""
        assert h_nondegenerate(twice_e1_cubed, E2, 0.0) is False

    def test_rejects_non_eigenpair(self, identity_diagonal):
        """Test the verdict needs an eigenpair."""
        with pytest.raises(NotAnEigenpairError):
            h_nondegenerate(identity_diagonal, [1.0, 0.5], 2.0)


class TestCharPoly:
    """Tests for charpoly_n2."""

    def test_diagonal_quartic(self, identity_diagonal):
        """Test diag(1,1), k=3 gives (λ-1)^4."""
        charpoly = charpoly_n2(identity_diagonal)
        assert charpoly.degree == 4
        assert np.allclose(charpoly.coefficients, [1.0, -4.0, 6.0, -4.0, 1.0], atol=1e-10)

    @pytest.mark.parametrize("k,degree", [(3, 4), (4, 6), (5, 8)])
    def test_generic_degree(self, k, degree):
        """Test the degree is 2(k-1) for Gaussian tensors."""
        charpoly = charpoly_n2(random_symmetric(2, k, seed=k))
        assert charpoly.degree == degree
        assert not charpoly.deficient

    def test_matches_resultant(self):
        """Test the interpolated polynomial agrees with a direct resultant."""
        A = random_symmetric(2, 3, seed=5)
        charpoly = charpoly_n2(A)
        lam = 0.37
        f, g = (form.coeffs.copy() for form in binary_forms_n2(A.array))
        f[0] -= lam
        g[-1] -= lam
        direct = resultant(f, g).real
        assert charpoly.leading_coefficient * charpoly(lam).real == pytest.approx(direct, rel=1e-8)

    def test_rejects_other_dimensions(self):
        """Test the exact path needs n = 2."""
        with pytest.raises(InvalidInputError):
            charpoly_n2(random_symmetric(3, 3, seed=0))


class TestSolveHN2:
    """Tests for solve_h_n2."""

    def test_diagonal_whole_space(self, identity_diagonal):
        """Test diag(1,1), k=3 reports four λ = 1 directions."""
        solution = solve_h_n2(identity_diagonal)
        assert len(solution) == 4
        assert solution.total_multiplicity == 4
        for pair in solution:
            assert pair.eigenvalue == pytest.approx(1.0)
            assert pair.whole_space
            assert pair.nondegenerate is False
        for target in ([1.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, -1.0]):
            assert min(direction_distance(p.x, target) for p in solution) <= 1e-12

    def test_twice_e1_cubed(self, twice_e1_cubed):
        """Test 2·e1^{⊗3} has (e1, 2) and (e2, 0)."""
        solution = solve_h_n2(twice_e1_cubed)
        assert solution.total_multiplicity == 4
        found = {round(p.eigenvalue.real, 8): p for p in solution}
        assert set(found) == {0.0, 2.0}
        assert direction_distance(found[2.0].x, E1) <= 1e-8
        assert direction_distance(found[0.0].x, E2) <= 1e-8
        assert found[2.0].root_multiplicity == 2

    @pytest.mark.parametrize("seed", range(10))
    def test_random_cubic(self, seed):
        """Test Gaussian k=3 tensors have four nondegenerate eigenpairs."""
        A = random_symmetric(2, 3, seed=seed)
        solution = solve_h_n2(A)
        assert solution.total_multiplicity == 4
        assert len(solution) == 4
        for pair in solution:
            assert pair.residual <= 1e-8
            assert pair.simple_root
            assert pair.nondegenerate is True
            assert np.linalg.norm(h_jacobian(A, pair.x, pair.eigenvalue) @ pair.x) <= 1e-7

    def test_random_quartic_count(self):
        """Test Gaussian k=4 tensors have six eigenvalues."""
        assert solve_h_n2(random_symmetric(2, 4, seed=11)).total_multiplicity == 6

    def test_nonsymmetric_input(self):
        """Test nonsymmetric tensors are handled by the same path."""
        solution = solve_h_n2(random_tensor([2, 2, 2], seed=12))
        assert solution.total_multiplicity == 4
        assert all(pair.residual <= 1e-8 for pair in solution)

    def test_to_dict_complex_values(self):
        """Test complex eigenvalues serialize as [re, im]."""
        pair = solve_h_n2(random_symmetric(2, 3, seed=1))[0]
        data = pair.to_dict()
        assert len(data["lambda"]) == 2
        assert all(len(v) == 2 for v in data["x"])
