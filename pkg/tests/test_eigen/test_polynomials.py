"""Tests for univariate roots, binary forms and resultants."""

import numpy as np
import pytest

from src.eigen.polynomials import (
    BinaryForm,
    aberth_roots,
    binary_forms_n2,
    cluster_roots,
    direction_distance,
    interpolate_determinant,
    normalize_direction,
    resultant,
    sylvester_matrix,
    trim_leading,
)
from src.tensors.core import random_symmetric, unit_vector, veronese


class TestAberth:
    """Tests for Aberth root finding."""

    def test_simple_real_roots(self):
        """Test a cubic with roots 1, 2, -3."""
        roots = aberth_roots(np.poly([1.0, 2.0, -3.0]))
        assert np.allclose(sorted(roots.real), [-3.0, 1.0, 2.0], atol=1e-10)
        assert np.allclose(roots.imag, 0.0, atol=1e-10)

    def test_complex_pair(self):
        """Test x^2 + 1 has roots ±i."""
        roots = aberth_roots([1.0, 0.0, 1.0])
        assert np.allclose(sorted(roots.imag), [-1.0, 1.0], atol=1e-12)

    def test_leading_zeros_trimmed(self):
        """Test negligible leading coefficients lower the degree."""
        assert len(aberth_roots([0.0, 1e-20, 1.0, -2.0])) == 1

    def test_constant_has_no_roots(self):
        """Test a constant polynomial has no roots."""
        assert len(aberth_roots([3.0])) == 0

    def test_trim_leading_zero_polynomial(self):
        """Test the zero polynomial trims to nothing."""
        assert trim_leading([0.0, 0.0]).size == 0


class TestClusterRoots:
    """Tests for root clustering."""

    def test_quadruple_root(self):
        """Test the four roots of (x-1)^4 merge into one cluster."""
        coeffs = np.poly([1.0] * 4)
        clusters = cluster_roots(aberth_roots(coeffs), coeffs)
        assert len(clusters) == 1
        center, multiplicity = clusters[0]
        assert multiplicity == 4
        assert abs(center - 1.0) <= 1e-6

    def test_close_simple_roots_kept_apart(self):
        """Test distinct roots 1e-3 apart are not merged."""
        coeffs = np.poly([1.0, 1.001, 3.0])
        clusters = cluster_roots(aberth_roots(coeffs), coeffs)
        assert [m for _, m in clusters] == [1, 1, 1]

    def test_sorted_output(self):
        """Test clusters are sorted by real then imaginary part."""
        clusters = cluster_roots([2.0 + 0j, -1.0 + 0j, 0.5 + 1j])
        assert [c.real for c, _ in clusters] == [-1.0, 0.5, 2.0]


class TestBinaryForms:
    """Tests for BinaryForm and projective roots."""

    def test_evaluate(self):
        """Test x1^2 x2 evaluated at (2, 3)."""
        form = BinaryForm([0.0, 1.0, 0.0, 0.0])
        assert form(2.0, 3.0) == pytest.approx(12.0)

    def test_projective_roots_with_multiplicity(self):
        """Test x1^2 x2 vanishes simply at e1 and doubly at e2."""
        roots = BinaryForm([0.0, 1.0, 0.0, 0.0]).projective_roots()
        found = {tuple(np.round(direction.real, 12)): m for direction, m in roots}
        assert found == {(1.0, 0.0): 1, (0.0, 1.0): 2}

    def test_projective_roots_interior(self):
        """Test x1^2 - x2^2 vanishes at (1, 1) and (1, -1)."""
        roots = BinaryForm([1.0, 0.0, -1.0]).projective_roots()
        directions = [direction for direction, _ in roots]
        assert len(directions) == 2
        for target in ([1.0, 1.0], [1.0, -1.0]):
            assert min(direction_distance(d, target) for d in directions) <= 1e-12

    def test_binary_forms_of_e1_cubed(self):
        """Test (A x^2)_1 = x1^2 and (A x^2)_2 = 0 for e1^{⊗3}."""
        first, second = binary_forms_n2(veronese(unit_vector(2, 0), 3).array)
        assert np.allclose(first.coeffs, [1.0, 0.0, 0.0])
        assert second.is_zero()

    def test_binary_forms_evaluate_contraction(self):
        """Test the forms reproduce A x^{k-1} at a point."""
        A = random_symmetric(2, 4, seed=1)
        x = np.array([0.3, -1.2])
        forms = binary_forms_n2(A.array)
        values = [form(*x) for form in forms]
        expected = A.array @ x @ x @ x
        assert np.allclose(values, expected)


class TestResultant:
    """Tests for Sylvester matrices and resultants."""

    def test_sylvester_shape(self):
        """Test a degree-2 and degree-3 pair gives a 5×5 matrix."""
        assert sylvester_matrix([1, 2, 3], [1, 0, 0, 1]).shape == (5, 5)

    def test_common_root(self):
        """Test proportional linear forms have zero resultant."""
        assert abs(resultant([1.0, -2.0], [2.0, -4.0])) <= 1e-14

    def test_no_common_root(self):
        """Test distinct linear forms have nonzero resultant."""
        assert abs(resultant([1.0, -2.0], [1.0, -3.0])) == pytest.approx(1.0)

    def test_interpolate_determinant(self):
        """Test det(diag(λ-1, λ-2)) = λ^2 - 3λ + 2."""
        coeffs = interpolate_determinant(lambda lam: np.diag([lam - 1.0, lam - 2.0]), 2)
        assert np.allclose(coeffs, [1.0, -3.0, 2.0], atol=1e-12)


class TestDirections:
    """Tests for direction helpers."""

    def test_normalize_direction(self):
        """Test the largest entry becomes 1."""
        assert np.allclose(normalize_direction(np.array([2.0, -4.0])), [-0.5, 1.0])

    def test_direction_distance(self):
        """Test parallel lines are at distance 0 and orthogonal ones at 1."""
        assert direction_distance([1.0, 0.0], [-3.0, 0.0]) == pytest.approx(0.0)
        assert direction_distance([1.0, 0.0], [0.0, 1.0]) == pytest.approx(1.0)
