"""Brute-force oracles for n = 2 symmetric tensors.

sweep_z_n2 finds every real Z-eigenpair by locating the zeros of
g(θ) = <A x(θ)^{k-1}, x⊥(θ)> on the circle. e_count_n2 counts complex
E-eigen-lines as projective roots of the binary form
x2·(A x^{k-1})_1 - x1·(A x^{k-1})_2.
"""

import logging
from dataclasses import dataclass, field
from typing import List

import numpy as np
from scipy.optimize import brentq

from ..errors import InvalidInputError
from ..eigen.polynomials import BinaryForm, binary_forms_n2
from ..eigen.zeigen import ZEigenPair, z_residual
from ..tensors.core import AnyTensor, contract_all_but_two, hs_norm

logger = logging.getLogger(__name__)

DEFAULT_GRID = 4096
ANGLE_MERGE_TOL = 1e-9
SWEEP_RESIDUAL_TOL = 1e-10
TANGENT_ROOT_TOL = 1e-12
TWO_PI = 2.0 * np.pi


@dataclass(eq=False)
class SweepResult:
    """Real Z-eigenpairs found by the angle sweep.

    Attributes:
        eigenpairs: Pairs sorted by angle in [0, 2π).
        angles: Angle of each pair.
        brackets: Sign-change brackets plus tangential candidates refined.
        refinement_iterations: Total root-finder iterations.
    """

    eigenpairs: List[ZEigenPair]
    angles: List[float]
    brackets: int = 0
    refinement_iterations: int = 0

    def eigen_lines(self, min_abs_lambda: float = 0.0) -> List[ZEigenPair]:
        """One pair per line (angles θ and θ+π identified), filtered by |λ|."""
        lines = [
            pair for pair, angle in zip(self.eigenpairs, self.angles)
            if angle < np.pi - ANGLE_MERGE_TOL and abs(pair.eigenvalue) > min_abs_lambda
        ]
        return lines

    def to_dict(self) -> dict:
        return {
            "eigenpairs": [pair.to_dict() for pair in self.eigenpairs],
            "angles": [float(a) for a in self.angles],
            "brackets": self.brackets,
            "refinement_iterations": self.refinement_iterations,
        }


@dataclass
class ECount:
    """Complex E-eigen-line count of an n = 2 tensor.

    Attributes:
        distinct: Number of distinct projective roots.
        multiplicities: Multiplicity of each root.
        identically_zero: Every direction is an E-eigenvector.
    """

    distinct: int
    multiplicities: List[int] = field(default_factory=list)
    identically_zero: bool = False

    @property
    def total(self) -> int:
        return sum(self.multiplicities)

    def to_dict(self) -> dict:
        return {
            "distinct": self.distinct,
            "multiplicities": list(self.multiplicities),
            "total": self.total,
            "identically_zero": self.identically_zero,
        }


def _check_n2(A: AnyTensor) -> None:
    if len(set(A.dims)) != 1 or A.dims[0] != 2:
        raise InvalidInputError(f"the n = 2 oracle needs dims all equal to 2, got {list(A.dims)}", field="dims")


def _batch_contract(array: np.ndarray, points: np.ndarray) -> np.ndarray:
    """A x^{k-1} for each row x of points."""
    result = np.einsum("...j,gj->g...", array, points)
    for _ in range(array.ndim - 2):
        result = np.einsum("g...j,gj->g...", result, points)
    return result


def _g(array: np.ndarray, theta: float) -> float:
    x = np.array([np.cos(theta), np.sin(theta)])
    perp = np.array([-x[1], x[0]])
    y = _batch_contract(array, x[None, :])[0]
    return float(y @ perp)


def _g_prime(A: AnyTensor, theta: float) -> float:
    """g'(θ) = (k-1) x⊥ᵀ (A x^{k-2}) x⊥ - <A x^{k-1}, x>."""
    x = np.array([np.cos(theta), np.sin(theta)])
    perp = np.array([-x[1], x[0]])
    matrix = contract_all_but_two(A, x)
    return float((A.order - 1) * perp @ matrix @ perp - x @ matrix @ x)


def _merge_angles(angles: List[float]) -> List[float]:
    merged: List[float] = []
    for angle in sorted(a % TWO_PI for a in angles):
        if merged and angle - merged[-1] <= ANGLE_MERGE_TOL:
            continue
        merged.append(angle)
    if len(merged) > 1 and merged[0] + TWO_PI - merged[-1] <= ANGLE_MERGE_TOL:
        merged.pop()
    return merged


def sweep_z_n2(A: AnyTensor, grid: int = DEFAULT_GRID, tol: float = SWEEP_RESIDUAL_TOL) -> SweepResult:
    """Locate every real Z-eigenpair of a 2-dimensional symmetric tensor.

    Sign changes of g on a uniform grid are refined with Brent's method.
    Even-multiplicity zeros (g touches zero without changing sign) are
    caught at local minima of |g| by rooting g' instead.

    Args:
        A: Symmetric tensor with n = 2.
        grid: Number of grid angles.
        tol: Residual every returned pair must meet.

    Raises:
        InvalidInputError: If n != 2 or grid < 8.
    """
    _check_n2(A)
    if grid < 8:
        raise InvalidInputError(f"grid must be at least 8, got {grid}", field="grid")
    array = A.array
    thetas = TWO_PI * np.arange(grid + 1) / grid
    points = np.column_stack([np.cos(thetas), np.sin(thetas)])
    perps = np.column_stack([-points[:, 1], points[:, 0]])
    values = np.sum(_batch_contract(array, points) * perps, axis=1)
    accept = TANGENT_ROOT_TOL * max(1.0, hs_norm(A))

    candidates: List[float] = []
    brackets = 0
    iterations = 0
    for i in range(grid):
        left, right = values[i], values[i + 1]
        if left == 0.0:
            candidates.append(thetas[i])
        elif left * right < 0.0:
            root, info = brentq(
                lambda t: _g(array, t), thetas[i], thetas[i + 1], xtol=1e-15, full_output=True
            )
            brackets += 1
            iterations += info.iterations
            candidates.append(root)

    # Tangential zeros: local minima of |g| without a sign change nearby.
    magnitude = np.abs(values[:-1])
    for i in range(grid):
        prev_i, next_i = (i - 1) % grid, (i + 1) % grid
        if not (magnitude[i] <= magnitude[prev_i] and magnitude[i] <= magnitude[next_i]):
            continue
        if values[i] == 0.0 or values[prev_i] * values[i] < 0.0 or values[i] * values[next_i] < 0.0:
            continue
        lo, hi = thetas[i] - TWO_PI / grid, thetas[i] + TWO_PI / grid
        d_lo, d_hi = _g_prime(A, lo), _g_prime(A, hi)
        if d_lo * d_hi > 0.0:
            continue
        root, info = brentq(lambda t: _g_prime(A, t), lo, hi, xtol=1e-15, full_output=True)
        iterations += info.iterations
        if abs(_g(array, root)) <= accept:
            brackets += 1
            candidates.append(root)

    pairs: List[ZEigenPair] = []
    angles: List[float] = []
    for angle in _merge_angles(candidates):
        x = np.array([np.cos(angle), np.sin(angle)])
        residual = float(np.linalg.norm(z_residual(A, x)))
        if residual > tol:
            logger.debug(f"Sweep candidate at θ={angle:.12f} rejected, residual {residual:.2e}")
            continue
        lam = float(x @ contract_all_but_two(A, x) @ x)
        pairs.append(ZEigenPair(eigenvalue=lam, x=x, residual=residual, method="sweep"))
        angles.append(angle)

    logger.debug(f"Sweep found {len(pairs)} eigenpairs from {brackets} brackets")
    return SweepResult(eigenpairs=pairs, angles=angles, brackets=brackets, refinement_iterations=iterations)


def e_form_n2(A: AnyTensor) -> BinaryForm:
    """p(x1, x2) = x2·(A x^{k-1})_1 - x1·(A x^{k-1})_2, a form of degree k."""
    _check_n2(A)
    first, second = binary_forms_n2(A.array)
    d = A.order - 1
    coeffs = np.zeros(d + 2)
    coeffs[1:] += first.coeffs.real
    coeffs[:-1] -= second.coeffs.real
    return BinaryForm(coeffs)


def e_count_n2(A: AnyTensor, zero_tol: float = 1e-12) -> ECount:
    """Count complex E-eigen-lines of a 2-dimensional tensor.

    Returns:
        ECount; generic tensors give k distinct simple lines.
    """
    form = e_form_n2(A)
    if form.scale() <= zero_tol * max(1.0, hs_norm(A)):
        logger.warning("E-form vanishes identically; every direction is an E-eigenvector")
        return ECount(distinct=0, multiplicities=[], identically_zero=True)
    roots = form.projective_roots()
    return ECount(distinct=len(roots), multiplicities=[m for _, m in roots])
