"""Z-eigenpairs of symmetric tensors.

A unit vector x is a Z-eigenvector of A when A x^{k-1} = λ x, equivalently
when T(x) = A x^{k-1} - <A, x^{⊗k}> x vanishes. Nondegeneracy is certified
two ways: nonsingularity of the Jacobian of T, and nonsingularity of the
Riemannian Hessian of S(x) = <A, x^{⊗k}> on the unit sphere. For λ != 0
the two verdicts coincide.

The general (nonsymmetric) variants at the bottom of the module treat
E-eigenvectors of arbitrary cubical tensors with the same machinery.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from scipy import linalg

from ..errors import InvalidInputError, NotAnEigenpairError
from ..tensors.core import (
    AnyTensor,
    DenseTensor,
    SymmetricTensor,
    contract_all_but_one,
    contract_all_but_two,
    contract_leave_slot,
    contraction_jacobian,
    hs_norm,
)
from .certification import (
    DEFAULT_CERT_TOL,
    CertificationReport,
    abs_eigenvalue_extremes,
    relative_verdict,
    singular_value_extremes,
)

logger = logging.getLogger(__name__)

UNIT_TOL = 1e-8


@dataclass(eq=False)
class ZEigenPair:
    """A Z-eigenvalue with its unit eigenvector.

    Attributes:
        eigenvalue: λ = <A, x^{⊗k}>.
        x: Unit vector.
        residual: Euclidean norm of T(x).
        converged: Whether the producing solver met its tolerance.
        iterations: Solver iterations spent.
        method: Producing solver ("power", "newton", "closed_form", "sweep").
    """

    eigenvalue: float
    x: np.ndarray
    residual: float
    converged: bool = True
    iterations: int = 0
    method: str = ""

    def to_dict(self) -> dict:
        return {
            "lambda": float(self.eigenvalue),
            "x": [float(v) for v in self.x],
            "residual": float(self.residual),
            "converged": bool(self.converged),
            "iterations": int(self.iterations),
            "method": self.method,
        }


def _unit(A: AnyTensor, x, tol: float = UNIT_TOL) -> np.ndarray:
    n = A.dims[0]
    vec = np.asarray(x, dtype=float).ravel()
    if vec.shape != (n,):
        raise InvalidInputError(f"expected a vector of length {n}, got {vec.shape[0]}", field="x")
    norm = np.linalg.norm(vec)
    if abs(norm - 1.0) > tol:
        raise InvalidInputError(f"x must be a unit vector, got norm {norm:.12g}", field="x")
    return vec


def _normalize(vec: np.ndarray) -> np.ndarray:
    norm = np.linalg.norm(vec)
    if norm == 0.0:
        raise InvalidInputError("cannot normalize the zero vector", field="x")
    return vec / norm


def z_eigenvalue(A: AnyTensor, x) -> float:
    """λ = <A, x^{⊗k}> = xᵀ(A x^{k-1})."""
    vec = np.asarray(x, dtype=float)
    return float(vec @ contract_all_but_one(A, vec))


def z_residual(A: SymmetricTensor, x) -> np.ndarray:
    """T(x) = A x^{k-1} - λ x with λ = <A, x^{⊗k}>.

    Raises:
        InvalidInputError: If x is not a unit vector within 1e-8.
    """
    vec = _unit(A, x)
    y = contract_all_but_one(A, vec)
    return y - (vec @ y) * vec


def z_jacobian(A: SymmetricTensor, x) -> np.ndarray:
    """Derivative of T at x.

    Returns (k-1) A x^{k-2} - λI - k x (A x^{k-1})ᵀ, the exact derivative of
    T. At an eigenpair the last term equals kλ x xᵀ and the matrix is
    symmetric.
    """
    vec = _unit(A, x)
    k = A.order
    matrix = contract_all_but_two(A, vec)
    y = matrix @ vec
    lam = vec @ y
    return (k - 1) * matrix - lam * np.eye(len(vec)) - k * np.outer(vec, y)


def tangent_basis(x) -> np.ndarray:
    """Orthonormal basis of the tangent space of the sphere at x.

    Builds the Householder reflector mapping x to a multiple of e1 and
    returns its last n-1 columns. Deterministic in x.
    """
    vec = np.asarray(x, dtype=float).ravel()
    norm = np.linalg.norm(vec)
    if norm == 0.0:
        raise InvalidInputError("tangent basis of the zero vector is undefined", field="x")
    vec = vec / norm
    v = vec.copy()
    v[0] += 1.0 if vec[0] >= 0 else -1.0
    reflector = np.eye(len(vec)) - 2.0 * np.outer(v, v) / (v @ v)
    return reflector[:, 1:]


def riem_hessian_z(A: SymmetricTensor, x) -> np.ndarray:
    """Riemannian Hessian of S at a Z-eigenvector, in the tangent_basis frame.

    H = Pᵀ (k(k-1) A x^{k-2} - kλ I) P. Advisory away from eigenvectors.
    """
    vec = _unit(A, x)
    k = A.order
    P = tangent_basis(vec)
    matrix = contract_all_but_two(A, vec)
    lam = vec @ matrix @ vec
    hessian = P.T @ (k * (k - 1) * matrix - k * lam * np.eye(len(vec))) @ P
    return 0.5 * (hessian + hessian.T)


def auto_shift(A: AnyTensor) -> float:
    """Convexifying shift (k-1)·||A||_HS for the power iteration."""
    return (A.order - 1) * hs_norm(A)


def solve_z_power(
    A: SymmetricTensor,
    x0,
    shift: Union[float, str] = "auto",
    tol: float = 1e-12,
    maxit: int = 1000,
) -> ZEigenPair:
    """Shifted symmetric higher-order power iteration.

    Iterates x <- normalize(A x^{k-1} + αx). A positive shift converges to
    local maxima of S on the sphere, a negative one (with the sign flip of
    the concave variant) to local minima.

    Args:
        A: Symmetric tensor.
        x0: Starting vector (normalized internally).
        shift: α, or "auto" for (k-1)·||A||_HS.
        tol: Target residual ||T(x)||.
        maxit: Iteration cap.

    Returns:
        ZEigenPair with the achieved residual; ``converged`` is False when
        maxit ran out first.
    """
    if tol <= 0:
        raise InvalidInputError(f"tol must be positive, got {tol}", field="tol")
    alpha = auto_shift(A) if shift == "auto" else float(shift)
    x = _normalize(np.asarray(x0, dtype=float))

    iterations = 0
    residual = float(np.linalg.norm(z_residual(A, x)))
    while residual > tol and iterations < maxit:
        phi = contract_all_but_one(A, x) + alpha * x
        if alpha < 0:
            phi = -phi
        norm = np.linalg.norm(phi)
        if norm == 0.0:
            logger.debug("Power iteration hit a zero update; stopping")
            break
        x = phi / norm
        iterations += 1
        residual = float(np.linalg.norm(z_residual(A, x)))

    converged = residual <= tol
    if not converged:
        logger.debug(f"Power iteration stopped at residual {residual:.3e} after {iterations} steps")
    return ZEigenPair(
        eigenvalue=z_eigenvalue(A, x),
        x=x,
        residual=residual,
        converged=converged,
        iterations=iterations,
        method="power",
    )


def solve_z_newton(
    A: SymmetricTensor,
    x0,
    tol: float = 1e-12,
    maxit: int = 50,
    max_step: float = 0.5,
) -> ZEigenPair:
    """Riemannian Newton iteration for T(x) = 0 on the unit sphere.

    Solves (Pᵀ ∇T P) y = -Pᵀ T(x) and retracts x <- normalize(x + P y).
    Converges quadratically near nondegenerate eigenvectors of any Morse
    index, saddles included.

    Args:
        A: Symmetric tensor.
        x0: Starting vector (normalized internally).
        tol: Target residual.
        maxit: Iteration cap.
        max_step: Longest tangent step taken per iteration.
    """
    x = _normalize(np.asarray(x0, dtype=float))
    iterations = 0
    residual = float(np.linalg.norm(z_residual(A, x)))
    while residual > tol and iterations < maxit:
        P = tangent_basis(x)
        reduced = P.T @ z_jacobian(A, x) @ P
        rhs = -P.T @ z_residual(A, x)
        step, *_ = linalg.lstsq(reduced, rhs)
        length = np.linalg.norm(step)
        if length > max_step:
            step *= max_step / length
        candidate = _normalize(x + P @ step)
        iterations += 1
        new_residual = float(np.linalg.norm(z_residual(A, candidate)))
        if length == 0.0 or (new_residual >= residual and residual < 1e3 * tol):
            break
        x, residual = candidate, new_residual

    return ZEigenPair(
        eigenvalue=z_eigenvalue(A, x),
        x=x,
        residual=residual,
        converged=residual <= tol,
        iterations=iterations,
        method="newton",
    )


def certify_z(
    A: SymmetricTensor,
    x,
    tol: float = DEFAULT_CERT_TOL,
    residual_tol: Optional[float] = None,
) -> CertificationReport:
    """Certify a numerical Z-eigenvector through both routes.

    Args:
        A: Symmetric tensor.
        x: Unit vector with ||T(x)|| <= residual_tol.
        tol: Relative nondegeneracy threshold.
        residual_tol: Eigenvector acceptance threshold, defaults to tol.

    Returns:
        CertificationReport. For |λ| > tol the verdict is the Jacobian one and
        ``agreement`` compares it with the Hessian verdict; for |λ| <= tol the
        Jacobian route decides alone and agreement is None.

    Raises:
        NotAnEigenpairError: If the residual exceeds residual_tol.
    """
    residual_tol = tol if residual_tol is None else residual_tol
    vec = _unit(A, x)
    residual = float(np.linalg.norm(z_residual(A, vec)))
    if residual > residual_tol:
        raise NotAnEigenpairError(
            f"residual {residual:.3e} exceeds {residual_tol:.1e}; not a Z-eigenvector", field="x"
        )

    lam = z_eigenvalue(A, vec)
    jac_min, jac_max = singular_value_extremes(z_jacobian(A, vec))
    hess_min, hess_max = abs_eigenvalue_extremes(riem_hessian_z(A, vec))
    jac_ok = relative_verdict(jac_min, jac_max, tol)
    hess_ok = relative_verdict(hess_min, hess_max, tol)

    nonzero = abs(lam) > tol
    return CertificationReport(
        route="both" if nonzero else "jacobian",
        eigenvalue=lam,
        nondegenerate=jac_ok,
        tol=tol,
        residual=residual,
        jac_min_sv=jac_min,
        jac_max_sv=jac_max,
        hess_min_abs_eig=hess_min,
        hess_max_abs_eig=hess_max,
        jacobian_nondegenerate=jac_ok,
        hessian_nondegenerate=hess_ok,
        agreement=(jac_ok == hess_ok) if nonzero else None,
    )


# ---------------------------------------------------------------------------
# General (nonsymmetric) tensors
# ---------------------------------------------------------------------------


def _cubical(A: AnyTensor) -> None:
    if len(set(A.dims)) != 1:
        raise InvalidInputError(f"E-eigenvectors need equal dims, got {list(A.dims)}", field="dims")


def z_residual_general(A: DenseTensor, x) -> np.ndarray:
    """T(x) = A x^{k-1} - <A, x^{⊗k}> x for any cubical tensor."""
    _cubical(A)
    vec = _unit(A, x)
    y = contract_all_but_one(A, vec)
    return y - (vec @ y) * vec


def z_jacobian_general(A: DenseTensor, x) -> np.ndarray:
    """Exact derivative of T for a cubical tensor.

    ∇T = Σ_{j>=2} A(slots 1 and j open) - λI - x gᵀ, where g is the gradient
    of λ(x), the sum over slots of the single-slot contractions.
    """
    _cubical(A)
    vec = _unit(A, x)
    blocks = [vec] * A.order
    lam = z_eigenvalue(A, vec)
    gradient = sum(contract_leave_slot(A, blocks, slot) for slot in range(A.order))
    return contraction_jacobian(A, vec) - lam * np.eye(len(vec)) - np.outer(vec, gradient)


def certify_e(
    A: DenseTensor,
    x,
    tol: float = DEFAULT_CERT_TOL,
    residual_tol: Optional[float] = None,
) -> CertificationReport:
    """Certify a real E-eigenvector of a cubical tensor by the Jacobian route."""
    residual_tol = tol if residual_tol is None else residual_tol
    residual = float(np.linalg.norm(z_residual_general(A, x)))
    if residual > residual_tol:
        raise NotAnEigenpairError(
            f"residual {residual:.3e} exceeds {residual_tol:.1e}; not an E-eigenvector", field="x"
        )
    jac_min, jac_max = singular_value_extremes(z_jacobian_general(A, x))
    verdict = relative_verdict(jac_min, jac_max, tol)
    return CertificationReport(
        route="jacobian",
        eigenvalue=z_eigenvalue(A, x),
        nondegenerate=verdict,
        tol=tol,
        residual=residual,
        jac_min_sv=jac_min,
        jac_max_sv=jac_max,
        jacobian_nondegenerate=verdict,
    )
