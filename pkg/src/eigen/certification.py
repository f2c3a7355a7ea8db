"""Nondegeneracy verdicts and the certification report shared by all solvers."""

from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np
from scipy import linalg

DEFAULT_CERT_TOL = 1e-8


@dataclass
class CertificationReport:
    """Spectral diagnostics of a Jacobian and/or Riemannian Hessian.

    Attributes:
        route: "jacobian", "hessian" or "both".
        eigenvalue: Eigenvalue (or singular value) of the certified object.
        jac_min_sv: Smallest singular value of the Jacobian, if computed.
        jac_max_sv: Largest singular value of the Jacobian, if computed.
        hess_min_abs_eig: Smallest |eigenvalue| of the tangent-frame Hessian.
        hess_max_abs_eig: Largest |eigenvalue| of the tangent-frame Hessian.
        jacobian_nondegenerate: Verdict of the Jacobian route.
        hessian_nondegenerate: Verdict of the Hessian route.
        nondegenerate: Final verdict.
        agreement: Whether both routes agree; None when undefined (λ = 0
            or a single route).
        tol: Relative threshold used for the verdicts.
        residual: Residual of the certified point.
    """

    route: str
    eigenvalue: float
    nondegenerate: bool
    tol: float
    residual: float
    jac_min_sv: Optional[float] = None
    jac_max_sv: Optional[float] = None
    hess_min_abs_eig: Optional[float] = None
    hess_max_abs_eig: Optional[float] = None
    jacobian_nondegenerate: Optional[bool] = None
    hessian_nondegenerate: Optional[bool] = None
    agreement: Optional[bool] = None

    def to_dict(self) -> dict:
        return asdict(self)


def relative_verdict(min_value: float, max_value: float, tol: float) -> bool:
    """Nondegeneracy test: min_value > tol * max(1, max_value)."""
    return bool(min_value > tol * max(1.0, max_value))


def singular_value_extremes(matrix: np.ndarray) -> tuple:
    """Return (smallest, largest) singular values of a square matrix."""
    if matrix.size == 0:
        return 0.0, 0.0
    values = linalg.svdvals(matrix)
    return float(values[-1]), float(values[0])


def abs_eigenvalue_extremes(symmetric_matrix: np.ndarray) -> tuple:
    """Return (min |eig|, max |eig|) of a symmetric matrix.

    An empty matrix (trivial tangent space) yields (inf, 0) so that its
    verdict is vacuously true.
    """
    if symmetric_matrix.size == 0:
        return float("inf"), 0.0
    values = np.abs(linalg.eigvalsh(symmetric_matrix))
    return float(values.min()), float(values.max())
