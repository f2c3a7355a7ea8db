"""Eigenpair solvers and nondegeneracy certification.

Modules:
    certification: Shared report type and relative verdicts
    zeigen: Z-eigenpairs of symmetric tensors (power method, Newton)
    svt: Singular vector tuples of general tensors (HOPM, Newton)
    multistart: Quasi-random starts, deduplication, best-effort enumeration
    polynomials: Aberth roots, binary forms, Sylvester resultants
    heigen: H-eigenpairs, exact for n = 2
"""

from .certification import DEFAULT_CERT_TOL, CertificationReport, relative_verdict
from .heigen import (
    CharPolyN2,
    HEigenPair,
    HEigenSolution,
    charpoly_n2,
    h_jacobian,
    h_nondegenerate,
    h_residual,
    solve_h_n2,
)
from .multistart import multistart_svt, multistart_z
from .svt import (
    SingularTuple,
    certify_svt,
    riem_hessian_svt,
    solve_svt_hopm,
    solve_svt_newton,
    svt_residual,
)
from .zeigen import (
    ZEigenPair,
    certify_e,
    certify_z,
    riem_hessian_z,
    solve_z_newton,
    solve_z_power,
    tangent_basis,
    z_jacobian,
    z_residual,
)

__all__ = [
    "DEFAULT_CERT_TOL",
    "CertificationReport",
    "relative_verdict",
    "CharPolyN2",
    "HEigenPair",
    "HEigenSolution",
    "charpoly_n2",
    "h_jacobian",
    "h_nondegenerate",
    "h_residual",
    "solve_h_n2",
    "multistart_svt",
    "multistart_z",
    "SingularTuple",
    "certify_svt",
    "riem_hessian_svt",
    "solve_svt_hopm",
    "solve_svt_newton",
    "svt_residual",
    "ZEigenPair",
    "certify_e",
    "certify_z",
    "riem_hessian_z",
    "solve_z_newton",
    "solve_z_power",
    "tangent_basis",
    "z_jacobian",
    "z_residual",
]
