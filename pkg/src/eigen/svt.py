"""Singular vector tuples of general tensors.

A block vector x on the product of unit spheres is a singular vector tuple
of A when it is a critical point of G(x) = <A, x_1 ⊗ ... ⊗ x_k>, i.e. when
every block residual contract_leave_slot(A, x, i) - σ x_i vanishes with
σ = G(x).
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import linalg

from ..errors import DimensionMismatchError, InvalidInputError, NotAnEigenpairError
from ..tensors.core import (
    BlockVector,
    DenseTensor,
    contract_leave_slot,
    contract_leave_two_slots,
    inner,
    segre,
)
from .certification import (
    DEFAULT_CERT_TOL,
    CertificationReport,
    abs_eigenvalue_extremes,
    relative_verdict,
)
from .zeigen import tangent_basis

logger = logging.getLogger(__name__)

UNIT_TOL = 1e-8
MAX_RESTARTS = 3
ZERO_CONTRACTION = 1e-14


@dataclass(eq=False)
class SingularTuple:
    """A singular value with its block vector.

    Attributes:
        sigma: σ = G(x).
        blocks: Point on the product of unit spheres.
        residual: Norm of the stacked block residual.
        converged: Whether the producing solver met its tolerance.
        iterations: Solver iterations (sweeps for HOPM).
        restarts: Zero-contraction restarts spent by HOPM.
        method: Producing solver.
    """

    sigma: float
    blocks: BlockVector
    residual: float
    converged: bool = True
    iterations: int = 0
    restarts: int = 0
    method: str = ""

    def to_dict(self) -> dict:
        return {
            "sigma": float(self.sigma),
            "blocks": [[float(v) for v in block] for block in self.blocks],
            "residual": float(self.residual),
            "converged": bool(self.converged),
            "iterations": int(self.iterations),
            "method": self.method,
        }


def _on_sphere(A: DenseTensor, x) -> BlockVector:
    blocks = x if isinstance(x, BlockVector) else BlockVector(tuple(x))
    if blocks.dims != tuple(A.dims):
        raise DimensionMismatchError(
            f"block lengths {list(blocks.dims)} do not match dims {list(A.dims)}", field="x"
        )
    if not blocks.on_sphere(UNIT_TOL):
        raise InvalidInputError("every block must be a unit vector", field="x")
    return blocks


def g_value(A: DenseTensor, x) -> float:
    """G(x) = <A, x_1 ⊗ ... ⊗ x_k>."""
    blocks = _on_sphere(A, x)
    return inner(A, segre(blocks))


def svt_residual(A: DenseTensor, x) -> BlockVector:
    """Block residuals r_i = contract_leave_slot(A, x, i) - σ x_i.

    This is the stacked Riemannian gradient of G; x is a singular vector
    tuple iff every block vanishes.
    """
    blocks = _on_sphere(A, x)
    sigma = inner(A, segre(blocks))
    return BlockVector(
        tuple(contract_leave_slot(A, blocks, i) - sigma * blocks[i] for i in range(A.order))
    )


def _residual_norm(A: DenseTensor, x: BlockVector) -> float:
    return svt_residual(A, x).norm()


def solve_svt_hopm(
    A: DenseTensor,
    x0,
    tol: float = 1e-12,
    maxit: int = 1000,
) -> SingularTuple:
    """Cyclic higher-order power method.

    Updates x_i <- normalize(contract_leave_slot(A, x, i)) block by block
    until the stacked residual is at most tol or maxit sweeps ran. A zero
    contraction restarts the block from a deterministic perturbation; the
    third restart gives up and returns the tuple unconverged.
    """
    if tol <= 0:
        raise InvalidInputError(f"tol must be positive, got {tol}", field="tol")
    blocks = [b.copy() for b in _on_sphere(A, BlockVector(tuple(x0)).normalized())]

    restarts = 0
    sweeps = 0
    residual = _residual_norm(A, BlockVector(tuple(blocks)))
    while residual > tol and sweeps < maxit and restarts < MAX_RESTARTS:
        for i in range(A.order):
            c = contract_leave_slot(A, blocks, i)
            norm = np.linalg.norm(c)
            if norm <= ZERO_CONTRACTION:
                restarts += 1
                e = np.zeros(len(blocks[i]))
                e[(restarts - 1) % len(e)] = 1.0
                perturbed = blocks[i] + 0.5 * e
                if np.linalg.norm(perturbed) == 0.0:
                    perturbed = e
                blocks[i] = perturbed / np.linalg.norm(perturbed)
                logger.debug(f"HOPM zero contraction in block {i}; restart {restarts}")
                continue
            blocks[i] = c / norm
        sweeps += 1
        residual = _residual_norm(A, BlockVector(tuple(blocks)))

    point = BlockVector(tuple(blocks))
    return SingularTuple(
        sigma=g_value(A, point),
        blocks=point,
        residual=residual,
        converged=residual <= tol,
        iterations=sweeps,
        restarts=restarts,
        method="hopm",
    )


def riem_hessian_svt(A: DenseTensor, x) -> np.ndarray:
    """Riemannian Hessian of G on the product of spheres.

    In per-block tangent bases P_i the diagonal blocks are -σ I and the
    off-diagonal block (i, j) is P_iᵀ A(slots i, j open) P_j.
    """
    blocks = _on_sphere(A, x)
    sigma = inner(A, segre(blocks))
    bases = [tangent_basis(b) for b in blocks]
    rows = []
    for i in range(A.order):
        row = []
        for j in range(A.order):
            if i == j:
                row.append(-sigma * np.eye(bases[i].shape[1]))
            else:
                row.append(bases[i].T @ contract_leave_two_slots(A, blocks, i, j) @ bases[j])
        rows.append(row)
    hessian = np.block(rows)
    return 0.5 * (hessian + hessian.T)


def solve_svt_newton(
    A: DenseTensor,
    x0,
    tol: float = 1e-12,
    maxit: int = 50,
    max_step: float = 0.5,
    hopm_iterations: int = 0,
) -> SingularTuple:
    """Riemannian Newton on the product of spheres.

    Solves H y = -g with H = riem_hessian_svt and g the stacked tangent
    gradient, then retracts each block separately.

    Args:
        hopm_iterations: Sweeps already spent by a preceding HOPM run,
            added to the reported iteration count.
    """
    point = BlockVector(tuple(x0)).normalized()
    _on_sphere(A, point)
    residual = _residual_norm(A, point)
    iterations = 0
    while residual > tol and iterations < maxit:
        bases = [tangent_basis(b) for b in point]
        gradient = np.concatenate(
            [P.T @ r for P, r in zip(bases, svt_residual(A, point))]
        )
        step, *_ = linalg.lstsq(riem_hessian_svt(A, point), -gradient)
        length = np.linalg.norm(step)
        if length > max_step:
            step *= max_step / length
        offsets = np.cumsum([0] + [P.shape[1] for P in bases])
        candidate = BlockVector(
            tuple(
                b + P @ step[offsets[i]:offsets[i + 1]]
                for i, (b, P) in enumerate(zip(point, bases))
            )
        ).normalized()
        iterations += 1
        new_residual = _residual_norm(A, candidate)
        if length == 0.0 or (new_residual >= residual and residual < 1e3 * tol):
            break
        point, residual = candidate, new_residual

    return SingularTuple(
        sigma=g_value(A, point),
        blocks=point,
        residual=residual,
        converged=residual <= tol,
        iterations=hopm_iterations + iterations,
        method="newton",
    )


def certify_svt(
    A: DenseTensor,
    x,
    tol: float = DEFAULT_CERT_TOL,
    residual_tol: Optional[float] = None,
) -> CertificationReport:
    """Certify a singular vector tuple by its Riemannian Hessian.

    Raises:
        NotAnEigenpairError: If the stacked residual exceeds residual_tol
            (defaults to tol).
    """
    residual_tol = tol if residual_tol is None else residual_tol
    blocks = _on_sphere(A, x)
    residual = _residual_norm(A, blocks)
    if residual > residual_tol:
        raise NotAnEigenpairError(
            f"residual {residual:.3e} exceeds {residual_tol:.1e}; not a singular tuple", field="x"
        )
    hess_min, hess_max = abs_eigenvalue_extremes(riem_hessian_svt(A, blocks))
    verdict = relative_verdict(hess_min, hess_max, tol)
    return CertificationReport(
        route="hessian",
        eigenvalue=g_value(A, blocks),
        nondegenerate=verdict,
        tol=tol,
        residual=residual,
        hess_min_abs_eig=hess_min,
        hess_max_abs_eig=hess_max,
        hessian_nondegenerate=verdict,
    )
