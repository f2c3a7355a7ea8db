"""Multistart drivers and deduplication for Z-eigenpairs and singular tuples.

Starts are deterministic: a scrambled Halton sequence seeded from the run
seed, mapped to the sphere through the normal quantile function. Starts are
independent, so they may be evaluated on a thread pool; results are
gathered in submission order and reduced sequentially.
"""

import logging
from typing import Iterable, List, Optional, Sequence

import numpy as np
from scipy.stats import norm, qmc

from ..parallel import ordered_map
from ..tensors.core import BlockVector, DenseTensor, SymmetricTensor
from .svt import SingularTuple, solve_svt_hopm, solve_svt_newton
from .zeigen import ZEigenPair, auto_shift, solve_z_newton, solve_z_power

logger = logging.getLogger(__name__)

STARTS_PER_KN = 50
DEFAULT_DEDUP_ANGLE = 1e-6
COARSE_TOL = 1e-6
SIGN_TOL = 1e-8


def gaussian_starts(dim: int, count: int, seed: Optional[int] = 0) -> np.ndarray:
    """Quasi-random standard normal points, one row per start."""
    sampler = qmc.Halton(d=dim, scramble=True, seed=seed)
    uniform = np.clip(sampler.random(count), 1e-12, 1.0 - 1e-12)
    return norm.ppf(uniform)


def sphere_starts(n: int, count: int, seed: Optional[int] = 0) -> np.ndarray:
    """Deterministic quasi-random unit vectors in R^n."""
    points = gaussian_starts(n, count, seed)
    return points / np.linalg.norm(points, axis=1, keepdims=True)


def block_starts(dims: Sequence[int], count: int, seed: Optional[int] = 0) -> List[BlockVector]:
    """Deterministic quasi-random points on a product of spheres."""
    points = gaussian_starts(sum(dims), count, seed)
    return [BlockVector.from_stacked(row, dims).normalized() for row in points]


def _first_significant(vec: np.ndarray, tol: float = SIGN_TOL) -> float:
    for value in vec:
        if abs(value) > tol:
            return float(np.sign(value))
    return 1.0


def canonical_z(pair: ZEigenPair, k: int) -> ZEigenPair:
    """Orient x so its first significant coordinate is positive.

    Flipping x keeps λ for even k and negates it for odd k.
    """
    sign = _first_significant(pair.x)
    if sign > 0:
        return pair
    lam = pair.eigenvalue if k % 2 == 0 else -pair.eigenvalue
    return ZEigenPair(
        eigenvalue=lam,
        x=-pair.x,
        residual=pair.residual,
        converged=pair.converged,
        iterations=pair.iterations,
        method=pair.method,
    )


def dedup_z(pairs: Iterable[ZEigenPair], k: int, angle_tol: float = DEFAULT_DEDUP_ANGLE) -> List[ZEigenPair]:
    """Collapse pairs to one representative per eigen-line.

    x and -x are identified; the kept representative is sign-normalized.
    Output is sorted by (λ, x).
    """
    kept: List[ZEigenPair] = []
    for pair in pairs:
        pair = canonical_z(pair, k)
        duplicate = False
        for index, other in enumerate(kept):
            distance = min(np.linalg.norm(pair.x - other.x), np.linalg.norm(pair.x + other.x))
            if distance < angle_tol:
                duplicate = True
                if pair.residual < other.residual:
                    kept[index] = pair
                break
        if not duplicate:
            kept.append(pair)
    return sorted(kept, key=lambda p: (round(p.eigenvalue, 10), tuple(np.round(p.x, 10))))


def expand_lines(pairs: Iterable[ZEigenPair], k: int) -> List[ZEigenPair]:
    """Return both orientations (λ, x) and (±λ, -x) of each eigen-line."""
    expanded = []
    for pair in pairs:
        expanded.append(pair)
        expanded.append(
            ZEigenPair(
                eigenvalue=pair.eigenvalue if k % 2 == 0 else -pair.eigenvalue,
                x=-pair.x,
                residual=pair.residual,
                converged=pair.converged,
                iterations=pair.iterations,
                method=pair.method,
            )
        )
    return expanded


def _z_candidates(A: SymmetricTensor, x0: np.ndarray, tol: float, maxit: int) -> List[ZEigenPair]:
    alpha = auto_shift(A)
    found = []
    for shift in (alpha, -alpha):
        coarse = solve_z_power(A, x0, shift=shift, tol=COARSE_TOL, maxit=maxit)
        found.append(solve_z_newton(A, coarse.x, tol=tol))
    found.append(solve_z_newton(A, x0, tol=tol))
    return [pair for pair in found if pair.residual <= tol]


def multistart_z(
    A: SymmetricTensor,
    starts: Optional[int] = None,
    tol: float = 1e-10,
    maxit: int = 500,
    seed: Optional[int] = 0,
    threads: int = 1,
    angle_tol: float = DEFAULT_DEDUP_ANGLE,
) -> List[ZEigenPair]:
    """Best-effort search for all real Z-eigen-lines.

    From each start runs the power iteration with shifts +α and -α (maxima
    and minima) followed by a Newton polish, plus Newton directly from the
    start (saddles). Converged results are deduplicated per eigen-line.

    Args:
        A: Symmetric tensor.
        starts: Number of starts; defaults to 50·k·n.
        tol: Acceptance residual.
        maxit: Power-iteration cap per start.
        seed: Quasi-random sequence seed.
        threads: Worker threads.
        angle_tol: Deduplication distance.

    Returns:
        Sign-normalized pairs, one per eigen-line, sorted by (λ, x).
    """
    count = starts if starts is not None else STARTS_PER_KN * A.order * A.n
    points = sphere_starts(A.n, count, seed)
    logger.info(f"Z multistart: {count} starts, n={A.n}, k={A.order}")

    results = ordered_map(lambda x0: _z_candidates(A, x0, tol, maxit), list(points), threads)
    pairs = dedup_z((pair for group in results for pair in group), A.order, angle_tol)
    logger.info(f"Z multistart found {len(pairs)} eigen-lines")
    return pairs


def canonical_svt(item: SingularTuple) -> SingularTuple:
    """Flip blocks so each block's first significant coordinate is positive.

    Every block flip negates σ.
    """
    sigma = item.sigma
    blocks = []
    for block in item.blocks:
        sign = _first_significant(block)
        blocks.append(sign * block)
        sigma *= sign
    return SingularTuple(
        sigma=sigma,
        blocks=BlockVector(tuple(blocks)),
        residual=item.residual,
        converged=item.converged,
        iterations=item.iterations,
        restarts=item.restarts,
        method=item.method,
    )


def dedup_svt(items: Iterable[SingularTuple], angle_tol: float = DEFAULT_DEDUP_ANGLE) -> List[SingularTuple]:
    """Collapse tuples equal up to block sign flips; sorted by (σ, blocks)."""
    kept: List[SingularTuple] = []
    for item in items:
        item = canonical_svt(item)
        duplicate = False
        for index, other in enumerate(kept):
            distance = max(np.linalg.norm(a - b) for a, b in zip(item.blocks, other.blocks))
            if distance < angle_tol:
                duplicate = True
                if item.residual < other.residual:
                    kept[index] = item
                break
        if not duplicate:
            kept.append(item)
    return sorted(kept, key=lambda t: (round(t.sigma, 10), tuple(np.round(t.blocks.stacked(), 10))))


def _svt_candidates(A: DenseTensor, x0: BlockVector, tol: float, maxit: int) -> List[SingularTuple]:
    found = []
    coarse = solve_svt_hopm(A, x0, tol=COARSE_TOL, maxit=maxit)
    found.append(solve_svt_newton(A, coarse.blocks, tol=tol, hopm_iterations=coarse.iterations))
    found.append(solve_svt_newton(A, x0, tol=tol))
    return [item for item in found if item.residual <= tol]


def multistart_svt(
    A: DenseTensor,
    starts: Optional[int] = None,
    tol: float = 1e-10,
    maxit: int = 500,
    seed: Optional[int] = 0,
    threads: int = 1,
    angle_tol: float = DEFAULT_DEDUP_ANGLE,
) -> List[SingularTuple]:
    """Best-effort search for all real singular vector tuples.

    HOPM (polished by Newton) and Newton alone from 50·k·max(n_i)
    quasi-random starts, deduplicated over the block sign orbit.
    """
    count = starts if starts is not None else STARTS_PER_KN * A.order * max(A.dims)
    points = block_starts(A.dims, count, seed)
    logger.info(f"SVT multistart: {count} starts, dims={list(A.dims)}")

    results = ordered_map(lambda x0: _svt_candidates(A, x0, tol, maxit), points, threads)
    tuples = dedup_svt((item for group in results for item in group), angle_tol)
    logger.info(f"SVT multistart found {len(tuples)} tuples")
    return tuples

