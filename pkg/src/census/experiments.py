"""Monte Carlo censuses over Gaussian tensors.

Each trial samples a tensor from its own RNG stream derived from
(seed, trial index), enumerates its eigen-objects with the matching oracle
or solver, certifies every converged object and records one row. Rows are
aggregated with pandas into count distributions and invariant checks.
"""

import logging
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from ..eigen.heigen import solve_h_n2
from ..eigen.multistart import multistart_svt, multistart_z
from ..eigen.svt import certify_svt
from ..eigen.zeigen import certify_z, riem_hessian_z, tangent_basis, z_jacobian
from ..errors import UnsupportedCensusError
from ..odeco import SymOdecoSpec, count_eigen_lines
from ..parallel import ordered_map
from ..tensors.core import random_symmetric, random_tensor
from .oracles import DEFAULT_GRID, e_count_n2, sweep_z_n2

logger = logging.getLogger(__name__)

KINDS = ("z", "svt", "h")
MAX_DIM = 6
HESSIAN_IDENTITY_TOL = 1e-9
HESSIAN_IDENTITY_MIN_LAMBDA = 1e-6


@dataclass
class CensusSettings:
    """Numerical settings for one census."""

    residual_tol: float = 1e-10
    cert_tol: float = 1e-8
    grid: int = DEFAULT_GRID
    starts: Optional[int] = None
    maxit: int = 500
    threads: int = 1


@dataclass
class CensusReport:
    """Aggregated census results.

    Attributes:
        kind: "z", "svt" or "h".
        dims: Tensor dimensions sampled.
        trials: Number of trials.
        seed: Base seed.
        rows: One dict per trial.
        generic_count: Reference count (E-lines for z at n = 2, eigenvalues
            for h); None where no formula applies.
        max_real_count: Largest real eigen-line count observed (z only).
        count_distribution: Observed count -> number of trials.
        degenerate_trials: Trials with at least one degenerate object.
        unconverged_trials: Trials with unconverged solver output.
        invariants: Named invariant -> held in every trial.
        statistics: Supplementary observations.
    """

    kind: str
    dims: List[int]
    trials: int
    seed: int
    rows: List[dict] = field(default_factory=list)
    generic_count: Optional[int] = None
    max_real_count: Optional[int] = None
    count_distribution: Dict[str, int] = field(default_factory=dict)
    degenerate_trials: int = 0
    unconverged_trials: int = 0
    invariants: Dict[str, bool] = field(default_factory=dict)
    statistics: Dict[str, object] = field(default_factory=dict)

    @property
    def degenerate_fraction(self) -> float:
        return self.degenerate_trials / self.trials if self.trials else 0.0

    @property
    def passed(self) -> bool:
        return all(self.invariants.values())

    @property
    def failed_invariants(self) -> List[str]:
        return [name for name, held in self.invariants.items() if not held]

    def to_dict(self) -> dict:
        data = asdict(self)
        data["degenerate_fraction"] = self.degenerate_fraction
        data["passed"] = self.passed
        return data


def trial_seed(seed: int, index: int) -> int:
    """Independent 64-bit seed for one trial."""
    state = np.random.SeedSequence([int(seed), int(index)]).generate_state(1, dtype=np.uint64)
    return int(state[0])


def generic_e_count(n: int, k: int) -> int:
    """((k-1)^n - 1)/(k-2): generic number of complex E-eigen-lines."""
    return ((k - 1) ** n - 1) // (k - 2)


def generic_h_count(n: int, k: int) -> int:
    """n(k-1)^{n-1}: number of H-eigenvalues with multiplicity."""
    return n * (k - 1) ** (n - 1)


def _hessian_identity_gap(A, x, k: int) -> float:
    P = tangent_basis(x)
    return float(np.max(np.abs(P.T @ z_jacobian(A, x) @ P - riem_hessian_z(A, x) / k)))


def _z_trial(n: int, k: int, index: int, seed: int, settings: CensusSettings) -> dict:
    A = random_symmetric(n, k, seed)
    if n == 2:
        sweep = sweep_z_n2(A, grid=settings.grid, tol=settings.residual_tol)
        lines = sweep.eigen_lines()
        ecount = e_count_n2(A)
        complex_lines = ecount.distinct
    else:
        lines = multistart_z(A, starts=settings.starts, tol=settings.residual_tol,
                             maxit=settings.maxit, seed=seed)
        complex_lines = None

    degenerate = 0
    disagreements = 0
    hessian_identity_gap = 0.0
    zero_lines = 0
    for pair in lines:
        report = certify_z(A, pair.x, tol=settings.cert_tol, residual_tol=settings.residual_tol)
        degenerate += int(not report.nondegenerate)
        if abs(pair.eigenvalue) <= settings.cert_tol:
            zero_lines += 1
        if report.agreement is False:
            disagreements += 1
        if abs(pair.eigenvalue) > HESSIAN_IDENTITY_MIN_LAMBDA:
            hessian_identity_gap = max(hessian_identity_gap, _hessian_identity_gap(A, pair.x, k))

    return {
        "trial": index,
        "seed": seed,
        "real_lines": len(lines),
        "real_nonzero_lines": len(lines) - zero_lines,
        "zero_lines": zero_lines,
        "complex_lines": complex_lines,
        "degenerate": degenerate,
        "disagreements": disagreements,
        "hessian_identity_gap": hessian_identity_gap,
        "unconverged": 0 if lines else 1,
    }


def _svt_trial(dims: Sequence[int], index: int, seed: int, settings: CensusSettings) -> dict:
    A = random_tensor(dims, seed)
    tuples = multistart_svt(A, starts=settings.starts, tol=settings.residual_tol,
                            maxit=settings.maxit, seed=seed)
    degenerate = 0
    zero_tuples = 0
    for item in tuples:
        report = certify_svt(A, item.blocks, tol=settings.cert_tol, residual_tol=settings.residual_tol)
        degenerate += int(not report.nondegenerate)
        zero_tuples += int(abs(item.sigma) <= settings.cert_tol)
    return {
        "trial": index,
        "seed": seed,
        "tuples": len(tuples),
        "zero_tuples": zero_tuples,
        "degenerate": degenerate,
        "max_iterations": max((t.iterations for t in tuples), default=0),
        "unconverged": 0 if tuples else 1,
    }


def _h_trial(k: int, index: int, seed: int, settings: CensusSettings) -> dict:
    A = random_symmetric(2, k, seed)
    solution = solve_h_n2(A, cert_tol=settings.cert_tol)
    degenerate = sum(1 for p in solution if p.nondegenerate is False)
    unconverged = sum(1 for p in solution if p.nondegenerate is None)
    simple_nondegenerate = sum(1 for p in solution if p.simple_root and p.nondegenerate)
    return {
        "trial": index,
        "seed": seed,
        "eigenvalues": solution.total_multiplicity,
        "distinct_eigenvalues": len({(round(p.eigenvalue.real, 9), round(p.eigenvalue.imag, 9)) for p in solution}),
        "real_eigenvalues": sum(1 for p in solution if p.eigenvalue.imag == 0.0),
        "charpoly_degree": solution.charpoly.degree,
        "simple_roots": sum(1 for p in solution if p.simple_root),
        "simple_and_nondegenerate": simple_nondegenerate,
        "degenerate": degenerate,
        "unconverged": unconverged,
    }


def _validate(kind: str, dims: List[int], k: int) -> None:
    if kind not in KINDS:
        raise UnsupportedCensusError(f"unknown census kind {kind!r}; choose from {KINDS}", field="kind")
    if k < 3 or len(dims) != k:
        raise UnsupportedCensusError(f"need order k >= 3 with k dims, got k={k}, dims={dims}", field="k")
    if any(d < 1 or d > MAX_DIM for d in dims):
        raise UnsupportedCensusError(f"dims must lie in 1..{MAX_DIM}, got {dims}", field="dims")
    if kind in ("z", "h") and len(set(dims)) != 1:
        raise UnsupportedCensusError(f"{kind} census needs a symmetric shape, got {dims}", field="dims")
    if kind == "z" and dims[0] < 2:
        raise UnsupportedCensusError("z census needs n >= 2", field="n")
    if kind == "h" and dims[0] != 2:
        raise UnsupportedCensusError(f"h census is exact only for n = 2, got n={dims[0]}", field="n")


def run_census(
    kind: str,
    k: int,
    trials: int,
    seed: int,
    n: Optional[int] = None,
    dims: Optional[Sequence[int]] = None,
    settings: Optional[CensusSettings] = None,
) -> CensusReport:
    """Run a census of Gaussian tensors.

    Args:
        kind: "z" (symmetric, sweep oracle at n = 2, multistart above),
            "svt" (general tensors, multistart) or "h" (n = 2, exact).
        k: Tensor order.
        trials: Number of sampled tensors.
        seed: Base seed; trial i uses trial_seed(seed, i).
        n: Dimension for symmetric kinds.
        dims: Explicit dims (svt); defaults to [n] * k.
        settings: Numerical settings.

    Returns:
        CensusReport with per-trial rows and invariant verdicts.

    Raises:
        UnsupportedCensusError: For unsupported (kind, size) combinations.
    """
    settings = settings or CensusSettings()
    dims = [int(d) for d in dims] if dims else [int(n or 2)] * k
    _validate(kind, dims, k)
    if trials < 1:
        raise UnsupportedCensusError(f"trials must be positive, got {trials}", field="trials")

    logger.info(f"Census {kind}: dims={dims}, trials={trials}, seed={seed}")
    seeds = [trial_seed(seed, i) for i in range(trials)]

    def run_trial(index: int) -> dict:
        if kind == "z":
            return _z_trial(dims[0], k, index, seeds[index], settings)
        if kind == "svt":
            return _svt_trial(dims, index, seeds[index], settings)
        return _h_trial(k, index, seeds[index], settings)

    rows = ordered_map(run_trial, range(trials), settings.threads)
    report = _aggregate(kind, dims, k, trials, seed, rows)
    if report.passed:
        logger.info(f"Census {kind} passed: degenerate fraction {report.degenerate_fraction}")
    else:
        logger.warning(f"Census {kind} invariant failures: {report.failed_invariants}")
    return report


def _distribution(series: pd.Series) -> Dict[str, int]:
    counts = series.dropna().astype(int).value_counts().sort_index()
    return {str(key): int(value) for key, value in counts.items()}


def _aggregate(kind: str, dims: List[int], k: int, trials: int, seed: int, rows: List[dict]) -> CensusReport:
    df = pd.DataFrame(rows)
    n = dims[0]
    report = CensusReport(kind=kind, dims=dims, trials=trials, seed=seed, rows=rows)
    report.degenerate_trials = int((df["degenerate"] > 0).sum())
    report.unconverged_trials = int((df["unconverged"] > 0).sum())
    report.invariants["no_degenerate"] = report.degenerate_trials == 0

    if kind == "z":
        report.count_distribution = _distribution(df["real_nonzero_lines"])
        report.max_real_count = int(df["real_nonzero_lines"].max())
        report.invariants["verdicts_agree"] = bool((df["disagreements"] == 0).all())
        report.invariants["hessian_jacobian_identity"] = bool((df["hessian_identity_gap"] <= HESSIAN_IDENTITY_TOL).all())
        report.statistics["zero_eigenvalue_lines"] = int(df["zero_lines"].sum())
        report.statistics["max_hessian_identity_gap"] = float(df["hessian_identity_gap"].max())
        lower_bound = count_eigen_lines(SymOdecoSpec(U=np.eye(n), lambdas=np.ones(n)), k)
        report.statistics["odeco_lower_bound"] = lower_bound
        if n == 2:
            report.generic_count = generic_e_count(n, k)
            # per trial: real lines against that tensor's own E-line count
            report.invariants["real_le_complex"] = bool(
                (df["real_nonzero_lines"] <= df["complex_lines"]).all()
            )
            report.invariants["real_le_generic"] = report.max_real_count <= report.generic_count
            report.invariants["odeco_bound_le_generic"] = lower_bound <= report.generic_count
            report.statistics["complex_line_distribution"] = _distribution(df["complex_lines"])
            report.statistics["generic_complex_fraction"] = float(
                (df["complex_lines"] == report.generic_count).mean()
            )
    elif kind == "svt":
        report.count_distribution = _distribution(df["tuples"])
        report.statistics["zero_tuples"] = int(df["zero_tuples"].sum())
        report.statistics["max_iterations"] = int(df["max_iterations"].max())
    else:
        report.generic_count = generic_h_count(n, k)
        report.count_distribution = _distribution(df["eigenvalues"])
        report.invariants["full_count"] = bool((df["eigenvalues"] == report.generic_count).all())
        report.statistics["simple_roots"] = int(df["simple_roots"].sum())
        report.statistics["simple_and_nondegenerate"] = int(df["simple_and_nondegenerate"].sum())
        report.statistics["real_eigenvalue_distribution"] = _distribution(df["real_eigenvalues"])
    return report
