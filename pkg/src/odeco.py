"""Orthogonally decomposable (odeco) tensors.

A symmetric odeco tensor is A = Σ_i λ_i u_i^{⊗k} with orthonormal u_i. All
of its nonzero Z-eigenpairs are known in closed form: for every admissible
subset Λ of the weights, with σ = (Σ_{i∈Λ} |λ_i|^{-2/(k-2)})^{-1/2},

    λ = sign(Λ) σ^{k-2},   x = Σ_{j∈Λ} p_j σ |λ_j|^{-1/(k-2)} u_j,

where the signs p_j satisfy p_j sign(λ_j) = sign(Λ) for odd k and are free
for even k (which instead requires all λ_j, j ∈ Λ, to share one sign).
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import linalg

from .eigen.certification import DEFAULT_CERT_TOL, CertificationReport
from .eigen.zeigen import ZEigenPair, certify_z, z_jacobian, z_residual
from .errors import SpecError
from .tensors.core import DenseTensor, SymmetricTensor, random_orthogonal, segre, veronese

logger = logging.getLogger(__name__)

ORTHONORMAL_TOL = 1e-12
ENUMERATION_RESIDUAL_TOL = 1e-10
JACOBIAN_CHECK_TOL = 1e-8


def _float_array(value, name: str) -> np.ndarray:
    try:
        return np.asarray(value, dtype=float)
    except (TypeError, ValueError) as e:
        raise SpecError(f"{name} must be a rectangular array of numbers: {e}", field=name) from e


def _orthonormal_columns(U: np.ndarray, name: str) -> np.ndarray:
    U = _float_array(U, name)
    if U.ndim != 2:
        raise SpecError(f"{name} must be a matrix", field=name)
    deviation = np.max(np.abs(U.T @ U - np.eye(U.shape[1]))) if U.size else 0.0
    if deviation > ORTHONORMAL_TOL:
        raise SpecError(f"columns of {name} are not orthonormal (deviation {deviation:.2e})", field=name)
    return U


def _weights(lambdas: Sequence[float], r: int) -> np.ndarray:
    weights = _float_array(lambdas, "lambdas").ravel()
    if weights.shape != (r,):
        raise SpecError(f"expected {r} weights, got {weights.size}", field="lambdas")
    if not np.all(np.isfinite(weights)):
        raise SpecError("weights must be finite", field="lambdas")
    if np.any(weights == 0.0):
        raise SpecError("weights must be nonzero", field="lambdas")
    return weights


@dataclass(frozen=True, eq=False)
class SymOdecoSpec:
    """Factors u_i (columns of U, n×r) and nonzero weights λ_i."""

    U: np.ndarray
    lambdas: np.ndarray

    def __post_init__(self):
        U = _orthonormal_columns(self.U, "U")
        if U.shape[1] > U.shape[0]:
            raise SpecError(f"r={U.shape[1]} exceeds n={U.shape[0]}", field="U")
        object.__setattr__(self, "U", U)
        object.__setattr__(self, "lambdas", _weights(self.lambdas, U.shape[1]))

    @property
    def n(self) -> int:
        return self.U.shape[0]

    @property
    def r(self) -> int:
        return self.U.shape[1]

    def to_dict(self, k: Optional[int] = None) -> dict:
        data = {
            "n": self.n,
            "r": self.r,
            "U": [[float(v) for v in column] for column in self.U.T],
            "lambdas": [float(v) for v in self.lambdas],
        }
        if k is not None:
            data["k"] = int(k)
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "SymOdecoSpec":
        """Decode a spec document ({"n", "r", "k", "U": columns, "lambdas"})."""
        for key in ("U", "lambdas"):
            if key not in data:
                raise SpecError("missing required field", field=key)
        columns = _float_array(data["U"], "U")
        if columns.ndim != 2:
            raise SpecError("U must be a list of columns", field="U")
        spec = cls(U=columns.T, lambdas=data["lambdas"])
        if "n" in data and data["n"] != spec.n:
            raise SpecError(f"n={data['n']} does not match column length {spec.n}", field="n")
        if "r" in data and data["r"] != spec.r:
            raise SpecError(f"r={data['r']} does not match {spec.r} columns", field="r")
        return spec


@dataclass(frozen=True, eq=False)
class GeneralOdecoSpec:
    """k factor matrices with orthonormal columns and r nonzero weights."""

    factors: Tuple[np.ndarray, ...]
    lambdas: np.ndarray

    def __post_init__(self):
        factors = tuple(
            _orthonormal_columns(U, f"factors[{i}]") for i, U in enumerate(self.factors)
        )
        if len(factors) < 3:
            raise SpecError(f"need at least 3 factors, got {len(factors)}", field="factors")
        ranks = {U.shape[1] for U in factors}
        if len(ranks) != 1:
            raise SpecError(f"factors disagree on r: {sorted(ranks)}", field="factors")
        object.__setattr__(self, "factors", factors)
        object.__setattr__(self, "lambdas", _weights(self.lambdas, ranks.pop()))

    @property
    def r(self) -> int:
        return len(self.lambdas)

    @property
    def dims(self) -> tuple:
        return tuple(U.shape[0] for U in self.factors)


@dataclass(eq=False)
class OdecoEigenpair:
    """An enumerated Z-eigenpair with its generating data.

    Attributes:
        pair: The eigenpair.
        subset: Generating subset Λ (0-based weight indices).
        subset_sign: sign(Λ).
        pattern: Sign p_j for each j in Λ.
    """

    pair: ZEigenPair
    subset: Tuple[int, ...]
    subset_sign: int
    pattern: Tuple[int, ...]

    def to_dict(self) -> dict:
        data = self.pair.to_dict()
        data.update(
            {
                "subset": list(self.subset),
                "subset_sign": self.subset_sign,
                "pattern": list(self.pattern),
            }
        )
        return data


@dataclass(eq=False)
class OdecoEigenpairSet:
    """All nonzero Z-eigenpairs of a symmetric odeco tensor."""

    spec: SymOdecoSpec
    k: int
    tensor: SymmetricTensor
    entries: List[OdecoEigenpair] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def pairs(self) -> List[ZEigenPair]:
        return [entry.pair for entry in self.entries]

    def eigen_lines(self) -> List[ZEigenPair]:
        """One pair per line: the orientation with first significant entry positive."""
        lines = []
        for pair in self.pairs:
            lead = pair.x[np.argmax(np.abs(pair.x) > 1e-8)]
            if lead > 0:
                lines.append(pair)
        return lines


def odeco_build_sym(spec: SymOdecoSpec, k: int) -> SymmetricTensor:
    """A = Σ λ_i u_i^{⊗k}."""
    if k < 3:
        raise SpecError(f"order must be at least 3, got {k}", field="k")
    array = np.zeros((spec.n,) * k)
    for weight, column in zip(spec.lambdas, spec.U.T):
        array += weight * veronese(column, k).array
    return SymmetricTensor(DenseTensor(array), symmetrize=True)


def odeco_build_general(spec: GeneralOdecoSpec) -> DenseTensor:
    """A = Σ λ_i u_i^{(1)} ⊗ ... ⊗ u_i^{(k)}."""
    array = np.zeros(spec.dims)
    for i, weight in enumerate(spec.lambdas):
        array += weight * segre([U[:, i] for U in spec.factors]).array
    return DenseTensor(array)


def _subset_pairs(spec: SymOdecoSpec, k: int, subset: Tuple[int, ...]):
    weights = spec.lambdas[list(subset)]
    signs = np.sign(weights).astype(int)
    odd = k % 2 == 1
    if not odd and len(set(signs)) > 1:
        return
    magnitudes = np.abs(weights)
    sigma = np.sum(magnitudes ** (-2.0 / (k - 2))) ** -0.5
    w = sigma * magnitudes ** (-1.0 / (k - 2))

    subset_signs = (1, -1) if odd else (int(signs[0]),)
    for subset_sign in subset_signs:
        lam = subset_sign * sigma ** (k - 2)
        if odd:
            patterns = [tuple(int(subset_sign * s) for s in signs)]
        else:
            patterns = list(itertools.product((1, -1), repeat=len(subset)))
        for pattern in patterns:
            x = spec.U[:, list(subset)] @ (np.asarray(pattern) * w)
            yield lam, x, subset_sign, pattern


def enumerate_z_eigenpairs(spec: SymOdecoSpec, k: int) -> OdecoEigenpairSet:
    """Enumerate every nonzero Z-eigenpair in closed form.

    Raises:
        SpecError: If k < 3 or an enumerated pair misses the 1e-10 residual
            (which would mean the spec is numerically invalid).
    """
    tensor = odeco_build_sym(spec, k)
    result = OdecoEigenpairSet(spec=spec, k=k, tensor=tensor)
    for size in range(1, spec.r + 1):
        for subset in itertools.combinations(range(spec.r), size):
            for lam, x, subset_sign, pattern in _subset_pairs(spec, k, subset):
                residual = float(np.linalg.norm(z_residual(tensor, x)))
                if residual > ENUMERATION_RESIDUAL_TOL:
                    raise SpecError(
                        f"enumerated pair for subset {subset} has residual {residual:.2e}",
                        field="lambdas",
                    )
                pair = ZEigenPair(eigenvalue=float(lam), x=x, residual=residual, method="closed_form")
                result.entries.append(
                    OdecoEigenpair(pair=pair, subset=subset, subset_sign=subset_sign, pattern=pattern)
                )
    logger.info(f"Enumerated {len(result)} nonzero Z-eigenpairs (n={spec.n}, r={spec.r}, k={k})")
    return result


def count_nonzero_z_eigenpairs(spec: SymOdecoSpec, k: int) -> int:
    """Size of the enumeration: 2(2^r - 1) for odd k, Σ_groups (3^size - 1) for even k."""
    if k % 2 == 1:
        return 2 * (2 ** spec.r - 1)
    positive = int(np.sum(spec.lambdas > 0))
    negative = spec.r - positive
    return (3 ** positive - 1) + (3 ** negative - 1)


def count_eigen_lines(spec: SymOdecoSpec, k: int) -> int:
    """Number of nonzero Z-eigen-lines (x and -x identified)."""
    return count_nonzero_z_eigenpairs(spec, k) // 2


def orthogonal_completion(U: np.ndarray) -> np.ndarray:
    """Extend orthonormal columns U (n×r) to an n×n orthogonal matrix."""
    complement = linalg.null_space(U.T) if U.shape[1] < U.shape[0] else np.zeros((U.shape[0], 0))
    return np.hstack([U, complement])


@dataclass
class JacobianCheck:
    """Diagonal-frame Jacobian comparison for one enumerated pair.

    Attributes:
        max_deviation: Largest entrywise gap between the rotated Jacobian
            and the block formula.
        spectral_deviation: Largest gap between computed and predicted
            eigenvalues (both sorted).
        nonsingular: Smallest computed |eigenvalue| clears the relative
            threshold.
        eigenvalues: Computed eigenvalues of the rotated Jacobian.
        expected_eigenvalues: Eigenvalues predicted by the block formula.
        tol: Tolerance used for the verdicts.
    """

    max_deviation: float
    spectral_deviation: float
    nonsingular: bool
    eigenvalues: List[float]
    expected_eigenvalues: List[float]
    tol: float = JACOBIAN_CHECK_TOL

    @property
    def matches(self) -> bool:
        return self.max_deviation <= self.tol and self.spectral_deviation <= self.tol

    def to_dict(self) -> dict:
        return {
            "max_deviation": self.max_deviation,
            "spectral_deviation": self.spectral_deviation,
            "matches": self.matches,
            "nonsingular": self.nonsingular,
            "eigenvalues": list(self.eigenvalues),
            "expected_eigenvalues": list(self.expected_eigenvalues),
        }


def odeco_jacobian_check(
    spec: SymOdecoSpec,
    k: int,
    entry: OdecoEigenpair,
    tol: float = JACOBIAN_CHECK_TOL,
) -> JacobianCheck:
    """Compare z_jacobian in the diagonal frame with the block formula.

    Rotates ∇T(x) into the frame of an orthogonal completion Q of U,
    permutes Λ to the leading block and compares against
    [[(k-2)λI - kλ zzᵀ, 0], [0, -λI]]. The spectrum of the rotated
    Jacobian is computed and checked against (k-2)λ (|Λ|-1 times), -2λ
    and -λ (n-|Λ| times).

    Raises:
        SpecError: If the pair is not an eigenpair of this spec.
    """
    pair = entry.pair
    tensor = odeco_build_sym(spec, k)
    if pair.x.shape != (spec.n,) or any(i >= spec.r for i in entry.subset):
        raise SpecError("pair does not belong to this spec", field="pair")
    if float(np.linalg.norm(z_residual(tensor, pair.x))) > 1e-8:
        raise SpecError("pair is not a Z-eigenpair of this spec", field="pair")

    Q = orthogonal_completion(spec.U)
    order = list(entry.subset) + [i for i in range(spec.n) if i not in entry.subset]
    Q = Q[:, order]
    jacobian = Q.T @ z_jacobian(tensor, pair.x) @ Q

    lam = pair.eigenvalue
    size = len(entry.subset)
    z = (Q.T @ pair.x)[:size]
    expected = -lam * np.eye(spec.n)
    expected[:size, :size] = (k - 2) * lam * np.eye(size) - k * lam * np.outer(z, z)
    deviation = float(np.max(np.abs(jacobian - expected)))

    computed = linalg.eigvalsh(0.5 * (jacobian + jacobian.T))
    predicted = np.sort([(k - 2) * lam] * (size - 1) + [-2.0 * lam] + [-lam] * (spec.n - size))
    spectral_deviation = float(np.max(np.abs(computed - predicted)))
    magnitudes = np.abs(computed)
    nonsingular = bool(magnitudes.min() > tol * max(1.0, magnitudes.max()))

    if deviation > tol or spectral_deviation > tol:
        logger.warning(
            f"Jacobian of subset {entry.subset} deviates from the block formula "
            f"(entrywise {deviation:.2e}, spectral {spectral_deviation:.2e})"
        )
    return JacobianCheck(
        max_deviation=deviation,
        spectral_deviation=spectral_deviation,
        nonsingular=nonsingular,
        eigenvalues=[float(v) for v in computed],
        expected_eigenvalues=[float(v) for v in predicted],
        tol=tol,
    )


def certify_all(spec: SymOdecoSpec, k: int, tol: float = DEFAULT_CERT_TOL) -> List[CertificationReport]:
    """certify_z on every enumerated pair; all should be nondegenerate."""
    eigenpairs = enumerate_z_eigenpairs(spec, k)
    reports = [certify_z(eigenpairs.tensor, pair.x, tol=tol) for pair in eigenpairs.pairs]
    degenerate = sum(1 for report in reports if not report.nondegenerate)
    if degenerate:
        logger.warning(f"{degenerate} of {len(reports)} odeco eigenpairs certified degenerate")
    return reports


def random_sym_spec(
    n: int,
    r: int,
    seed: Optional[int] = None,
    mixed_signs: bool = True,
) -> SymOdecoSpec:
    """Random spec: first r columns of a Haar orthogonal matrix, |λ| in [0.5, 2]."""
    if not 1 <= r <= n:
        raise SpecError(f"need 1 <= r <= n, got r={r}, n={n}", field="r")
    rng = np.random.default_rng(seed)
    q = random_orthogonal(n, seed=rng).values
    magnitudes = rng.uniform(0.5, 2.0, size=r)
    signs = rng.choice([-1.0, 1.0], size=r) if mixed_signs else np.ones(r)
    return SymOdecoSpec(U=q[:, :r], lambdas=signs * magnitudes)


def random_general_spec(dims: Sequence[int], r: int, seed: Optional[int] = None) -> GeneralOdecoSpec:
    """Random general spec with independent orthonormal factors."""
    if not 1 <= r <= min(dims):
        raise SpecError(f"need 1 <= r <= min(dims), got r={r}, dims={list(dims)}", field="r")
    rng = np.random.default_rng(seed)
    factors = []
    for n in dims:
        q, _ = np.linalg.qr(rng.standard_normal((n, r)))
        factors.append(q)
    lambdas = rng.choice([-1.0, 1.0], size=r) * rng.uniform(0.5, 2.0, size=r)
    return GeneralOdecoSpec(factors=tuple(factors), lambdas=lambdas)
