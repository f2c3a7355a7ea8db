"""H-eigenpairs: A x^{k-1} = λ x^{[k-1]}.

Residual, Jacobian and the rank-based nondegeneracy test work at any n
with complex arithmetic. For n = 2 the characteristic polynomial is the
Sylvester resultant of the two binary forms
(A x^{k-1})_i - λ x_i^{k-1}, and every eigenpair is recovered exactly from
its roots.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from scipy import linalg

from ..errors import InvalidInputError, NotAnEigenpairError
from ..tensors.core import AnyTensor, contract_all_but_one, contraction_jacobian
from .certification import DEFAULT_CERT_TOL
from .polynomials import (
    MERGE_TOL,
    BinaryForm,
    aberth_roots,
    binary_forms_n2,
    cluster_roots,
    direction_distance,
    interpolate_determinant,
    normalize_direction,
    sylvester_matrix,
)

logger = logging.getLogger(__name__)

ALIGNMENT_TOL = 1e-6
LEADING_TOL = 1e-10
RESIDUAL_TOL = 1e-8
CANDIDATE_TOL = 1e-5
FORM_ZERO_TOL = 1e-9


@dataclass(eq=False)
class HEigenPair:
    """An H-eigenvalue with an eigenvector scaled to largest-modulus entry 1.

    Attributes:
        eigenvalue: Complex λ.
        x: Complex eigenvector.
        residual: ||A x^{k-1} - λ x^{[k-1]}|| under the normalization.
        multiplicity: Share of the characteristic-root multiplicity assigned
            to this pair; shares of one root sum to its multiplicity.
        root_multiplicity: Multiplicity of λ as a characteristic root.
        whole_space: True when every direction is an eigenvector for λ.
        nondegenerate: Rank verdict, None if not evaluated.
    """

    eigenvalue: complex
    x: np.ndarray
    residual: float
    multiplicity: int = 1
    root_multiplicity: int = 1
    whole_space: bool = False
    nondegenerate: Optional[bool] = None

    @property
    def simple_root(self) -> bool:
        return self.root_multiplicity == 1

    def to_dict(self) -> dict:
        return {
            "lambda": [float(self.eigenvalue.real), float(self.eigenvalue.imag)],
            "x": [[float(v.real), float(v.imag)] for v in self.x],
            "residual": float(self.residual),
            "multiplicity": int(self.multiplicity),
            "root_multiplicity": int(self.root_multiplicity),
            "simple_root": self.simple_root,
            "whole_space": self.whole_space,
            "nondegenerate": self.nondegenerate,
        }


@dataclass(eq=False)
class CharPolyN2:
    """Characteristic polynomial of an order-k tensor with n = 2.

    Attributes:
        coefficients: Descending real coefficients, normalized to a monic
            polynomial when the leading coefficient is non-negligible.
        degree: Numerical degree.
        expected_degree: 2(k-1).
        leading_coefficient: Raw leading coefficient before normalization.
    """

    coefficients: np.ndarray
    degree: int
    expected_degree: int
    leading_coefficient: float

    @property
    def deficient(self) -> bool:
        return self.degree < self.expected_degree

    def roots(self) -> np.ndarray:
        return aberth_roots(self.coefficients)

    def __call__(self, lam: complex) -> complex:
        return complex(np.polyval(self.coefficients, lam))


@dataclass(eq=False)
class HEigenSolution:
    """All H-eigenpairs of an n = 2 tensor, with the polynomial they came from."""

    pairs: List[HEigenPair]
    charpoly: CharPolyN2
    deficient: bool = False
    warnings: List[str] = field(default_factory=list)

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def __getitem__(self, index: int) -> HEigenPair:
        return self.pairs[index]

    @property
    def total_multiplicity(self) -> int:
        return sum(p.multiplicity for p in self.pairs)


def _vector(A: AnyTensor, x) -> np.ndarray:
    if len(set(A.dims)) != 1:
        raise InvalidInputError(f"H-eigenpairs need equal dims, got {list(A.dims)}", field="dims")
    vec = np.asarray(x, dtype=complex).ravel()
    if vec.shape != (A.dims[0],):
        raise InvalidInputError(f"expected a vector of length {A.dims[0]}", field="x")
    if not np.any(vec):
        raise InvalidInputError("eigenvectors must be nonzero", field="x")
    return vec


def h_residual(A: AnyTensor, x, lam: complex) -> np.ndarray:
    """A x^{k-1} - λ x^{[k-1]} in complex arithmetic."""
    vec = _vector(A, x)
    return contract_all_but_one(A, vec) - lam * vec ** (A.order - 1)


def h_jacobian(A: AnyTensor, x, lam: complex) -> np.ndarray:
    """Jacobian in x at fixed λ: (k-1)(A x^{k-2} - λ diag(x^{[k-2]})).

    For nonsymmetric A the first term is the exact derivative of A x^{k-1}.
    """
    vec = _vector(A, x)
    k = A.order
    return contraction_jacobian(A, vec) - (k - 1) * lam * np.diag(vec ** (k - 2))


def normalized_residual(A: AnyTensor, x, lam: complex) -> float:
    """Residual after scaling x to largest-modulus entry 1."""
    return float(np.linalg.norm(h_residual(A, normalize_direction(_vector(A, x)), lam)))


def h_nondegenerate(
    A: AnyTensor,
    x,
    lam: complex,
    tol: float = DEFAULT_CERT_TOL,
    residual_tol: Optional[float] = None,
) -> bool:
    """Rank test: the Jacobian has rank n-1 with kernel along x.

    Raises:
        NotAnEigenpairError: If the normalized residual exceeds residual_tol
            (defaults to tol).
    """
    residual_tol = tol if residual_tol is None else residual_tol
    vec = normalize_direction(_vector(A, x))
    residual = normalized_residual(A, vec, lam)
    if residual > residual_tol:
        raise NotAnEigenpairError(
            f"residual {residual:.3e} exceeds {residual_tol:.1e}; not an H-eigenpair", field="x"
        )
    _, singular, vh = linalg.svd(h_jacobian(A, vec, lam))
    if len(singular) < 2:
        return True
    if not singular[-2] > tol * max(1.0, singular[0]):
        return False
    kernel = np.conj(vh[-1])
    return direction_distance(kernel, vec) < ALIGNMENT_TOL


def _check_n2(A: AnyTensor) -> None:
    if A.dims[0] != 2 or len(set(A.dims)) != 1:
        raise InvalidInputError(f"the n = 2 oracle needs dims all equal to 2, got {list(A.dims)}", field="dims")


def _shifted_forms(forms: List[BinaryForm], lam: complex) -> List[BinaryForm]:
    f = forms[0].coeffs.copy()
    g = forms[1].coeffs.copy()
    f[0] -= lam
    g[-1] -= lam
    return [BinaryForm(f), BinaryForm(g)]


def charpoly_n2(A: AnyTensor) -> CharPolyN2:
    """Sylvester resultant of the two shifted binary forms, as a polynomial in λ."""
    _check_n2(A)
    forms = binary_forms_n2(A.array)
    d = A.order - 1
    expected = 2 * d
    radius = max(1.0, max(form.scale() for form in forms))

    def matrix_at(lam: complex) -> np.ndarray:
        f, g = _shifted_forms(forms, lam)
        return sylvester_matrix(f.coeffs, g.coeffs)

    coefficients = np.real(interpolate_determinant(matrix_at, expected, radius))
    scale = np.max(np.abs(coefficients))
    significant = np.nonzero(np.abs(coefficients) > LEADING_TOL * scale)[0]
    first = int(significant[0]) if significant.size else len(coefficients) - 1
    leading = float(coefficients[first])
    trimmed = coefficients[first:] / leading if leading else coefficients[first:]
    degree = len(trimmed) - 1
    if degree < expected:
        logger.warning(f"Characteristic polynomial degree {degree} below {expected}")
    return CharPolyN2(
        coefficients=trimmed,
        degree=degree,
        expected_degree=expected,
        leading_coefficient=float(coefficients[0]),
    )


def _polish(A: AnyTensor, x: np.ndarray, lam: complex, steps: int = 5) -> tuple:
    """Newton on (free entries of x, λ) with the largest entry pinned to 1."""
    x = normalize_direction(x)
    k = A.order
    pinned = int(np.argmax(np.abs(x)))
    free = [i for i in range(len(x)) if i != pinned]
    best = (x, lam, normalized_residual(A, x, lam))
    for _ in range(steps):
        x_cur, lam_cur, res_cur = best
        if res_cur == 0.0:
            break
        jac = np.column_stack([h_jacobian(A, x_cur, lam_cur)[:, free], -x_cur ** (k - 1)])
        step, *_ = linalg.lstsq(jac, -h_residual(A, x_cur, lam_cur))
        x_new = x_cur.copy()
        x_new[free] += step[:-1]
        lam_new = lam_cur + step[-1]
        res_new = normalized_residual(A, x_new, lam_new)
        if res_new >= res_cur:
            break
        best = (normalize_direction(x_new), lam_new, res_new)
    return best


WHOLE_SPACE_DIRECTIONS = (
    np.array([1.0, 0.0]),
    np.array([0.0, 1.0]),
    np.array([1.0, 1.0]),
    np.array([1.0, -1.0]),
)


def _directions_for(A: AnyTensor, forms: List[BinaryForm], lam: complex, scale: float) -> tuple:
    f, g = _shifted_forms(forms, lam)
    reference = max(1.0, scale)
    f_zero = f.is_zero(FORM_ZERO_TOL, reference)
    g_zero = g.is_zero(FORM_ZERO_TOL, reference)
    if f_zero and g_zero:
        return [normalize_direction(v) for v in WHOLE_SPACE_DIRECTIONS], True

    candidates = []
    for form, is_zero in ((f, f_zero), (g, g_zero)):
        if not is_zero:
            candidates.extend(direction for direction, _ in form.projective_roots())
    scored = sorted(
        ((normalized_residual(A, v, lam) / reference, v) for v in candidates),
        key=lambda item: item[0],
    )
    accepted: List[np.ndarray] = []
    for score, direction in scored:
        if score > CANDIDATE_TOL and accepted:
            break
        if all(direction_distance(direction, other) > ALIGNMENT_TOL for other in accepted):
            accepted.append(direction)
    return accepted, False


def solve_h_n2(
    A: AnyTensor,
    merge_tol: float = MERGE_TOL,
    residual_tol: float = RESIDUAL_TOL,
    cert_tol: float = DEFAULT_CERT_TOL,
) -> HEigenSolution:
    """All H-eigenpairs of an order-k tensor with n = 2.

    Roots the characteristic polynomial, merges clustered roots, extracts
    the common projective roots of the two shifted forms for each
    eigenvalue and polishes every pair with Newton steps.

    Returns:
        HEigenSolution whose pair multiplicities sum to the polynomial
        degree. ``deficient`` flags a collapsed leading coefficient.
    """
    _check_n2(A)
    charpoly = charpoly_n2(A)
    forms = binary_forms_n2(A.array)
    scale = max(form.scale() for form in forms)
    clusters = cluster_roots(charpoly.roots(), charpoly.coefficients, merge_tol)
    warnings: List[str] = []

    pairs: List[HEigenPair] = []
    for lam, multiplicity in clusters:
        if abs(lam.imag) <= merge_tol * max(1.0, abs(lam)):
            lam = complex(lam.real, 0.0)
        directions, whole_space = _directions_for(A, forms, lam, scale)
        if not directions:
            message = f"no eigenvector recovered for eigenvalue {lam:.6g}"
            logger.warning(message)
            warnings.append(message)
            continue
        directions = directions[:multiplicity]
        shares = [1] * (len(directions) - 1) + [multiplicity - len(directions) + 1]

        for direction, share in zip(directions, shares):
            if whole_space:
                x, lam_pair = direction, lam
                residual = normalized_residual(A, x, lam)
            else:
                x, lam_pair, residual = _polish(A, direction, lam)
            if residual > residual_tol:
                message = f"eigenpair at {lam_pair:.6g} polished only to {residual:.2e}"
                logger.warning(message)
                warnings.append(message)

            verdict = None
            if whole_space:
                verdict = False
            elif residual <= residual_tol:
                verdict = h_nondegenerate(A, x, lam_pair, tol=cert_tol, residual_tol=residual_tol)
            pairs.append(
                HEigenPair(
                    eigenvalue=complex(lam_pair),
                    x=x,
                    residual=residual,
                    multiplicity=share,
                    root_multiplicity=multiplicity,
                    whole_space=whole_space,
                    nondegenerate=verdict,
                )
            )

    pairs.sort(key=lambda p: (round(p.eigenvalue.real, 12), round(p.eigenvalue.imag, 12),
                              tuple(np.round(np.abs(p.x), 12)), tuple(np.round(p.x.real, 12))))
    logger.debug(f"H-eigen: {len(pairs)} pairs from degree {charpoly.degree}")
    return HEigenSolution(pairs=pairs, charpoly=charpoly, deficient=charpoly.deficient, warnings=warnings)
