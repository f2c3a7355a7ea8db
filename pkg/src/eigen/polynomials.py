"""Univariate roots, binary forms and Sylvester resultants.

Univariate polynomials use numpy's descending coefficient order. A binary
form of degree d is stored as coefficients c_m of x1^{d-m} x2^m, m = 0..d.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np
from scipy import linalg

logger = logging.getLogger(__name__)

ZERO_COEFF_TOL = 1e-12
MERGE_TOL = 1e-7
MULTIPLE_ROOT_RADIUS = 1e-2
MULTIPLE_ROOT_TOL = 1e-9


def trim_leading(coeffs: Sequence[complex], tol: float = ZERO_COEFF_TOL) -> np.ndarray:
    """Drop leading coefficients that are negligible relative to the largest."""
    coeffs = np.asarray(coeffs)
    scale = np.max(np.abs(coeffs)) if coeffs.size else 0.0
    if scale == 0.0:
        return coeffs[:0]
    nonzero = np.nonzero(np.abs(coeffs) > tol * scale)[0]
    return coeffs[nonzero[0]:]


def aberth_roots(coeffs: Sequence[complex], tol: float = 1e-14, maxit: int = 500) -> np.ndarray:
    """All complex roots by the Aberth-Ehrlich simultaneous iteration.

    Args:
        coeffs: Descending coefficients; leading zeros are trimmed.
        tol: Relative step size at which a root is considered settled.
        maxit: Iteration cap.

    Returns:
        Array of degree-many complex roots (empty for constants).
    """
    p = trim_leading(np.asarray(coeffs, dtype=complex))
    degree = len(p) - 1
    if degree < 1:
        return np.zeros(0, dtype=complex)
    p = p / p[0]
    if degree == 1:
        return np.array([-p[1]])

    dp = np.polyder(p)
    # Initial guesses on a circle around the root centroid.
    center = -p[1] / degree
    radius = 1.0 + np.max(np.abs(p[1:]))
    radius = min(radius, 2.0 * np.max(np.abs(p[1:]) ** (1.0 / np.arange(1, degree + 1))) + 1e-3)
    angles = 2.0 * np.pi * np.arange(degree) / degree + 0.4
    z = center + radius * np.exp(1j * angles)

    active = np.ones(degree, dtype=bool)
    for iteration in range(maxit):
        values = np.polyval(p, z)
        derivs = np.polyval(dp, z)
        ratio = np.divide(values, derivs, out=np.zeros_like(values), where=derivs != 0)
        diffs = z[:, None] - z[None, :]
        np.fill_diagonal(diffs, 1.0)
        repulsion = np.sum(1.0 / diffs, axis=1) - 1.0
        denom = 1.0 - ratio * repulsion
        step = np.divide(ratio, denom, out=ratio.copy(), where=denom != 0)
        step[~active] = 0.0
        z = z - step
        active = np.abs(step) > tol * np.maximum(1.0, np.abs(z))
        if not active.any():
            logger.debug(f"Aberth converged after {iteration + 1} iterations")
            break
    else:
        logger.debug(f"Aberth reached maxit={maxit} with {active.sum()} roots still moving")
    return z


def _derivative_ratio(p: np.ndarray, point: complex, order: int) -> float:
    """|p^{(order)}(point)| relative to the size of that derivative's terms."""
    q = p
    for _ in range(order):
        q = np.polyder(q)
    if q.size == 0:
        return 0.0
    powers = np.abs(point) ** np.arange(len(q) - 1, -1, -1)
    scale = np.sum(np.abs(q) * powers)
    if scale == 0.0:
        return 0.0
    return float(abs(np.polyval(q, point)) / scale)


def _is_multiple_root(p: np.ndarray, point: complex, multiplicity: int) -> bool:
    return all(
        _derivative_ratio(p, point, order) <= MULTIPLE_ROOT_TOL for order in range(multiplicity)
    )


def cluster_roots(
    roots: Sequence[complex],
    coeffs: Sequence[complex] = None,
    merge_tol: float = MERGE_TOL,
) -> List[Tuple[complex, int]]:
    """Group numerically coincident roots.

    Roots within merge_tol (relative to max(1, |z|)) are merged first. When
    the polynomial is given, neighbouring clusters are then merged if their
    centroid is a root of the combined multiplicity, since a root of
    multiplicity m is only resolved to about eps^{1/m}.

    Returns:
        (centroid, multiplicity) pairs sorted by (real, imag).
    """
    clusters: List[List[complex]] = []
    for root in roots:
        for cluster in clusters:
            center = np.mean(cluster)
            if abs(root - center) <= merge_tol * max(1.0, abs(center)):
                cluster.append(root)
                break
        else:
            clusters.append([root])

    if coeffs is not None and len(clusters) > 1:
        p = trim_leading(np.asarray(coeffs, dtype=complex))
        merged = True
        while merged:
            merged = False
            for a, b in itertools.combinations(range(len(clusters)), 2):
                ca, cb = np.mean(clusters[a]), np.mean(clusters[b])
                if abs(ca - cb) > MULTIPLE_ROOT_RADIUS * max(1.0, abs(ca)):
                    continue
                union = clusters[a] + clusters[b]
                if _is_multiple_root(p, np.mean(union), len(union)):
                    clusters[a] = union
                    del clusters[b]
                    merged = True
                    break

    result = [(complex(np.mean(c)), len(c)) for c in clusters]
    merged_count = sum(1 for _, m in result if m > 1)
    if merged_count:
        logger.debug(f"Merged roots into {merged_count} multiple clusters")
    return sorted(result, key=lambda item: (round(item[0].real, 12), round(item[0].imag, 12)))


@dataclass(eq=False)
class BinaryForm:
    """Homogeneous polynomial sum_m c_m x1^{d-m} x2^m."""

    coeffs: np.ndarray

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=complex)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def scale(self) -> float:
        return float(np.max(np.abs(self.coeffs))) if self.coeffs.size else 0.0

    def is_zero(self, tol: float = ZERO_COEFF_TOL, reference: float = 1.0) -> bool:
        return self.scale() <= tol * max(1.0, reference)

    def __call__(self, x1: complex, x2: complex) -> complex:
        d = self.degree
        return complex(sum(c * x1 ** (d - m) * x2 ** m for m, c in enumerate(self.coeffs)))

    def projective_roots(self, merge_tol: float = MERGE_TOL) -> List[Tuple[np.ndarray, int]]:
        """Roots as (direction, multiplicity) on the complex projective line.

        Directions are scaled so their largest-modulus entry is 1. Factors
        x2^a and x1^b are read off the leading and trailing zero
        coefficients; the remaining part is dehomogenized at whichever end
        coefficient is larger.
        """
        c = self.coeffs
        scale = self.scale()
        if scale == 0.0:
            return []
        small = np.abs(c) <= ZERO_COEFF_TOL * scale
        lead = int(np.argmin(small)) if not small.all() else len(c)
        trail = int(np.argmin(small[::-1])) if not small.all() else 0
        roots: List[Tuple[np.ndarray, int]] = []
        if lead:
            roots.append((np.array([1.0 + 0j, 0.0]), lead))
        if trail:
            roots.append((np.array([0.0 + 0j, 1.0]), trail))

        core = c[lead:len(c) - trail]
        if len(core) > 1:
            if abs(core[0]) >= abs(core[-1]):
                # Chart x2 = 1: descending in t = x1 / x2.
                for t, mult in cluster_roots(aberth_roots(core), core, merge_tol):
                    roots.append((normalize_direction(np.array([t, 1.0])), mult))
            else:
                # Chart x1 = 1: descending in s = x2 / x1.
                flipped = core[::-1]
                for s, mult in cluster_roots(aberth_roots(flipped), flipped, merge_tol):
                    roots.append((normalize_direction(np.array([1.0, s])), mult))
        return roots


def normalize_direction(x: np.ndarray) -> np.ndarray:
    """Scale a nonzero vector so its largest-modulus entry equals 1."""
    x = np.asarray(x, dtype=complex)
    return x / x[int(np.argmax(np.abs(x)))]


def direction_distance(u: np.ndarray, v: np.ndarray) -> float:
    """Sine of the angle between two complex lines."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    cos = abs(np.vdot(u, v)) / (np.linalg.norm(u) * np.linalg.norm(v))
    return float(np.sqrt(max(0.0, 1.0 - min(1.0, cos) ** 2)))


def binary_forms_n2(array: np.ndarray) -> List[BinaryForm]:
    """The two forms (A x^{k-1})_1 and (A x^{k-1})_2 of an order-k tensor with n = 2."""
    k = array.ndim
    d = k - 1
    forms = []
    for i in range(2):
        coeffs = np.zeros(d + 1)
        for index in itertools.product(range(2), repeat=d):
            coeffs[sum(index)] += array[(i,) + index]
        forms.append(BinaryForm(coeffs))
    return forms


def sylvester_matrix(f: Sequence[complex], g: Sequence[complex]) -> np.ndarray:
    """Sylvester matrix of two binary forms given by their coefficients."""
    f = np.asarray(f, dtype=complex)
    g = np.asarray(g, dtype=complex)
    d, e = len(f) - 1, len(g) - 1
    size = d + e
    matrix = np.zeros((size, size), dtype=complex)
    for row in range(e):
        matrix[row, row:row + d + 1] = f
    for row in range(d):
        matrix[e + row, row:row + e + 1] = g
    return matrix


def resultant(f: Sequence[complex], g: Sequence[complex]) -> complex:
    """Resultant of two binary forms; zero iff they share a projective root."""
    return complex(linalg.det(sylvester_matrix(f, g)))


def interpolate_determinant(matrix_at, degree: int, radius: float = 1.0) -> np.ndarray:
    """Coefficients of λ -> det(matrix_at(λ)), a polynomial of known degree bound.

    Evaluates at degree+1 scaled roots of unity and inverts the discrete
    Fourier transform.

    Returns:
        Descending coefficients of length degree + 1.
    """
    count = degree + 1
    nodes = radius * np.exp(2j * np.pi * np.arange(count) / count)
    values = np.array([linalg.det(matrix_at(node)) for node in nodes])
    ascending = np.fft.fft(values) / count / radius ** np.arange(count)
    return ascending[::-1]
