"""Dense tensor storage and the multilinear kernels.

All tensors are stored densely in row-major order (last index fastest).
Kernels accept either DenseTensor or SymmetricTensor and work with real or
complex vectors; the complex path is used by the H-eigenpair machinery.

Slot indices are 0-based throughout.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Optional, Sequence, Union

import numpy as np

from ..errors import DimensionMismatchError, InvalidInputError, InvalidTensorError

logger = logging.getLogger(__name__)

SYMMETRY_TOL = 1e-12
ORTHOGONALITY_TOL = 1e-12


def _readonly(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=float, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class DenseTensor:
    """Order-k real tensor with explicit dimensions.

    Attributes:
        array: Read-only numpy array of shape dims.
    """

    array: np.ndarray

    def __post_init__(self):
        array = np.asarray(self.array)
        if array.ndim < 3:
            raise InvalidTensorError(f"order must be at least 3, got {array.ndim}", field="order")
        if any(d < 1 for d in array.shape):
            raise InvalidTensorError(f"dims must be positive, got {list(array.shape)}", field="dims")
        if np.iscomplexobj(array):
            raise InvalidTensorError("entries must be real", field="entries")
        if not np.all(np.isfinite(array)):
            raise InvalidTensorError("entries must be finite", field="entries")
        object.__setattr__(self, "array", _readonly(array))

    @classmethod
    def from_entries(cls, dims: Sequence[int], entries: Sequence[float]) -> "DenseTensor":
        """Build a tensor from row-major entries.

        Raises:
            InvalidTensorError: If the entry count does not match dims.
        """
        dims = [int(d) for d in dims]
        expected = math.prod(dims)
        if len(entries) != expected:
            raise InvalidTensorError(
                f"expected {expected} entries for dims {dims}, got {len(entries)}",
                field="entries",
            )
        return cls(np.asarray(entries, dtype=float).reshape(dims))

    @property
    def order(self) -> int:
        return self.array.ndim

    @property
    def dims(self) -> tuple:
        return tuple(self.array.shape)

    @property
    def entries(self) -> np.ndarray:
        return self.array.ravel()

    @property
    def is_cubical(self) -> bool:
        return len(set(self.dims)) == 1

    def __add__(self, other: "DenseTensor") -> "DenseTensor":
        _check_same_dims(self, other)
        return DenseTensor(self.array + _as_array(other))

    def __mul__(self, scalar: float) -> "DenseTensor":
        return DenseTensor(self.array * float(scalar))

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class SymmetricTensor:
    """Dense tensor whose entries are invariant under index permutations.

    Construction verifies symmetry (absolute tolerance 1e-12) unless
    ``symmetrize=True`` is passed, in which case the base is projected
    onto the symmetric subspace first.
    """

    base: DenseTensor
    symmetrize: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        base = self.base
        if not isinstance(base, DenseTensor):
            base = DenseTensor(np.asarray(base))
        if not base.is_cubical:
            raise InvalidTensorError(
                f"symmetric tensors need equal dims, got {list(base.dims)}", field="dims"
            )
        if self.symmetrize:
            base = DenseTensor(_symmetrized_array(base.array))
        elif not is_symmetric(base):
            raise InvalidTensorError("entries are not permutation-symmetric", field="entries")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "symmetrize", False)

    @property
    def array(self) -> np.ndarray:
        return self.base.array

    @property
    def order(self) -> int:
        return self.base.order

    @property
    def dims(self) -> tuple:
        return self.base.dims

    @property
    def n(self) -> int:
        return self.base.dims[0]

    @property
    def entries(self) -> np.ndarray:
        return self.base.entries

    def __add__(self, other: "SymmetricTensor") -> "SymmetricTensor":
        return SymmetricTensor(self.base + _as_dense(other))

    def __mul__(self, scalar: float) -> "SymmetricTensor":
        return SymmetricTensor(self.base * scalar)

    __rmul__ = __mul__


AnyTensor = Union[DenseTensor, SymmetricTensor]


@dataclass(frozen=True, eq=False)
class BlockVector:
    """Ordered list of real vectors, one per tensor slot."""

    blocks: tuple

    def __post_init__(self):
        blocks = tuple(_readonly(np.asarray(b, dtype=float).ravel()) for b in self.blocks)
        if not blocks:
            raise InvalidInputError("a block vector needs at least one block", field="blocks")
        object.__setattr__(self, "blocks", blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def __getitem__(self, index: int) -> np.ndarray:
        return self.blocks[index]

    def __iter__(self):
        return iter(self.blocks)

    @property
    def dims(self) -> tuple:
        return tuple(len(b) for b in self.blocks)

    def stacked(self) -> np.ndarray:
        return np.concatenate(self.blocks)

    def norm(self) -> float:
        return float(np.linalg.norm(self.stacked()))

    def on_sphere(self, tol: float = SYMMETRY_TOL) -> bool:
        """True when every block has unit Euclidean norm within tol."""
        return all(abs(np.linalg.norm(b) - 1.0) <= tol for b in self.blocks)

    def normalized(self) -> "BlockVector":
        return BlockVector(tuple(b / np.linalg.norm(b) for b in self.blocks))

    @classmethod
    def from_stacked(cls, values: np.ndarray, dims: Sequence[int]) -> "BlockVector":
        splits = np.cumsum(dims)[:-1]
        return cls(tuple(np.split(np.asarray(values, dtype=float), splits)))


@dataclass(frozen=True, eq=False)
class OrthogonalMatrix:
    """Square matrix U with UᵀU = I (entrywise tolerance 1e-12)."""

    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 2 or values.shape[0] != values.shape[1]:
            raise InvalidInputError(f"expected a square matrix, got shape {values.shape}", field="U")
        deviation = np.max(np.abs(values.T @ values - np.eye(values.shape[0])))
        if deviation > ORTHOGONALITY_TOL:
            raise InvalidInputError(f"matrix is not orthogonal (deviation {deviation:.2e})", field="U")
        object.__setattr__(self, "values", _readonly(values))

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def T(self) -> "OrthogonalMatrix":
        return OrthogonalMatrix(self.values.T)

    def __matmul__(self, other):
        if isinstance(other, OrthogonalMatrix):
            return OrthogonalMatrix(self.values @ other.values)
        return self.values @ np.asarray(other)


# ---------------------------------------------------------------------------
# Internal helpers
# ---------------------------------------------------------------------------


def _as_array(A: AnyTensor) -> np.ndarray:
    if isinstance(A, (DenseTensor, SymmetricTensor)):
        return A.array
    raise InvalidTensorError(f"expected a tensor, got {type(A).__name__}")


def _as_dense(A: AnyTensor) -> DenseTensor:
    return A.base if isinstance(A, SymmetricTensor) else A


def _check_same_dims(A: AnyTensor, B: AnyTensor) -> None:
    if A.dims != B.dims:
        raise DimensionMismatchError(f"dims differ: {list(A.dims)} vs {list(B.dims)}", field="dims")


def _as_vector(x, n: int, name: str = "x") -> np.ndarray:
    vec = np.asarray(x)
    if vec.ndim != 1 or vec.shape[0] != n:
        raise DimensionMismatchError(f"expected a vector of length {n}, got shape {vec.shape}", field=name)
    if not np.iscomplexobj(vec):
        vec = vec.astype(float)
    return vec


def _cubical_dim(A: AnyTensor) -> int:
    if len(set(A.dims)) != 1:
        raise DimensionMismatchError(f"operation needs equal dims, got {list(A.dims)}", field="dims")
    return A.dims[0]


def _block_list(A: AnyTensor, x) -> list:
    blocks = list(x.blocks) if isinstance(x, BlockVector) else [np.asarray(b) for b in x]
    if len(blocks) != A.order:
        raise DimensionMismatchError(
            f"tensor of order {A.order} needs {A.order} blocks, got {len(blocks)}", field="x"
        )
    for slot, (block, n) in enumerate(zip(blocks, A.dims)):
        if block.shape != (n,):
            raise DimensionMismatchError(
                f"block {slot} has length {block.shape[0]}, slot dimension is {n}", field="x"
            )
    return blocks


def _check_slot(A: AnyTensor, slot: int) -> None:
    if not 0 <= slot < A.order:
        raise InvalidInputError(f"slot {slot} out of range for order {A.order}", field="slot")


def contract_except(array: np.ndarray, vectors: Sequence[np.ndarray], keep: Sequence[int]) -> np.ndarray:
    """Contract every axis not in ``keep`` with the matching vector.

    Remaining axes keep their original relative order.
    """
    result = array
    for axis in reversed(range(array.ndim)):
        if axis in keep:
            continue
        result = np.tensordot(result, vectors[axis], axes=([axis], [0]))
    return result


def _symmetrized_array(array: np.ndarray) -> np.ndarray:
    perms = list(itertools.permutations(range(array.ndim)))
    total = np.zeros_like(array, dtype=float)
    for perm in perms:
        total += np.transpose(array, perm)
    return total / len(perms)


# ---------------------------------------------------------------------------
# Contractions
# ---------------------------------------------------------------------------


def contract_all_but_one(A: AnyTensor, x) -> np.ndarray:
    """Return A x^{k-1}: contract slots 2..k with x.

    Args:
        A: Tensor of order k with equal dims n.
        x: Real or complex vector of length n.

    Returns:
        Vector with entries sum a_{i i2..ik} x_{i2}...x_{ik}.

    Raises:
        DimensionMismatchError: If x has the wrong length.
    """
    n = _cubical_dim(A)
    vec = _as_vector(x, n)
    result = _as_array(A)
    for _ in range(A.order - 1):
        result = result @ vec
    return result


def contract_all_but_two(A: AnyTensor, x) -> np.ndarray:
    """Return the n×n matrix A x^{k-2} (slots 3..k contracted with x)."""
    n = _cubical_dim(A)
    vec = _as_vector(x, n)
    result = _as_array(A)
    for _ in range(A.order - 2):
        result = result @ vec
    return result


def contract_leave_slot(A: AnyTensor, x, slot: int) -> np.ndarray:
    """Contract A with x_j in every slot j != slot.

    Args:
        A: Tensor of order k.
        x: BlockVector (or sequence of k vectors) matching A's dims.
        slot: Slot left open (0-based).

    Returns:
        Vector of length n_slot.
    """
    _check_slot(A, slot)
    blocks = _block_list(A, x)
    return contract_except(_as_array(A), blocks, keep=(slot,))


def contract_leave_two_slots(A: AnyTensor, x, slot_i: int, slot_j: int) -> np.ndarray:
    """Contract A with x_l for every l outside {slot_i, slot_j}.

    Rows of the result are indexed by slot_i and columns by slot_j.

    Raises:
        InvalidInputError: If the two slots coincide or are out of range.
    """
    _check_slot(A, slot_i)
    _check_slot(A, slot_j)
    if slot_i == slot_j:
        raise InvalidInputError(f"slots must differ, got {slot_i} twice", field="slot")
    blocks = _block_list(A, x)
    result = contract_except(_as_array(A), blocks, keep=(slot_i, slot_j))
    return result if slot_i < slot_j else result.T


def contraction_jacobian(A: AnyTensor, x) -> np.ndarray:
    """Derivative of x -> A x^{k-1} for a tensor with equal dims.

    Sums the two-slot contractions that leave slot 0 and slot j open for
    j = 1..k-1. For symmetric A this equals (k-1) A x^{k-2}.
    """
    n = _cubical_dim(A)
    vec = _as_vector(x, n)
    array = _as_array(A)
    vectors = [vec] * A.order
    return sum(contract_except(array, vectors, keep=(0, j)) for j in range(1, A.order))


# ---------------------------------------------------------------------------
# Inner products and rank-one maps
# ---------------------------------------------------------------------------


def inner(A: AnyTensor, B: AnyTensor) -> float:
    """Entrywise inner product of two tensors with equal dims."""
    _check_same_dims(A, B)
    return float(np.sum(_as_array(A) * _as_array(B)))


def hs_norm(A: AnyTensor) -> float:
    """Hilbert-Schmidt (Frobenius) norm."""
    return float(np.linalg.norm(_as_array(A).ravel()))


def veronese(x, k: int) -> SymmetricTensor:
    """Return x^{⊗k}."""
    if k < 3:
        raise InvalidInputError(f"order must be at least 3, got {k}", field="k")
    vec = np.asarray(x, dtype=float).ravel()
    return SymmetricTensor(DenseTensor(reduce(np.multiply.outer, [vec] * k)))


def segre(x) -> DenseTensor:
    """Return x_1 ⊗ ... ⊗ x_k for a block vector."""
    blocks = list(x.blocks) if isinstance(x, BlockVector) else [np.asarray(b, dtype=float) for b in x]
    return DenseTensor(reduce(np.multiply.outer, blocks))


# ---------------------------------------------------------------------------
# Group action and symmetry
# ---------------------------------------------------------------------------


def orth_act(U: Union[OrthogonalMatrix, np.ndarray], A: AnyTensor) -> AnyTensor:
    """Apply U along every axis: (U·A)_{i..} = sum u_{i1 j1}...u_{ik jk} a_{j..}.

    Returns a tensor of the same kind as A. For symmetric input the rotated
    array is projected back onto the symmetric subspace, which is exact in
    real arithmetic.
    """
    values = U.values if isinstance(U, OrthogonalMatrix) else np.asarray(U, dtype=float)
    n = _cubical_dim(A)
    if values.shape != (n, n):
        raise DimensionMismatchError(
            f"matrix of shape {values.shape} cannot act on dimension {n}", field="U"
        )
    result = _as_array(A)
    # Each pass transforms the leading axis and moves it to the back.
    for _ in range(A.order):
        result = np.tensordot(result, values, axes=([0], [1]))
    if isinstance(A, SymmetricTensor):
        return SymmetricTensor(DenseTensor(result), symmetrize=True)
    return DenseTensor(result)


def is_symmetric(A: AnyTensor, tol: float = SYMMETRY_TOL) -> bool:
    """Verify permutation symmetry within an absolute tolerance."""
    array = _as_array(A)
    if len(set(array.shape)) != 1:
        return False
    for axis in range(1, array.ndim):
        # Adjacent transpositions generate the symmetric group.
        perm = list(range(array.ndim))
        perm[axis - 1], perm[axis] = perm[axis], perm[axis - 1]
        if np.max(np.abs(array - np.transpose(array, perm))) > tol:
            return False
    return True


def symmetrize(A: AnyTensor) -> SymmetricTensor:
    """Average A over all k! index permutations.

    Raises:
        InvalidTensorError: If dims are not all equal.
    """
    return SymmetricTensor(_as_dense(A), symmetrize=True)


# ---------------------------------------------------------------------------
# Sampling
# ---------------------------------------------------------------------------


def random_tensor(dims: Sequence[int], seed: Optional[int] = None) -> DenseTensor:
    """Gaussian tensor with independent standard normal entries."""
    rng = np.random.default_rng(seed)
    return DenseTensor(rng.standard_normal(tuple(int(d) for d in dims)))


def random_symmetric(n: int, k: int, seed: Optional[int] = None) -> SymmetricTensor:
    """Symmetrized Gaussian tensor in S(⊗^k R^n)."""
    return symmetrize(random_tensor([n] * k, seed))


def random_orthogonal(n: int, seed: Union[int, np.random.Generator, None] = None) -> OrthogonalMatrix:
    """Haar-distributed orthogonal matrix (QR of a Gaussian with sign fix)."""
    rng = np.random.default_rng(seed)
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    signs = np.sign(np.diag(r))
    signs[signs == 0] = 1.0
    return OrthogonalMatrix(q * signs)


def unit_vector(n: int, index: int) -> np.ndarray:
    """Standard basis vector e_index (0-based)."""
    vec = np.zeros(n)
    vec[index] = 1.0
    return vec


def diagonal_tensor(weights: Sequence[float], k: int) -> SymmetricTensor:
    """Order-k diagonal tensor with the given weights on the superdiagonal."""
    n = len(weights)
    array = np.zeros((n,) * k)
    for i, w in enumerate(weights):
        array[(i,) * k] = w
    return SymmetricTensor(DenseTensor(array))
