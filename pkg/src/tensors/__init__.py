"""Dense tensors, multilinear kernels and the tensor JSON codec."""

from .core import (
    BlockVector,
    DenseTensor,
    OrthogonalMatrix,
    SymmetricTensor,
    contract_all_but_one,
    contract_all_but_two,
    contract_leave_slot,
    contract_leave_two_slots,
    contraction_jacobian,
    diagonal_tensor,
    hs_norm,
    inner,
    is_symmetric,
    orth_act,
    random_orthogonal,
    random_symmetric,
    random_tensor,
    segre,
    symmetrize,
    unit_vector,
    veronese,
)
from .io import load_tensor, read_json, tensor_from_dict, tensor_to_dict

__all__ = [
    "BlockVector",
    "DenseTensor",
    "OrthogonalMatrix",
    "SymmetricTensor",
    "contract_all_but_one",
    "contract_all_but_two",
    "contract_leave_slot",
    "contract_leave_two_slots",
    "contraction_jacobian",
    "diagonal_tensor",
    "hs_norm",
    "inner",
    "is_symmetric",
    "orth_act",
    "random_orthogonal",
    "random_symmetric",
    "random_tensor",
    "segre",
    "symmetrize",
    "unit_vector",
    "veronese",
    "load_tensor",
    "read_json",
    "tensor_from_dict",
    "tensor_to_dict",
]
