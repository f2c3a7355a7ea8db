"""Tensor JSON codec.

Format:
    {"order": k, "dims": [n1, ..., nk], "symmetric": true|false,
     "entries": [... row-major, last index fastest ...]}
"""

import json
import logging
import math
from pathlib import Path
from typing import Any, Union

from ..errors import InvalidTensorError
from .core import AnyTensor, DenseTensor, SymmetricTensor

logger = logging.getLogger(__name__)


def _reject_constant(token: str) -> float:
    raise InvalidTensorError(f"non-finite value {token} is not allowed", field="entries")


def read_json(path: Union[str, Path]) -> Any:
    """Load a JSON document, rejecting NaN and Infinity tokens.

    Raises:
        InvalidTensorError: If the file is missing, unreadable, not UTF-8 or
            not valid JSON.
    """
    path = Path(path)
    if not path.exists():
        raise InvalidTensorError(f"file not found: {path}", field="path")
    try:
        with open(path, encoding="utf-8") as f:
            return json.load(f, parse_constant=_reject_constant)
    except json.JSONDecodeError as e:
        raise InvalidTensorError(f"malformed JSON in {path}: {e}", field="json") from e
    except UnicodeDecodeError as e:
        raise InvalidTensorError(f"{path} is not UTF-8 text: {e.reason}", field="file") from e
    except OSError as e:
        raise InvalidTensorError(f"cannot read {path}: {e.strerror}", field="file") from e


def tensor_from_dict(data: dict, symmetrize: bool = False) -> AnyTensor:
    """Decode a tensor document.

    Args:
        data: Parsed JSON object.
        symmetrize: Project onto the symmetric subspace instead of failing
            when a document marked symmetric does not verify.

    Returns:
        SymmetricTensor when the document says ``symmetric: true`` (or
        symmetrize is requested), DenseTensor otherwise.

    Raises:
        InvalidTensorError: Naming the offending field.
    """
    if not isinstance(data, dict):
        raise InvalidTensorError("tensor document must be a JSON object")
    for key in ("order", "dims", "entries"):
        if key not in data:
            raise InvalidTensorError("missing required field", field=key)

    order = data["order"]
    dims = data["dims"]
    entries = data["entries"]
    symmetric = data.get("symmetric", False)

    if not isinstance(order, int) or isinstance(order, bool) or order < 3:
        raise InvalidTensorError(f"order must be an integer >= 3, got {order!r}", field="order")
    if not isinstance(dims, list) or len(dims) != order:
        raise InvalidTensorError(f"dims must list {order} dimensions", field="dims")
    if not all(isinstance(d, int) and not isinstance(d, bool) and d > 0 for d in dims):
        raise InvalidTensorError(f"dims must be positive integers, got {dims}", field="dims")
    if not isinstance(symmetric, bool):
        raise InvalidTensorError(f"symmetric must be a boolean, got {symmetric!r}", field="symmetric")
    if not isinstance(entries, list):
        raise InvalidTensorError("entries must be a list", field="entries")
    if len(entries) != math.prod(dims):
        raise InvalidTensorError(
            f"expected {math.prod(dims)} entries for dims {dims}, got {len(entries)}",
            field="entries",
        )
    for index, value in enumerate(entries):
        if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
            raise InvalidTensorError(f"entry {index} is not a finite number: {value!r}", field="entries")

    tensor = DenseTensor.from_entries(dims, entries)
    if symmetric or symmetrize:
        return SymmetricTensor(tensor, symmetrize=symmetrize)
    return tensor


def tensor_to_dict(A: AnyTensor) -> dict:
    """Encode a tensor as a JSON-ready dict."""
    return {
        "order": A.order,
        "dims": [int(d) for d in A.dims],
        "symmetric": isinstance(A, SymmetricTensor),
        "entries": [float(v) for v in A.entries],
    }


def load_tensor(path: Union[str, Path], symmetrize: bool = False) -> AnyTensor:
    """Read and decode a tensor file."""
    tensor = tensor_from_dict(read_json(path), symmetrize=symmetrize)
    logger.debug(f"Loaded tensor {list(tensor.dims)} from {path}")
    return tensor
