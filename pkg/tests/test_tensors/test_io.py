"""Tests for the tensor JSON codec."""

import json

import numpy as np
import pytest

from src.errors import InvalidTensorError
from src.tensors.core import SymmetricTensor, random_symmetric, random_tensor
from src.tensors.io import load_tensor, read_json, tensor_from_dict, tensor_to_dict


@pytest.fixture
def tensor_file(tmp_path):
    """Write a tensor document and return its path."""

    def _write(document, name="tensor.json"):
        path = tmp_path / name
        if isinstance(document, str):
            path.write_text(document)
        else:
            path.write_text(json.dumps(document))
        return path

    return _write


class TestTensorCodec:
    """Tests for tensor_from_dict and tensor_to_dict."""

    def test_round_trip_symmetric(self):
        """Test a symmetric tensor survives encoding."""
        A = random_symmetric(2, 3, seed=0)
        decoded = tensor_from_dict(json.loads(json.dumps(tensor_to_dict(A))))
        assert isinstance(decoded, SymmetricTensor)
        assert np.array_equal(decoded.array, A.array)

    def test_general_tensor_document(self):
        """Test a nonsymmetric document decodes with its dims."""
        data = tensor_to_dict(random_tensor([2, 3, 2], seed=1))
        assert data["symmetric"] is False
        assert tensor_from_dict(data).dims == (2, 3, 2)

    @pytest.mark.parametrize("missing", ["order", "dims", "entries"])
    def test_missing_field_named(self, missing):
        """Test the missing field is named in the error."""
        data = {"order": 3, "dims": [2, 2, 2], "entries": [0.0] * 8}
        del data[missing]
        with pytest.raises(InvalidTensorError) as exc:
            tensor_from_dict(data)
        assert exc.value.field == missing
        assert missing in str(exc.value)

    def test_dims_must_match_order(self):
        """Test dims of the wrong length are rejected."""
        with pytest.raises(InvalidTensorError) as exc:
            tensor_from_dict({"order": 3, "dims": [2, 2], "entries": [0.0] * 4})
        assert exc.value.field == "dims"

    def test_entry_count(self):
        """Test the entry count must equal the product of dims."""
        with pytest.raises(InvalidTensorError) as exc:
            tensor_from_dict({"order": 3, "dims": [2, 2, 2], "entries": [0.0] * 6})
        assert exc.value.field == "entries"

    def test_string_entry(self):
        """Test non-numeric entries are rejected."""
        with pytest.raises(InvalidTensorError):
            tensor_from_dict({"order": 3, "dims": [1, 1, 1], "entries": ["a"]})

    def test_symmetric_flag_verified(self):
        """Test a document claiming symmetry must be symmetric."""
        data = tensor_to_dict(random_tensor([2, 2, 2], seed=2))
        data["symmetric"] = True
        with pytest.raises(InvalidTensorError):
            tensor_from_dict(data)

    def test_symmetrize_on_request(self):
        """Test symmetrize projects instead of failing."""
        data = tensor_to_dict(random_tensor([2, 2, 2], seed=2))
        data["symmetric"] = True
        assert isinstance(tensor_from_dict(data, symmetrize=True), SymmetricTensor)


class TestReadJson:
    """Tests for reading tensor files."""

    def test_load_tensor(self, tensor_file):
        """Test loading a valid file."""
        path = tensor_file(tensor_to_dict(random_symmetric(3, 3, seed=4)))
        assert load_tensor(path).dims == (3, 3, 3)

    def test_missing_file(self, tmp_path):
        """Test a missing file is an input error."""
        with pytest.raises(InvalidTensorError) as exc:
            read_json(tmp_path / "absent.json")
        assert exc.value.field == "path"

    def test_malformed_json(self, tensor_file):
        """Test malformed JSON is an input error."""
        with pytest.raises(InvalidTensorError) as exc:
            read_json(tensor_file("{not json"))
        assert exc.value.field == "json"

    def test_invalid_utf8(self, tmp_path):
        """Test a file with bytes that are not UTF-8 is an input error."""
        path = tmp_path / "binary.json"
        path.write_bytes(b'{"order": 3, "dims": [1, 1, 1], "entries": [\xff]}')
        with pytest.raises(InvalidTensorError) as exc:
            load_tensor(path)
        assert exc.value.field == "file"

    def test_directory_path(self, tmp_path):
        """Test a directory given as a tensor file is an input error."""
        with pytest.raises(InvalidTensorError) as exc:
            read_json(tmp_path)
        assert exc.value.field == "file"

    def test_nan_token_rejected(self, tensor_file):
        """Test NaN tokens never reach the tensor."""
        path = tensor_file('{"order": 3, "dims": [1, 1, 1], "entries": [NaN]}')
        with pytest.raises(InvalidTensorError) as exc:
            load_tensor(path)
        assert exc.value.field == "entries"
