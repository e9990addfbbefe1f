import json

import numpy as np
import pytest
from hypothesis import given

from cauchy_dual.blocks import make_block_operator
from cauchy_dual.errors import MatrixFormatError
from cauchy_dual.io import (
    block_from_json,
    block_to_json,
    kernel_spec_from_json,
    load_json,
    load_matrix,
    matrix_from_json,
    matrix_to_json,
    save_matrix,
)

from conftest import deficient_matrices


@given(deficient_matrices())
def test_matrix_roundtrip(A):
    np.testing.assert_array_equal(matrix_from_json(json.loads(json.dumps(matrix_to_json(A)))), A)


def test_layout_is_row_major():
    doc = matrix_to_json(np.array([[1, 2j], [3, 4]]))
    assert doc["data"] == [[1, 0], [0, 2], [3, 0], [4, 0]]


@pytest.mark.parametrize(
    "doc, where",
    [
        ([1, 2], "$"),
        ({"rows": 1, "cols": 1}, "$"),
        ({"rows": 0, "cols": 1, "data": []}, "$.rows"),
        ({"rows": 1, "cols": 2, "data": [[1, 0]]}, "$.data"),
        ({"rows": 1, "cols": 1, "data": [[1, "x"]]}, "$.data[0]"),
        ({"rows": 1, "cols": 1, "data": [[1]]}, "$.data[0]"),
        ({"rows": True, "cols": 1, "data": [[1, 0]]}, "$.rows"),
    ],
)
def test_malformed_matrix(doc, where):
    with pytest.raises(MatrixFormatError) as err:
        matrix_from_json(doc)
    assert err.value.where == where


def test_nonfinite_rejected():
    with pytest.raises(MatrixFormatError):
        matrix_from_json({"rows": 1, "cols": 1, "data": [[float("inf"), 0]]})


def test_file_roundtrip(tmp_path):
    A = np.array([[1, 0], [1, 0]], dtype=complex)
    save_matrix(tmp_path / "t.json", A)
    np.testing.assert_array_equal(load_matrix(tmp_path / "t.json"), A)


def test_decode_error_has_position(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"rows": 1,\n "cols": }')
    with pytest.raises(MatrixFormatError, match="line 2 column"):
        load_json(p)


def test_block_roundtrip():
    op = make_block_operator("upper_1x2", {"T1": np.eye(2), "T2": np.ones((2, 1))})
    back = block_from_json(block_to_json(op))
    assert back.layout == "upper_1x2"
    np.testing.assert_array_equal(back.assemble(), op.assemble())


def test_block_errors():
    with pytest.raises(MatrixFormatError, match="layout"):
        block_from_json({"layout": "diag", "blocks": {}})
    bad = {"layout": "upper_1x2", "blocks": {"T1": matrix_to_json(np.eye(2)), "T2": matrix_to_json(np.eye(3))}}
    with pytest.raises(MatrixFormatError, match="T2"):
        block_from_json(bad)


def test_kernel_spec():
    spec = kernel_spec_from_json({"kernel": "min", "m": 50, "rule": "gauss_legendre"})
    assert (spec.m, spec.rule, spec.a, spec.b) == (50, "gauss_legendre", 0.0, 1.0)
    with pytest.raises(MatrixFormatError):
        kernel_spec_from_json({"kernel": "min", "extra": 1})
    with pytest.raises(MatrixFormatError):
        kernel_spec_from_json({"kernel": "bogus"})
