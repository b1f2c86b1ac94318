import json

import numpy as np
import pytest

from Backend.Errors import MatrixFileError
from Backend.MatrixCore import fourier_matrix
from Backend.MatrixIO import (
    dumps_matrix,
    load_matrix,
    matrix_from_document,
    matrix_to_document,
    save_matrix,
    write_text_atomic,
)


def test_document_layout_is_row_major():
    m = np.array([[1, 2j], [3, 4 - 1j]])
    document = matrix_to_document(m)
    assert document == {"n": 2, "entries": [[1.0, 0.0], [0.0, 2.0], [3.0, 0.0], [4.0, -1.0]]}
    np.testing.assert_array_equal(matrix_from_document(document), m)


def test_save_and_load(tmp_path):
    path = tmp_path / "f3.json"
    save_matrix(path, fourier_matrix(3))
    np.testing.assert_array_equal(load_matrix(path), fourier_matrix(3))
    assert json.loads(path.read_text()) == json.loads(dumps_matrix(fourier_matrix(3)))


@pytest.mark.parametrize("document", [
    {"entries": [[1, 0]]},
    {"n": 0, "entries": []},
    {"n": 1.5, "entries": [[1, 0]]},
    {"n": True, "entries": [[1, 0]]},
    {"n": 2, "entries": [[1, 0], [0, 0], [0, 0]]},
    {"n": 1, "entries": [[1, 0, 0]]},
    {"n": 1, "entries": [["a", 0]]},
    {"n": 1, "entries": [[float("nan"), 0]]},
    [1, 2, 3],
])
def test_malformed_documents(document):
    with pytest.raises(MatrixFileError):
        matrix_from_document(document)


def test_load_errors(tmp_path):
    with pytest.raises(MatrixFileError):
        load_matrix(tmp_path / "missing.json")
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    with pytest.raises(MatrixFileError):
        load_matrix(broken)


def test_atomic_write_replaces_and_leaves_no_temp_files(tmp_path):
    target = tmp_path / "out" / "report.txt"
    write_text_atomic(target, "first\n")
    write_text_atomic(target, "second\n")
    assert target.read_text() == "second\n"
    assert [p.name for p in target.parent.iterdir()] == ["report.txt"]
