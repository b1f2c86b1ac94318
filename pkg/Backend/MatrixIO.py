# ===========================================================================================================
#                                         MatrixIO.py
# ===========================================================================================================
# Reading and writing the shared matrix file format:
#
#   {"n": 2, "entries": [[re, im], [re, im], [re, im], [re, im]]}
#
# Entries are row-major. Unitaries, density operators and MASAs (stored as their diagonalizer)
# all use this one document shape.

import json
import os
import tempfile

import numpy as np

from Backend.Errors import MatrixFileError, NotFiniteError, NotSquareError
from Backend.MatrixCore import as_complex_matrix

# -------------------------------------------------------------------------------------------------------
#                                         Encoding
# -------------------------------------------------------------------------------------------------------

def matrix_to_document(m):
    m = np.asarray(m, dtype=np.complex128)
    return {
        "n": int(m.shape[0]),
        "entries": [[float(z.real), float(z.imag)] for z in m.reshape(-1)],
    }


def matrix_from_document(document):
    """
    Parses a decoded matrix document.

    Raises:
        MatrixFileError: On a missing field, a wrong entry count or a malformed pair.
    """
    if not isinstance(document, dict) or "n" not in document or "entries" not in document:
        raise MatrixFileError("matrix document needs the fields 'n' and 'entries'")

    n, entries = document["n"], document["entries"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise MatrixFileError(f"'n' must be a positive integer, got {n!r}")
    if not isinstance(entries, list) or len(entries) != n * n:
        count = len(entries) if isinstance(entries, list) else "no"
        raise MatrixFileError(f"expected {n * n} entries for n = {n}, found {count}")

    try:
        values = [complex(float(re), float(im)) for re, im in entries]
    except (TypeError, ValueError) as e:
        raise MatrixFileError(f"entries must be [re, im] pairs of numbers: {e}") from e

    try:
        return as_complex_matrix(np.array(values).reshape(n, n))
    except (NotSquareError, NotFiniteError) as e:
        raise MatrixFileError(str(e)) from e

# -------------------------------------------------------------------------------------------------------
#                                         File I/O
# -------------------------------------------------------------------------------------------------------

def load_matrix(path):
    """Reads a matrix file. Any I/O or decoding problem surfaces as MatrixFileError."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            document = json.load(f)
    except FileNotFoundError as e:
        raise MatrixFileError(f"matrix file not found: {path}") from e
    except (OSError, json.JSONDecodeError) as e:
        raise MatrixFileError(f"cannot read {path}: {e}") from e
    return matrix_from_document(document)


def write_text_atomic(path, text):
    """
    Writes text through a temporary file in the same folder, then swaps it in.
    A crash mid-write leaves the previous file untouched.
    """
    folder = os.path.dirname(os.path.abspath(path))
    os.makedirs(folder, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(dir=folder, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            f.write(text)
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.remove(tmp_path)
        raise


def save_matrix(path, m):
    write_text_atomic(path, json.dumps(matrix_to_document(m)) + "\n")


def dumps_matrix(m):
    return json.dumps(matrix_to_document(m))
