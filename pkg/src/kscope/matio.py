"""Matrix exchange formats: Matrix Market and a dense JSON layout.

The JSON layout is ``{"rows": r, "cols": c, "re": [...], "im": [...]}``
with entries in row-major order.
"""

import json

import numpy as np
import scipy.io
import scipy.sparse

from .linalg import as_matrix


def write_matrix_market(path, a, comment=""):
    a = as_matrix(a)
    scipy.io.mmwrite(str(path), a, comment=comment, field="complex")


def read_matrix_market(path):
    m = scipy.io.mmread(str(path))
    if scipy.sparse.issparse(m):
        m = m.toarray()
    return as_matrix(m)


def write_json_matrix(path, a):
    a = as_matrix(a)
    doc = {
        "rows": a.shape[0],
        "cols": a.shape[1],
        "re": a.real.ravel().tolist(),
        "im": a.imag.ravel().tolist(),
    }
    with open(path, "w") as fh:
        json.dump(doc, fh)


def read_json_matrix(path):
    with open(path) as fh:
        doc = json.load(fh)
    rows, cols = int(doc["rows"]), int(doc["cols"])
    re = np.asarray(doc["re"], dtype=float)
    im = np.asarray(doc["im"], dtype=float)
    if re.size != rows * cols or im.size != rows * cols:
        raise ValueError("re/im length does not match rows*cols")
    return as_matrix((re + 1j * im).reshape(rows, cols))


def load_matrix(path):
    """Dispatch on file suffix: .json -> JSON layout, anything else -> Matrix Market."""
    p = str(path)
    if p.endswith(".json"):
        return read_json_matrix(p)
    return read_matrix_market(p)
