"""JSON file formats for matrices, subspaces, and orbit frames.

Matrix object: {"n": int, "re": [[...]], "im": [[...]]} with "im"
optional (zero imaginary part).  A subspace file is a JSON array of
matrix objects interpreted as a real spanning set.  An orbit frame file
is {"base": <matrix>, "derivation": <matrix>?}.

Floats are printed with 17 significant digits so values round-trip
exactly.
"""

import json

import numpy as np

from .errors import ValidationError


def matrix_to_obj(m):
    m = np.asarray(m, dtype=np.complex128)
    obj = {"n": int(m.shape[0]), "re": [[float(v) for v in row] for row in m.real]}
    if np.any(m.imag != 0.0):
        obj["im"] = [[float(v) for v in row] for row in m.imag]
    return obj


def matrix_from_obj(obj):
    try:
        n = int(obj["n"])
        re = np.asarray(obj["re"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed matrix object: {exc}") from exc
    if re.shape != (n, n):
        raise ValidationError(f'"re" must be {n} x {n}, got {re.shape}')
    im = np.zeros((n, n))
    if "im" in obj:
        im = np.asarray(obj["im"], dtype=float)
        if im.shape != (n, n):
            raise ValidationError(f'"im" must be {n} x {n}, got {im.shape}')
    m = re + 1j * im
    if not np.all(np.isfinite(re)) or not np.all(np.isfinite(im)):
        raise ValidationError("matrix has non-finite entries")
    return m


def load_matrix(path):
    with open(path, encoding="utf-8") as fh:
        return matrix_from_obj(json.load(fh))


def load_subspace(path):
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, list):
        raise ValidationError("subspace file must be a JSON array of matrix objects")
    return [matrix_from_obj(obj) for obj in data]


def load_frame(path):
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if "base" not in data:
        raise ValidationError('frame file needs a "base" matrix')
    base = matrix_from_obj(data["base"])
    derivation = matrix_from_obj(data["derivation"]) if "derivation" in data else None
    return base, derivation


def _write(value, out, indent):
    pad = "  " * indent
    if isinstance(value, dict):
        if not value:
            out.append("{}")
            return
        out.append("{\n")
        for i, (k, v) in enumerate(value.items()):
            out.append(f'{pad}  {json.dumps(str(k))}: ')
            _write(v, out, indent + 1)
            out.append(",\n" if i < len(value) - 1 else "\n")
        out.append(pad + "}")
    elif isinstance(value, (list, tuple)):
        if not value:
            out.append("[]")
            return
        out.append("[\n")
        for i, v in enumerate(value):
            out.append(pad + "  ")
            _write(v, out, indent + 1)
            out.append(",\n" if i < len(value) - 1 else "\n")
        out.append(pad + "]")
    elif isinstance(value, bool):
        out.append("true" if value else "false")
    elif isinstance(value, float):
        out.append(format(value, ".17g"))
    elif isinstance(value, (int, str)) or value is None:
        out.append(json.dumps(value))
    else:
        raise TypeError(f"cannot serialize {type(value)!r}")


def dumps(obj):
    """Serialize with 17-significant-digit floats (exact round-trip)."""
    out = []
    _write(obj, out, 0)
    return "".join(out)
