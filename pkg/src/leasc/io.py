"""File formats: binary matrices, CSV fallback, label lists, encoder manifests.

Binary layout ("LSCM"): 4-byte magic, u32 version (=1), u32 rows, u32 cols,
then rows*cols little-endian float64 in column-major order. All writes are
atomic (temp file in the same directory, then rename).
"""

import os
import struct
import tempfile

import numpy as np

from .encoder import EncoderParams
from .exceptions import FormatError

MAGIC = b"LSCM"
VERSION = 1
_HEADER = struct.Struct("<4sIII")


def _atomic_write(path, data):
    path = os.fspath(path)
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-lscm-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_matrix(path, A):
    """Write A to path; CSV when the extension is .csv, binary otherwise."""
    A = np.ascontiguousarray(np.asarray(A, dtype=float).T).T  # ensure 2-D layout
    if A.ndim != 2:
        raise FormatError("only 2-D matrices are supported")
    if os.fspath(path).lower().endswith(".csv"):
        lines = "\n".join(",".join(repr(float(v)) for v in row) for row in A)
        _atomic_write(path, (lines + "\n").encode())
        return
    header = _HEADER.pack(MAGIC, VERSION, A.shape[0], A.shape[1])
    payload = np.asfortranarray(A, dtype="<f8").tobytes(order="F")
    _atomic_write(path, header + payload)


def read_matrix(path):
    """Read a matrix written by write_matrix; auto-detects CSV by extension."""
    if os.fspath(path).lower().endswith(".csv"):
        return _read_csv(path)
    with open(path, "rb") as fh:
        raw = fh.read()
    if len(raw) < _HEADER.size:
        raise FormatError("file too short for a matrix header", offset=len(raw))
    magic, version, rows, cols = _HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise FormatError("bad magic %r, expected %r" % (magic, MAGIC), offset=0)
    if version != VERSION:
        raise FormatError("unsupported version %d" % version, offset=4)
    expected = _HEADER.size + 8 * rows * cols
    if len(raw) != expected:
        raise FormatError("payload has %d bytes, expected %d"
                          % (len(raw) - _HEADER.size, 8 * rows * cols),
                          offset=len(raw))
    payload = np.frombuffer(raw, dtype="<f8", offset=_HEADER.size)
    return payload.reshape((rows, cols), order="F").copy()


def _read_csv(path):
    rows = []
    with open(path) as fh:
        for lineno, line in enumerate(fh):
            line = line.strip()
            if not line:
                continue
            fields = line.split(",")
            try:
                rows.append([float(f) for f in fields])
            except ValueError:
                if lineno == 0:
                    continue  # header line
                raise FormatError("non-numeric CSV line %d" % (lineno + 1))
    if not rows:
        raise FormatError("empty CSV file")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise FormatError("ragged CSV rows")
    return np.array(rows, dtype=float)


def write_labels(path, labels):
    _atomic_write(path, ("\n".join(str(int(v)) for v in labels) + "\n").encode())


def read_labels(path):
    with open(path) as fh:
        try:
            return np.array([int(line) for line in fh if line.strip()], dtype=int)
        except ValueError as err:
            raise FormatError("labels file must contain one integer per line: %s" % err)


def save_encoder(directory, params, prefix="encoder"):
    """One matrix file per layer plus a text manifest with layer order."""
    os.makedirs(directory, exist_ok=True)
    lines = [
        "layers = %d" % len(params.weights),
        "hidden_activation = %s" % params.hidden_activation,
        "output_activation = %s" % params.output_activation,
        "use_bias = %s" % ("true" if params.biases[0] is not None else "false"),
    ]
    for i, W in enumerate(params.weights):
        name = "%s_layer%d.lscm" % (prefix, i)
        write_matrix(os.path.join(directory, name), W)
        lines.append("layer_%d = %s" % (i, name))
        if params.biases[i] is not None:
            bname = "%s_bias%d.lscm" % (prefix, i)
            write_matrix(os.path.join(directory, bname), params.biases[i].reshape(-1, 1))
            lines.append("bias_%d = %s" % (i, bname))
    manifest = os.path.join(directory, "%s_manifest.txt" % prefix)
    _atomic_write(manifest, ("\n".join(lines) + "\n").encode())
    return manifest


def load_encoder(manifest_path):
    directory = os.path.dirname(os.fspath(manifest_path)) or "."
    entries = {}
    with open(manifest_path) as fh:
        for line in fh:
            line = line.strip()
            if not line or "=" not in line:
                continue
            key, value = (part.strip() for part in line.split("=", 1))
            entries[key] = value
    try:
        count = int(entries["layers"])
        weights = [read_matrix(os.path.join(directory, entries["layer_%d" % i]))
                   for i in range(count)]
        use_bias = entries.get("use_bias", "false") == "true"
        biases = []
        for i in range(count):
            if use_bias:
                biases.append(read_matrix(
                    os.path.join(directory, entries["bias_%d" % i])).ravel())
            else:
                biases.append(None)
        return EncoderParams(weights=weights, biases=biases,
                             hidden_activation=entries["hidden_activation"],
                             output_activation=entries["output_activation"])
    except KeyError as err:
        raise FormatError("encoder manifest missing key %s" % err)
