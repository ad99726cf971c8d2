"""Reader/writer for the restricted NPY v1.0 tensor container.

Accepted payloads are little-endian C-order float32/float64 with 2 to 4
axes; anything else (Fortran order, other dtypes, pickled objects, other
format versions) is rejected up front. float32 values are widened to
float64 on read so every downstream threshold shares one numeric type.
"""

from __future__ import annotations

import ast
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import MalformedHeader, TruncatedPayload, UnsupportedDtype

MAGIC = b"\x93NUMPY"
VERSION = b"\x01\x00"

_DESCR_TO_KIND = {"<f4": "float32", "<f8": "float64"}
_KIND_TO_DESCR = {"float32": "<f4", "float64": "<f8"}
_KIND_TO_NP = {"float32": np.float32, "float64": np.float64}
_ITEMSIZE = {"float32": 4, "float64": 8}


@dataclass(frozen=True)
class TensorHeader:
    shape: tuple[int, ...]
    element_kind: str  # "float32" | "float64"

    @property
    def count(self) -> int:
        n = 1
        for s in self.shape:
            n *= s
        return n

    @property
    def nbytes(self) -> int:
        return self.count * _ITEMSIZE[self.element_kind]


@dataclass(frozen=True)
class Tensor:
    header: TensorHeader
    values: np.ndarray  # float64, C-order, values.shape == header.shape

    @property
    def shape(self) -> tuple[int, ...]:
        return self.header.shape


def _parse_header_dict(text: str) -> dict:
    try:
        parsed = ast.literal_eval(text)
    except (ValueError, SyntaxError) as exc:
        raise MalformedHeader(f"unparseable header dict: {exc}") from exc
    if not isinstance(parsed, dict):
        raise MalformedHeader("header is not a dict literal")
    return parsed


def read_header(path) -> tuple[TensorHeader, int]:
    """Parse the container header; returns (header, payload byte offset)."""
    path = Path(path)
    with open(path, "rb") as fh:
        preamble = fh.read(10)
        if len(preamble) < 10 or preamble[:6] != MAGIC:
            raise MalformedHeader(f"{path}: bad magic")
        if preamble[6:8] != VERSION:
            raise MalformedHeader(
                f"{path}: unsupported format version {preamble[6]}.{preamble[7]}"
            )
        (hlen,) = struct.unpack("<H", preamble[8:10])
        raw = fh.read(hlen)
    if len(raw) != hlen:
        raise MalformedHeader(f"{path}: header shorter than declared length")
    if not raw.endswith(b"\n"):
        raise MalformedHeader(f"{path}: header not newline-terminated")
    try:
        text = raw.decode("ascii")
    except UnicodeDecodeError as exc:
        raise MalformedHeader(f"{path}: header is not ASCII") from exc

    meta = _parse_header_dict(text)
    if set(meta) != {"descr", "fortran_order", "shape"}:
        raise MalformedHeader(f"{path}: unexpected header keys {sorted(meta)}")

    descr = meta["descr"]
    if descr not in _DESCR_TO_KIND:
        raise UnsupportedDtype(f"{path}: dtype {descr!r} not little-endian float32/float64")
    if meta["fortran_order"] is not False:
        raise UnsupportedDtype(f"{path}: Fortran-order payloads are not supported")

    shape = meta["shape"]
    if not isinstance(shape, tuple) or not all(
        isinstance(s, int) and s > 0 for s in shape
    ):
        raise MalformedHeader(f"{path}: shape must be a tuple of positive ints, got {shape!r}")
    if len(shape) not in (2, 3, 4):
        raise MalformedHeader(f"{path}: rank {len(shape)} outside supported range 2..4")

    return TensorHeader(tuple(shape), _DESCR_TO_KIND[descr]), 10 + hlen


def read_tensor(path) -> Tensor:
    """Read one tensor file, widening float32 payloads to float64."""
    path = Path(path)
    header, offset = read_header(path)
    with open(path, "rb") as fh:
        fh.seek(offset)
        payload = fh.read()
    if len(payload) != header.nbytes:
        raise TruncatedPayload(
            f"{path}: expected {header.nbytes} payload bytes, found {len(payload)}"
        )
    flat = np.frombuffer(payload, dtype=np.dtype(_KIND_TO_DESCR[header.element_kind]))
    values = flat.reshape(header.shape).astype(np.float64)
    return Tensor(header, values)


def write_tensor(path, values: np.ndarray, element_kind: str = "float64") -> None:
    """Write a 2..4 axis array in the v1.0 container (C-order, little-endian)."""
    if element_kind not in _KIND_TO_DESCR:
        raise UnsupportedDtype(f"cannot write element kind {element_kind!r}")
    arr = np.ascontiguousarray(values, dtype=_KIND_TO_NP[element_kind])
    if arr.ndim not in (2, 3, 4):
        raise MalformedHeader(f"rank {arr.ndim} outside supported range 2..4")
    if any(s <= 0 for s in arr.shape):
        raise MalformedHeader(f"shape {arr.shape} has an empty axis")

    meta = "{'descr': %r, 'fortran_order': False, 'shape': %r, }" % (
        _KIND_TO_DESCR[element_kind],
        tuple(arr.shape),
    )
    # total preamble length (magic + version + length word + dict + newline)
    # padded with spaces to a multiple of 64
    base = len(MAGIC) + 2 + 2 + len(meta) + 1
    pad = (64 - base % 64) % 64
    header = meta.encode("ascii") + b" " * pad + b"\n"

    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "wb") as fh:
        fh.write(MAGIC)
        fh.write(VERSION)
        fh.write(struct.pack("<H", len(header)))
        fh.write(header)
        fh.write(arr.tobytes(order="C"))
    tmp.replace(path)
