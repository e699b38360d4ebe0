"""The ``gf2txt`` text format for BitMatrix.

::

    gf2 <rows> <cols>
    <row 0 as cols characters from {0,1}>
    ...

Lines end with a single line feed and carry no trailing whitespace.
"""

from __future__ import annotations

import io

import numpy as np

from .gf2 import BitMatrix


class FormatError(ValueError):
    pass


def dumps(m: BitMatrix) -> str:
    out = io.StringIO()
    export_gf2txt(m, out)
    return out.getvalue()


def export_gf2txt(m: BitMatrix, sink) -> None:
    sink.write(f"gf2 {m.rows} {m.cols}\n")
    digits = np.where(m.to_bool(), ord("1"), ord("0")).astype(np.uint8)
    for row in digits:
        sink.write(row.tobytes().decode("ascii"))
        sink.write("\n")


def loads(text: str) -> BitMatrix:
    return import_gf2txt(io.StringIO(text))


def import_gf2txt(source) -> BitMatrix:
    header = source.readline()
    parts = header.rstrip("\n").split(" ")
    if len(parts) != 3 or parts[0] != "gf2" or not all(p.isdigit() for p in parts[1:]):
        raise FormatError(f"malformed header {header!r}")
    rows, cols = int(parts[1]), int(parts[2])
    bits = np.zeros((rows, cols), dtype=bool)
    for i in range(rows):
        line = source.readline()
        if not line.endswith("\n"):
            raise FormatError(f"row {i}: missing or unterminated line")
        line = line[:-1]
        if len(line) != cols:
            raise FormatError(f"row {i}: wrong line length {len(line)}, expected {cols}")
        if line.strip("01"):
            raise FormatError(f"row {i}: illegal character")
        bits[i] = np.frombuffer(line.encode("ascii"), dtype=np.uint8) == ord("1")
    if source.read():
        raise FormatError("trailing data after the last row")
    return BitMatrix.from_bool(bits)
