"""Dense linear algebra over GF(2) on bit-packed rows.

A :class:`BitMatrix` stores each row as ``ceil(cols / 64)`` little-endian
uint64 words: bit ``j`` of word ``w`` is column ``64 * w + j``.  Padding bits
past ``cols`` are always zero.

Rank and multiplication both work a byte (8 columns) at a time with a
256-entry table of row combinations, in the style of the method of the Four
Russians, so the inner loops are whole-array numpy XORs.
"""

from __future__ import annotations

import numpy as np

WORD = 64


def _words(cols: int) -> int:
    return (cols + WORD - 1) // WORD


def _pack(bits: np.ndarray) -> np.ndarray:
    rows, cols = bits.shape
    nw = _words(cols)
    if rows == 0 or nw == 0:
        return np.zeros((rows, nw), dtype=np.uint64)
    padded = np.zeros((rows, nw * WORD), dtype=np.uint8)
    padded[:, :cols] = bits
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view("<u8").astype(np.uint64, copy=False).reshape(rows, nw)


def _unpack(data: np.ndarray, cols: int) -> np.ndarray:
    rows = data.shape[0]
    if data.size == 0:
        return np.zeros((rows, cols), dtype=bool)
    raw = np.ascontiguousarray(data, dtype="<u8").view(np.uint8).reshape(rows, -1)
    return np.unpackbits(raw, axis=1, count=cols, bitorder="little").astype(bool)


# _BYTE_BITS[v, c] is bit c of byte v
_BYTE_BITS = np.unpackbits(np.arange(256, dtype=np.uint8)[:, None], axis=1, bitorder="little").astype(bool)


def _xor_table(rows: np.ndarray) -> np.ndarray:
    """All 2**len(rows) XOR combinations; entry ``m`` combines rows selected by bits of m."""
    table = np.zeros((1 << len(rows), rows.shape[1]), dtype=np.uint64)
    for j, row in enumerate(rows):
        half = 1 << j
        np.bitwise_xor(table[:half], row, out=table[half : 2 * half])
    return table


class BitMatrix:
    """A dense matrix over GF(2)."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: np.ndarray | None = None):
        self.rows = rows
        self.cols = cols
        if data is None:
            data = np.zeros((rows, _words(cols)), dtype=np.uint64)
        if data.shape != (rows, _words(cols)):
            raise ValueError(f"packed data has shape {data.shape}, expected {(rows, _words(cols))}")
        self.data = data

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_bool(cls, bits) -> BitMatrix:
        bits = np.asarray(bits)
        if bits.ndim != 2:
            raise ValueError("expected a 2-d array")
        return cls(bits.shape[0], bits.shape[1], _pack(bits.astype(bool)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> BitMatrix:
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls.from_bool(np.eye(n, dtype=bool))

    @classmethod
    def all_ones(cls, rows: int, cols: int) -> BitMatrix:
        return cls.from_bool(np.ones((rows, cols), dtype=bool))

    @classmethod
    def random(cls, rows: int, cols: int, rng=None, density: float = 0.5) -> BitMatrix:
        rng = np.random.default_rng(rng)
        return cls.from_bool(rng.random((rows, cols)) < density)

    # -- basic accessors -----------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def to_bool(self) -> np.ndarray:
        return _unpack(self.data, self.cols)

    def __getitem__(self, ij) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return int(self.data[i, j // WORD] >> np.uint64(j % WORD)) & 1

    def row_popcounts(self) -> np.ndarray:
        return self.to_bool().sum(axis=1)

    def copy(self) -> BitMatrix:
        return BitMatrix(self.rows, self.cols, self.data.copy())

    def take(self, rows, cols) -> BitMatrix:
        """Submatrix on the given row and column index lists, in the given order."""
        rows = np.asarray(rows, dtype=np.intp)
        cols = np.asarray(cols, dtype=np.intp)
        sub = _unpack(self.data[rows], self.cols)[:, cols]
        return BitMatrix.from_bool(sub.reshape(len(rows), len(cols)))

    def padding_is_clean(self) -> bool:
        extra = self.cols % WORD
        if extra == 0 or self.rows == 0:
            return True
        mask = ~np.uint64((1 << extra) - 1)
        return not np.any(self.data[:, -1] & mask)

    def __eq__(self, other):
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self.data, other.data)

    __hash__ = None

    def __repr__(self):
        return f"BitMatrix({self.rows}x{self.cols})"

    # -- algebra ---------------------------------------------------------------

    def __add__(self, other: BitMatrix) -> BitMatrix:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return BitMatrix(self.rows, self.cols, self.data ^ other.data)

    def __matmul__(self, other: BitMatrix) -> BitMatrix:
        return multiply(self, other)

    def transpose(self) -> BitMatrix:
        return BitMatrix.from_bool(self.to_bool().T)

    @property
    def T(self) -> BitMatrix:
        return self.transpose()

    def rank(self) -> int:
        return rank(self)


def rank(m: BitMatrix) -> int:
    """Rank over GF(2).  The input is left untouched."""
    work = m.data.copy()
    r = 0
    for w in range(work.shape[1]):
        for byte in range(8):
            if work.shape[0] == 0:
                return r
            if w * WORD + byte * 8 >= m.cols:
                break
            found, work = _eliminate_byte(work, byte)
            r += found
        # every remaining row is now zero on this word
        work = work[:, 1:]
    return r


def _eliminate_byte(work: np.ndarray, byte: int):
    """Pivot on up to 8 columns of the first word; return (#pivots, reduced rows)."""
    shift = np.uint64(8 * byte)
    orig = ((work[:, 0] >> shift) & np.uint64(0xFF)).astype(np.uint8)
    live = np.flatnonzero(orig)
    if live.size == 0:
        return 0, work
    cur = orig[live].copy()
    taken = np.zeros(live.size, dtype=bool)
    pivots: list[np.ndarray] = []
    pivot_cols: list[int] = []
    pivot_rows: list[int] = []
    for c in range(8):
        bit = np.uint8(1 << c)
        hits = np.flatnonzero(((cur & bit) != 0) & ~taken)
        if hits.size == 0:
            continue
        h = hits[0]
        taken[h] = True
        row = work[live[h]].copy()
        for pc, prow in zip(pivot_cols, pivots):
            if (int(row[0]) >> (8 * byte + pc)) & 1:
                row ^= prow
        for t, pc in enumerate(pivot_cols):
            if (int(pivots[t][0]) >> (8 * byte + c)) & 1:
                pivots[t] ^= row
        pivots.append(row)
        pivot_cols.append(c)
        pivot_rows.append(live[h])
        byte_row = np.uint8((int(row[0]) >> (8 * byte)) & 0xFF)
        cur = np.where(cur & bit, cur ^ byte_row, cur)
    table = _xor_table(np.array(pivots))
    sel = np.zeros(256, dtype=np.intp)
    for j, c in enumerate(pivot_cols):
        sel |= _BYTE_BITS[:, c].astype(np.intp) << j
    keep = np.ones(work.shape[0], dtype=bool)
    keep[pivot_rows] = False
    rest = work[keep]
    rest ^= table[sel[orig[keep]]]
    return len(pivots), rest


def multiply(a: BitMatrix, b: BitMatrix, method: str = "m4r") -> BitMatrix:
    """GF(2) product.  ``method`` is ``"m4r"`` (byte tables) or ``"schoolbook"``."""
    if a.cols != b.rows:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
    out = np.zeros((a.rows, _words(b.cols)), dtype=np.uint64)
    if a.rows == 0 or b.rows == 0:
        return BitMatrix(a.rows, b.cols, out)
    if method == "schoolbook":
        bits = a.to_bool()
        for k in range(a.cols):
            sel = bits[:, k]
            if sel.any():
                out[sel] ^= b.data[k]
    elif method == "m4r":
        abytes = np.ascontiguousarray(a.data, dtype="<u8").view(np.uint8).reshape(a.rows, -1)
        for start in range(0, a.cols, 8):
            chunk = b.data[start : start + 8]
            table = _xor_table(chunk)
            keys = abytes[:, start // 8]
            if len(chunk) < 8:
                keys = keys & np.uint8((1 << len(chunk)) - 1)
            out ^= table[keys]
    else:
        raise ValueError(f"unknown multiplication method {method!r}")
    return BitMatrix(a.rows, b.cols, out)


def power(m: BitMatrix, e: int) -> BitMatrix:
    if m.rows != m.cols:
        raise ValueError("power needs a square matrix")
    if e < 0:
        raise ValueError("negative exponent")
    result = BitMatrix.identity(m.rows)
    base = m
    while e:
        if e & 1:
            result = multiply(result, base)
        e >>= 1
        if e:
            base = multiply(base, base)
    return result


def transpose(m: BitMatrix) -> BitMatrix:
    return m.transpose()


def add(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    return a + b


def equal(a: BitMatrix, b: BitMatrix) -> bool:
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    return a == b


identity = BitMatrix.identity
all_ones = BitMatrix.all_ones
zero = BitMatrix.zeros

ORACLE_MAX_DIM = 512


def rank_oracle(m: BitMatrix, max_dim: int = ORACLE_MAX_DIM) -> int:
    """Independent rank check: plain elimination on one byte per entry."""
    if m.rows > max_dim or m.cols > max_dim:
        raise ValueError(f"oracle limited to {max_dim}x{max_dim}, got {m.shape}")
    a = [bytearray(int(x) for x in row) for row in m.to_bool()]
    nrows, ncols = m.rows, m.cols
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if a[i][c]), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        prow = np.frombuffer(a[r], dtype=np.uint8)
        for i in range(r + 1, nrows):
            if a[i][c]:
                a[i] = bytearray(np.bitwise_xor(np.frombuffer(a[i], dtype=np.uint8), prow).tobytes())
        r += 1
        if r == nrows:
            break
    return r
