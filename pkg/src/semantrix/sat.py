"""Summed area tables and their row-sampled difference encoding.

``M[x][y]`` holds the sum of ``A[1..x][1..y]``; row 0 and column 0 are
stored as zeros so that every rectangle sum is the same four-read formula.
The difference variant keeps every s-th row (rows 1, 1+s, 1+2s, ...) in
full and stores the rows in between as bit-packed offsets from the
preceding sampled row.
"""

from __future__ import annotations

import struct

import numpy as np


def _check_rect(r: int, c: int, x1: int, y1: int, x2: int, y2: int) -> None:
    if not (1 <= x1 <= x2 <= r and 1 <= y1 <= y2 <= c):
        raise IndexError(f"rectangle [{x1},{y1}]..[{x2},{y2}] invalid for a {r}x{c} matrix")


def prefix_sums(A) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    if A.size == 0 and A.ndim < 2:
        A = A.reshape(0, 0)
    if A.ndim != 2:
        raise ValueError("expected a 2-D matrix")
    if A.size and A.min() < 0:
        raise ValueError("summed area tables require non-negative entries")
    r, c = A.shape
    M = np.zeros((r + 1, c + 1), dtype=np.int64)
    M[1:, 1:] = A.cumsum(axis=0).cumsum(axis=1)
    return M


class SummedAreaTable:
    def __init__(self, M: np.ndarray):
        self.M = np.ascontiguousarray(M, dtype=np.int64)
        self.r = self.M.shape[0] - 1
        self.c = self.M.shape[1] - 1

    @classmethod
    def from_matrix(cls, A) -> "SummedAreaTable":
        return cls(prefix_sums(A))

    def cell(self, x: int, y: int) -> int:
        return self.M.item(x, y)

    def total(self) -> int:
        return self.M.item(self.r, self.c)

    def count_range(self, x1: int, y1: int, x2: int, y2: int) -> int:
        """Sum of ``A`` over the inclusive 1-based rectangle."""
        _check_rect(self.r, self.c, x1, y1, x2, y2)
        return self._sum(x1, y1, x2, y2)

    def _sum(self, x1, y1, x2, y2):
        item = self.M.item
        return item(x2, y2) - item(x2, y1 - 1) - item(x1 - 1, y2) + item(x1 - 1, y1 - 1)

    def to_bytes(self) -> bytes:
        return struct.pack("<QQ", self.r, self.c) + self.M.astype("<u8").tobytes()

    @classmethod
    def from_buffer(cls, buf, offset=0):
        r, c = struct.unpack_from("<QQ", buf, offset)
        offset += 16
        count = (r + 1) * (c + 1)
        M = np.frombuffer(buf, dtype="<u8", count=count, offset=offset).astype(np.int64)
        return cls(M.reshape(r + 1, c + 1)), offset + 8 * count

    @property
    def nbytes(self) -> int:
        return 16 + 8 * self.M.size

    def __repr__(self):
        return f"SummedAreaTable({self.r}x{self.c})"


def _pack(values: np.ndarray, width: int) -> np.ndarray:
    """Pack non-negative ints into little-endian 64-bit words, ``width`` bits each."""
    if width == 0 or values.size == 0:
        return np.zeros(0, dtype=np.uint64)
    v = values.astype(np.uint64)
    bits = ((v[:, None] >> np.arange(width, dtype=np.uint64)) & np.uint64(1)).astype(np.uint8)
    nwords = (values.size * width + 63) // 64
    packed = np.zeros(nwords * 8, dtype=np.uint8)
    raw = np.packbits(bits.ravel(), bitorder="little")
    packed[: raw.size] = raw
    return packed.view("<u8").astype(np.uint64)


def _unpack(words: np.ndarray, width: int, count: int) -> np.ndarray:
    if width == 0:
        return np.zeros(count, dtype=np.int64)
    bits = np.unpackbits(words.astype("<u8").view(np.uint8), bitorder="little")
    bits = bits[: count * width].reshape(count, width).astype(np.int64)
    return (bits << np.arange(width, dtype=np.int64)).sum(axis=1)


class DiffSAT:
    """Summed area table with 1-in-s rows stored absolutely.

    ``absolute`` holds row 0 followed by rows 1, 1+s, 1+2s, ...; each block of
    up to s-1 rows after a sampled row is a bit-packed run of differences
    against that row, at the smallest width holding the block's maximum.
    """

    def __init__(self, r: int, c: int, s: int, absolute: np.ndarray, widths, payloads):
        if s < 1:
            raise ValueError("sample period must be at least 1")
        self.r, self.c, self.s = r, c, s
        self.absolute = np.ascontiguousarray(absolute, dtype=np.int64)
        self.widths = list(widths)
        self.payloads = [np.ascontiguousarray(p, dtype=np.uint64) for p in payloads]
        # one flat word array and per-block offsets keep reads to two items
        self._offsets = np.concatenate(([0], np.cumsum([p.size for p in self.payloads]))).astype(int).tolist()
        words = np.concatenate(self.payloads + [np.zeros(1, np.uint64)])
        self._words = words
        self._stride = c + 1

    @classmethod
    def from_matrix(cls, A, s: int) -> "DiffSAT":
        if s < 1:
            raise ValueError("sample period must be at least 1")
        return cls.from_prefix_sums(prefix_sums(A), s)

    @classmethod
    def from_prefix_sums(cls, M: np.ndarray, s: int) -> "DiffSAT":
        r, c = M.shape[0] - 1, M.shape[1] - 1
        sampled = list(range(1, r + 1, s))
        absolute = M[[0] + sampled]
        widths, payloads = [], []
        for p in sampled:
            block = M[p + 1 : min(p + s, r + 1)] - M[p]
            top = int(block.max()) if block.size else 0
            w = top.bit_length()
            widths.append(w)
            payloads.append(_pack(block.ravel(), w))
        return cls(r, c, s, absolute, widths, payloads)

    def _block_rows(self, b: int) -> int:
        p = 1 + b * self.s
        return max(0, min(p + self.s, self.r + 1) - p - 1)

    def cell(self, x: int, y: int) -> int:
        """Reconstructed ``M[x][y]``."""
        if x == 0:
            return 0
        b, off = divmod(x - 1, self.s)
        base = self.absolute.item(b + 1, y)
        if off == 0:
            return base
        w = self.widths[b]
        if w == 0:
            return base
        pos = ((off - 1) * self._stride + y) * w
        wi = self._offsets[b] + (pos >> 6)
        bo = pos & 63
        v = self._words.item(wi) >> bo
        if bo + w > 64:
            v |= self._words.item(wi + 1) << (64 - bo)
        return base + (v & ((1 << w) - 1))

    def total(self) -> int:
        return self.cell(self.r, self.c)

    def count_range(self, x1: int, y1: int, x2: int, y2: int) -> int:
        _check_rect(self.r, self.c, x1, y1, x2, y2)
        return self._sum(x1, y1, x2, y2)

    def _sum(self, x1, y1, x2, y2):
        cell = self.cell
        return cell(x2, y2) - cell(x2, y1 - 1) - cell(x1 - 1, y2) + cell(x1 - 1, y1 - 1)

    def to_prefix_sums(self) -> np.ndarray:
        M = np.zeros((self.r + 1, self.c + 1), dtype=np.int64)
        for b in range(len(self.widths)):
            p = 1 + b * self.s
            M[p] = self.absolute[b + 1]
            rows = self._block_rows(b)
            if rows:
                d = _unpack(self.payloads[b], self.widths[b], rows * self._stride)
                M[p + 1 : p + 1 + rows] = self.absolute[b + 1] + d.reshape(rows, self._stride)
        return M

    def to_bytes(self) -> bytes:
        parts = [struct.pack("<QQQ", self.r, self.c, self.s), self.absolute.astype("<u8").tobytes()]
        for w, payload in zip(self.widths, self.payloads):
            parts.append(struct.pack("<B", w))
            parts.append(payload.astype("<u8").tobytes())
        return b"".join(parts)

    @classmethod
    def from_buffer(cls, buf, offset=0):
        r, c, s = struct.unpack_from("<QQQ", buf, offset)
        offset += 24
        nblocks = len(range(1, r + 1, s))
        count = (nblocks + 1) * (c + 1)
        absolute = np.frombuffer(buf, dtype="<u8", count=count, offset=offset).astype(np.int64)
        absolute = absolute.reshape(nblocks + 1, c + 1)
        offset += 8 * count
        widths, payloads = [], []
        for b in range(nblocks):
            (w,) = struct.unpack_from("<B", buf, offset)
            offset += 1
            p = 1 + b * s
            rows = max(0, min(p + s, r + 1) - p - 1)
            nwords = (rows * (c + 1) * w + 63) // 64
            payloads.append(np.frombuffer(buf, dtype="<u8", count=nwords, offset=offset).astype(np.uint64))
            offset += 8 * nwords
            widths.append(w)
        return cls(r, c, s, absolute, widths, payloads), offset

    @property
    def nbytes(self) -> int:
        return (24 + 8 * self.absolute.size + len(self.widths)
                + 8 * sum(p.size for p in self.payloads))

    def __repr__(self):
        return f"DiffSAT({self.r}x{self.c}, s={self.s}, widths={self.widths})"


def build_sat(A) -> SummedAreaTable:
    return SummedAreaTable.from_matrix(A)


def build_diff_sat(A, s: int) -> DiffSAT:
    return DiffSAT.from_matrix(A, s)
