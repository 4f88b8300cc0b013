"""Plain bitvector with rank/select directories.

Positions are 1-based: ``rank1(i)`` counts the set bits in ``B[1..i]`` and
``select1(k)`` returns the position of the k-th set bit.  The directory is
two-level: superblocks of 512 bits hold absolute counts, 64-bit blocks hold
counts relative to their superblock.
"""

from __future__ import annotations

import struct

import numpy as np

WORD = 64
SUPERBLOCK = 512
_WORDS_PER_SB = SUPERBLOCK // WORD

# popcount lookup for numpy word arrays (byte-at-a-time)
_POP8 = np.array([bin(i).count("1") for i in range(256)], dtype=np.uint8)


def _popcount_words(words: np.ndarray) -> np.ndarray:
    return _POP8[words.view(np.uint8)].reshape(-1, 8).sum(axis=1, dtype=np.int64)


class BitVector:
    """Immutable bit sequence supporting access, rank1/rank0 and select1/select0."""

    __slots__ = ("n", "words", "_words", "_sb", "_blk", "_ones", "_base")

    def __init__(self, words: np.ndarray, n: int):
        nwords = (n + WORD - 1) // WORD
        words = np.ascontiguousarray(words, dtype="<u8")
        if words.shape != (nwords,):
            raise ValueError(f"expected {nwords} words for {n} bits, got {words.shape}")
        if n % WORD and nwords:
            # trailing bits past n must be clear for popcounts to be right
            words = words.copy()
            words[-1] &= np.uint64((1 << (n % WORD)) - 1)
        self.n = n
        self.words = words
        self._words = words.tolist()
        pops = _popcount_words(words)
        cum = np.concatenate(([0], np.cumsum(pops)))
        # ones before word w: absolute (per superblock) + relative (per block)
        self._sb = cum[::_WORDS_PER_SB].astype(np.int64)
        rel = cum[:-1] - np.repeat(self._sb, _WORDS_PER_SB)[:nwords]
        self._blk = rel.astype(np.uint16)
        self._ones = int(cum[-1])
        # absolute ones before each word, as plain ints for the rank hot path
        self._base = (np.repeat(self._sb, _WORDS_PER_SB)[:nwords] + self._blk).tolist()

    @classmethod
    def from_bits(cls, bits) -> "BitVector":
        arr = np.asarray(bits, dtype=np.uint8).ravel()
        if arr.size and arr.max() > 1:
            raise ValueError("bits must be 0 or 1")
        n = int(arr.size)
        nwords = (n + WORD - 1) // WORD
        padded = np.zeros(nwords * WORD, dtype=np.uint8)
        padded[:n] = arr
        packed = np.packbits(padded, bitorder="little")
        return cls(packed.view("<u8") if nwords else np.zeros(0, "<u8"), n)

    def __len__(self) -> int:
        return self.n

    @property
    def ones(self) -> int:
        return self._ones

    def _check_pos(self, i: int, lo: int) -> None:
        if not lo <= i <= self.n:
            raise IndexError(f"position {i} outside [{lo}, {self.n}]")

    def access(self, i: int) -> int:
        self._check_pos(i, 1)
        i -= 1
        return (self._words[i >> 6] >> (i & 63)) & 1

    __getitem__ = access

    def rank1(self, i: int) -> int:
        """Number of set bits among positions 1..i (``rank1(0) == 0``)."""
        self._check_pos(i, 0)
        return self._rank(i)

    def _rank(self, i: int) -> int:
        w = i >> 6
        if w == len(self._words):
            return self._ones
        off = i & 63
        if off:
            return self._base[w] + (self._words[w] & ((1 << off) - 1)).bit_count()
        return self._base[w]

    def rank0(self, i: int) -> int:
        return i - self.rank1(i)

    def select1(self, k: int) -> int:
        """Position of the k-th set bit."""
        if not 1 <= k <= self._ones:
            raise IndexError(f"select1({k}) with {self._ones} set bits")
        # last superblock whose preceding count is < k, then its blocks
        sb = int(np.searchsorted(self._sb, k, side="left")) - 1
        base = int(self._sb[sb])
        w = sb * _WORDS_PER_SB
        end = min(w + _WORDS_PER_SB, len(self._words))
        while w + 1 < end and base + int(self._blk[w + 1]) < k:
            w += 1
        word = self._words[w]
        need = k - base - int(self._blk[w])
        for _ in range(need - 1):
            word &= word - 1
        return w * WORD + ((word & -word).bit_length())

    def select0(self, k: int) -> int:
        zeros = self.n - self._ones
        if not 1 <= k <= zeros:
            raise IndexError(f"select0({k}) with {zeros} clear bits")
        lo, hi = 1, self.n
        while lo < hi:
            mid = (lo + hi) // 2
            if self.rank0(mid) < k:
                lo = mid + 1
            else:
                hi = mid
        return lo

    def to_numpy(self) -> np.ndarray:
        bits = np.unpackbits(self.words.view(np.uint8), bitorder="little")
        return bits[: self.n]

    def to_bytes(self) -> bytes:
        return struct.pack("<Q", self.n) + self.words.astype("<u8").tobytes()

    @classmethod
    def from_buffer(cls, buf: memoryview, offset: int = 0) -> tuple["BitVector", int]:
        (n,) = struct.unpack_from("<Q", buf, offset)
        offset += 8
        nwords = (n + WORD - 1) // WORD
        words = np.frombuffer(buf, dtype="<u8", count=nwords, offset=offset).copy()
        return cls(words, n), offset + 8 * nwords

    @property
    def nbytes(self) -> int:
        return 8 + 8 * len(self._words)

    def __repr__(self) -> str:
        return f"BitVector(n={self.n}, ones={self._ones})"


def build_bitvector(bits) -> BitVector:
    return BitVector.from_bits(bits)
