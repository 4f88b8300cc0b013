"""FM-index over a small-alphabet integer sequence.

Symbols are integers in ``1..sigma``; symbol 0 is reserved for the
terminator appended at build time.  Occurrence counts over the BWT come from
one rank directory per symbol, which is cheap because sigma stays tiny
(activities plus one separator).
"""

from __future__ import annotations

import struct

import numpy as np

from .succinct import BitVector

DEFAULT_SAMPLE_RATE = 32


def suffix_array(text: np.ndarray) -> np.ndarray:
    """Suffix array by prefix doubling.

    ``text`` must end with a unique smallest symbol so that every suffix
    comparison is decided before running off the end.
    """
    n = len(text)
    rank = np.asarray(text, dtype=np.int64)
    if n <= 1:
        return np.zeros(n, dtype=np.int64)
    k = 1
    while True:
        second = np.full(n, -1, dtype=np.int64)
        second[: n - k] = rank[k:]
        sa = np.lexsort((second, rank))
        r, s = rank[sa], second[sa]
        bump = np.empty(n, dtype=np.int64)
        bump[0] = 0
        bump[1:] = (r[1:] != r[:-1]) | (s[1:] != s[:-1])
        new = np.empty(n, dtype=np.int64)
        new[sa] = np.cumsum(bump)
        rank = new
        if rank.max() == n - 1 or k >= n:
            return sa.astype(np.int64)
        k *= 2


class FMIndex:
    """Backward-search self-index supporting count, locate and LF-inversion."""

    def __init__(self, bwt: np.ndarray, samples: np.ndarray, sample_rate: int, sigma: int):
        self.bwt = np.ascontiguousarray(bwt, dtype=np.uint8)
        self.samples = np.ascontiguousarray(samples, dtype=np.int64)
        self.sample_rate = sample_rate
        self.sigma = sigma
        counts = np.bincount(self.bwt, minlength=sigma + 1)
        # C[c] = number of symbols strictly smaller than c (terminator included)
        self.C = np.concatenate(([0], np.cumsum(counts))).astype(np.int64)
        self._C = self.C.tolist()
        self._occ = [BitVector.from_bits(self.bwt == c) for c in range(sigma + 1)]
        self._rank = [bv._rank for bv in self._occ]
        self._bwt = self.bwt.tolist()
        self._samples = self.samples.tolist()

    def __len__(self) -> int:
        """Length of the indexed sequence, terminator excluded."""
        return len(self._bwt) - 1

    def occ(self, c: int, i: int) -> int:
        """Occurrences of ``c`` in ``bwt[0:i]``."""
        return self._occ[c].rank1(i)

    def lf(self, i: int) -> int:
        c = self._bwt[i]
        return self._C[c] + self._rank[c](i)

    def _check_pattern(self, pattern) -> list[int]:
        pat = [int(c) for c in pattern]
        if not pat:
            raise ValueError("empty pattern")
        for c in pat:
            if not 1 <= c <= self.sigma:
                raise ValueError(f"symbol {c} outside alphabet 1..{self.sigma}")
        return pat

    def backward_search(self, pattern) -> tuple[int, int]:
        """Half-open BWT row interval of suffixes prefixed by ``pattern``."""
        pat = self._check_pattern(pattern)
        sp, ep = 0, len(self._bwt)
        for c in reversed(pat):
            sp = self._C[c] + self._rank[c](sp)
            ep = self._C[c] + self._rank[c](ep)
            if sp >= ep:
                return sp, sp
        return sp, ep

    def count(self, pattern) -> int:
        sp, ep = self.backward_search(pattern)
        return ep - sp

    def locate_row(self, row: int) -> int:
        """0-based text position of the suffix at BWT row ``row``."""
        t = self.sample_rate
        bwt, C, rank = self._bwt, self._C, self._rank
        steps = 0
        while row % t:
            c = bwt[row]
            row = C[c] + rank[c](row)
            steps += 1
        # LF is a cyclic rotation: a walk may wrap through the terminator
        return (self._samples[row // t] + steps) % len(self._bwt)

    def locate(self, pattern) -> list[int]:
        """Sorted 1-based start positions of ``pattern``."""
        sp, ep = self.backward_search(pattern)
        return sorted(self.locate_row(row) + 1 for row in range(sp, ep))

    def reconstruct(self) -> np.ndarray:
        """Invert the BWT by LF-walking from the terminator row."""
        n = len(self)
        out = np.empty(n, dtype=np.uint8)
        row = 0
        for k in range(n - 1, -1, -1):
            out[k] = self._bwt[row]
            row = self.lf(row)
        return out

    def to_bytes(self) -> bytes:
        head = struct.pack("<QQH", len(self), self.sample_rate, self.sigma)
        return head + self.bwt.tobytes() + self.samples.astype("<u8").tobytes()

    @classmethod
    def from_buffer(cls, buf: memoryview, offset: int = 0) -> tuple["FMIndex", int]:
        n, rate, sigma = struct.unpack_from("<QQH", buf, offset)
        offset += 18
        bwt = np.frombuffer(buf, dtype=np.uint8, count=n + 1, offset=offset).copy()
        offset += n + 1
        nsamples = (n + rate) // rate
        samples = np.frombuffer(buf, dtype="<u8", count=nsamples, offset=offset).astype(np.int64)
        offset += 8 * nsamples
        return cls(bwt, samples, rate, sigma), offset

    @property
    def nbytes(self) -> int:
        return 18 + len(self._bwt) + 8 * len(self._samples)

    def __repr__(self) -> str:
        return f"FMIndex(n={len(self)}, sigma={self.sigma}, sample_rate={self.sample_rate})"


def build_fmindex(seq, sample_rate: int = DEFAULT_SAMPLE_RATE, sigma: int | None = None) -> FMIndex:
    """Index ``seq`` (symbols in ``1..sigma``; sigma defaults to ``max(seq)``)."""
    arr = np.asarray(seq, dtype=np.int64).ravel()
    if arr.size == 0:
        raise ValueError("cannot index an empty sequence")
    if sample_rate < 1:
        raise ValueError("sample_rate must be positive")
    if sigma is None:
        sigma = int(arr.max())
    if arr.min() < 1 or arr.max() > sigma or sigma > 255:
        raise ValueError(f"symbols must lie in 1..{sigma} (at most 255)")
    text = np.append(arr, 0)
    sa = suffix_array(text)
    bwt = text[sa - 1]  # sa == 0 wraps to the terminator
    return FMIndex(bwt, sa[::sample_rate], sample_rate, sigma)
