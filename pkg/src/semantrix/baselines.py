"""Competitor structures: the plain matrix and baseline+.

The naive matrix answers everything by scanning its cells, which also makes
it the correctness oracle for the compressed structures.
"""

from __future__ import annotations

import numpy as np

from .core import ActivityMatrix, Warehouse, WarehouseMeta, run_starts, separated_runs
from .fmindex import DEFAULT_SAMPLE_RATE, FMIndex, build_fmindex


def _match_runs(runs: list[int], pat: list[int]) -> list[int]:
    m = len(pat)
    return [k for k in range(len(runs) - m + 1) if runs[k:k + m] == pat]


class NaiveMatrix(Warehouse):
    """Row-major activity matrix, one byte per cell."""

    tag = "naive"

    def __init__(self, meta: WarehouseMeta, cells: bytes):
        if len(cells) != meta.num_objects * meta.num_intervals:
            raise ValueError("cell buffer does not match matrix dimensions")
        self.meta = meta
        self.cells = bytes(cells)

    @classmethod
    def from_matrix(cls, m: ActivityMatrix) -> "NaiveMatrix":
        return cls(m.meta, m.os.tobytes())

    def row(self, obj: int) -> bytes:
        I = self.meta.num_intervals
        return self.cells[(obj - 1) * I: obj * I]

    def activity_at(self, obj: int, interval: int) -> int:
        self._check_cell(obj, interval)
        return self.cells[(obj - 1) * self.meta.num_intervals + interval - 1]

    def row_runs(self, obj: int) -> list[tuple[int, int]]:
        """``(activity, first interval)`` of each maximal run in a row."""
        runs = []
        prev = None
        for i, a in enumerate(self.row(obj), start=1):
            if a != prev:
                runs.append((a, i))
                prev = a
        return runs

    def pattern_occurrences(self, pattern) -> list[tuple[int, int]]:
        pat = self._check_pattern(pattern)
        out = []
        for j in range(1, self.meta.num_objects + 1):
            runs = self.row_runs(j)
            for k in _match_runs([a for a, _ in runs], pat):
                out.append((j, runs[k][1]))
        return out

    def pattern_count(self, pattern) -> int:
        return len(self.pattern_occurrences(pattern))

    def aggregate_count(self, a: int, objs, intervals) -> int:
        self._check_rect(a, objs, intervals)
        I = self.meta.num_intervals
        cells = self.cells
        total = 0
        for j in range(objs[0] - 1, objs[1]):
            base = j * I
            for p in range(base + intervals[0] - 1, base + intervals[1]):
                if cells[p] == a:
                    total += 1
        return total

    def to_matrix(self) -> np.ndarray:
        return np.frombuffer(self.cells, dtype=np.uint8).reshape(self.meta.num_objects, self.meta.num_intervals)

    def space(self) -> dict[str, int]:
        return {"cells": len(self.cells)}

    def __repr__(self):
        return f"NaiveMatrix({self.meta.num_objects}x{self.meta.num_intervals})"


def _naive(m) -> NaiveMatrix:
    return m if isinstance(m, NaiveMatrix) else NaiveMatrix.from_matrix(m)


def naive_activity_at(m, obj: int, interval: int) -> int:
    return _naive(m).activity_at(obj, interval)


def naive_pattern_count(m, pattern) -> int:
    return _naive(m).pattern_count(pattern)


def naive_aggregate(m, a: int, objs, intervals) -> int:
    return _naive(m).aggregate_count(a, objs, intervals)


class BaselinePlus(Warehouse):
    """Activity sequence, FM-index over its runs, and per-activity prefix counts.

    ``C[a-1][p]`` counts the positions ``<= p`` of the row-major sequence that
    hold activity ``a``, so any single object's interval window costs two
    reads and a rectangle costs two reads per object.
    """

    tag = "baseline+"

    def __init__(self, meta: WarehouseMeta, os_seq: bytes, fm: FMIndex, C: np.ndarray):
        self.meta = meta
        self.os = bytes(os_seq)
        self.fm = fm
        self.C = np.ascontiguousarray(C, dtype=np.int64)
        n = meta.num_objects * meta.num_intervals
        if len(self.os) != n or self.C.shape != (meta.sigma, n + 1):
            raise ValueError("baseline+ components do not match matrix dimensions")

    def activity_at(self, obj: int, interval: int) -> int:
        self._check_cell(obj, interval)
        return self.os[(obj - 1) * self.meta.num_intervals + interval - 1]

    def pattern_count(self, pattern) -> int:
        return self.fm.count(self._check_pattern(pattern))

    def aggregate_count(self, a: int, objs, intervals) -> int:
        self._check_rect(a, objs, intervals)
        I = self.meta.num_intervals
        item = self.C.item
        row = a - 1
        total = 0
        for j in range(objs[0] - 1, objs[1]):
            base = j * I
            total += item(row, base + intervals[1]) - item(row, base + intervals[0] - 1)
        return total

    def space(self) -> dict[str, int]:
        sizes = {"OS": 8 + len(self.os), "FM": self.fm.nbytes}
        for a in range(1, self.meta.sigma + 1):
            sizes[f"C{a}"] = 8 * self.C.shape[1]
        return sizes

    def __repr__(self):
        return f"BaselinePlus({self.meta.num_objects}x{self.meta.num_intervals}, sigma={self.meta.sigma})"


def cumulative_counts(os_seq: np.ndarray, sigma: int) -> np.ndarray:
    """``sigma x (n+1)`` prefix counts of each activity over ``os_seq``."""
    os_seq = np.asarray(os_seq)
    C = np.zeros((sigma, os_seq.size + 1), dtype=np.int64)
    for a in range(1, sigma + 1):
        np.cumsum(os_seq == a, out=C[a - 1, 1:])
    return C


def build_baseline_plus(m: ActivityMatrix, fm_sample_rate: int = DEFAULT_SAMPLE_RATE) -> BaselinePlus:
    os_seq = m.os
    starts = run_starts(m.cells)
    H = os_seq[starts - 1]
    first_run = np.searchsorted(starts, np.arange(m.num_objects) * m.num_intervals + 1)
    fm = build_fmindex(separated_runs(H, first_run, m.sigma + 1), fm_sample_rate, sigma=m.sigma + 1)
    return BaselinePlus(m.meta, os_seq.tobytes(), fm, cumulative_counts(os_seq, m.sigma))
