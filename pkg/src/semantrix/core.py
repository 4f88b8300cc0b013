"""The Semantrix warehouse: run bitvector, run sequence, FM-index, and
per-activity summed area tables over an objects x intervals activity matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .fmindex import DEFAULT_SAMPLE_RATE, FMIndex, build_fmindex
from .sat import DiffSAT, SummedAreaTable, prefix_sums
from .succinct import BitVector


@dataclass(frozen=True)
class WarehouseMeta:
    num_objects: int
    num_intervals: int
    sigma: int
    epoch: int = 0
    interval_len: int = 5
    labels: tuple[str, ...] = ()


@dataclass(frozen=True)
class ActivityMatrix:
    """``num_objects x num_intervals`` activity ids in ``1..sigma``.

    ``epoch`` is the start of interval 1 in Unix seconds and
    ``interval_len`` the width of one interval in minutes.
    """

    cells: np.ndarray
    sigma: int
    epoch: int = 0
    interval_len: int = 5
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        cells = np.ascontiguousarray(self.cells, dtype=np.uint8)
        raw = np.asarray(self.cells)
        if raw.ndim != 2 or 0 in raw.shape:
            raise ValueError(f"activity matrix must be non-empty 2-D, got shape {raw.shape}")
        if not 1 <= self.sigma <= 254:
            raise ValueError(f"sigma must lie in 1..254, got {self.sigma}")
        if raw.min() < 1 or raw.max() > self.sigma:
            raise ValueError(f"cells must hold activity ids in 1..{self.sigma}")
        if self.interval_len <= 0:
            raise ValueError("interval_len must be positive")
        if self.labels and len(self.labels) != self.sigma:
            raise ValueError(f"{len(self.labels)} labels for {self.sigma} activities")
        cells.setflags(write=False)
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def num_objects(self) -> int:
        return self.cells.shape[0]

    @property
    def num_intervals(self) -> int:
        return self.cells.shape[1]

    @property
    def meta(self) -> WarehouseMeta:
        return WarehouseMeta(self.num_objects, self.num_intervals, self.sigma,
                             self.epoch, self.interval_len, self.labels)

    @property
    def os(self) -> np.ndarray:
        """Row-major concatenation of all objects' rows."""
        return self.cells.ravel()

    def indicator(self, a: int) -> np.ndarray:
        return (self.cells == a).astype(np.int64)


def run_starts(cells: np.ndarray) -> np.ndarray:
    """1-based OS positions where a run begins (activity switch or new object)."""
    r, n = cells.shape
    mark = np.zeros((r, n), dtype=bool)
    mark[:, 0] = True
    mark[:, 1:] = cells[:, 1:] != cells[:, :-1]
    return np.flatnonzero(mark.ravel()) + 1


def separated_runs(H: np.ndarray, first_run: np.ndarray, sep: int) -> np.ndarray:
    """Run ids with ``sep`` appended after each object's runs.

    ``first_run`` holds the 0-based index in ``H`` of each object's first run.
    """
    seq = np.insert(np.asarray(H, dtype=np.int64), first_run[1:], sep)
    return np.append(seq, sep)


class Warehouse:
    """Shared query surface and argument checking.

    Subclasses provide ``activity_at``, ``pattern_count`` and
    ``aggregate_count``; the remaining queries derive from those unless a
    structure has a faster route.
    """

    meta: WarehouseMeta
    tag: str = ""

    @property
    def num_objects(self) -> int:
        return self.meta.num_objects

    @property
    def num_intervals(self) -> int:
        return self.meta.num_intervals

    @property
    def sigma(self) -> int:
        return self.meta.sigma

    def _check_cell(self, obj: int, interval: int) -> None:
        if not 1 <= obj <= self.meta.num_objects:
            raise IndexError(f"object {obj} outside 1..{self.meta.num_objects}")
        if not 1 <= interval <= self.meta.num_intervals:
            raise IndexError(f"interval {interval} outside 1..{self.meta.num_intervals}")

    def _check_activity(self, a: int) -> None:
        if not 1 <= a <= self.meta.sigma:
            raise ValueError(f"unknown activity {a}; valid ids are 1..{self.meta.sigma}")

    def _check_span(self, lo: int, hi: int, limit: int, what: str) -> None:
        if not 1 <= lo <= hi <= limit:
            raise IndexError(f"{what} range [{lo}, {hi}] invalid for 1..{limit}")

    def _check_rect(self, a, objs, intervals) -> None:
        self._check_activity(a)
        self._check_span(objs[0], objs[1], self.meta.num_objects, "object")
        self._check_span(intervals[0], intervals[1], self.meta.num_intervals, "interval")

    def _check_pattern(self, pattern) -> list[int]:
        pat = [int(a) for a in pattern]
        if not pat:
            raise ValueError("pattern must contain at least one activity")
        for a in pat:
            self._check_activity(a)
        return pat

    def activities_in_range(self, obj: int, i_s: int, i_e: int) -> list[tuple[int, int, int]]:
        """Maximal runs ``(activity, first, last)`` covering ``[i_s, i_e]``."""
        self._check_cell(obj, i_s)
        self._check_span(i_s, i_e, self.meta.num_intervals, "interval")
        runs: list[tuple[int, int, int]] = []
        for i in range(i_s, i_e + 1):
            a = self.activity_at(obj, i)
            if runs and runs[-1][0] == a:
                runs[-1] = (a, runs[-1][1], i)
            else:
                runs.append((a, i, i))
        return runs

    def aggregate_duration(self, a: int, objs, intervals) -> int:
        """Minutes spent in activity ``a`` over the rectangle."""
        return self.aggregate_count(a, objs, intervals) * self.meta.interval_len

    def objects_performing(self, a: int, intervals) -> int:
        """How many objects show activity ``a`` at least once in ``intervals``."""
        self._check_rect(a, (1, self.meta.num_objects), intervals)
        return sum(1 for j in range(1, self.meta.num_objects + 1)
                   if self.aggregate_count(a, (j, j), intervals) > 0)

    def space(self) -> dict[str, int]:
        """Serialized byte size of each component."""
        raise NotImplementedError

    @property
    def nbytes(self) -> int:
        return sum(self.space().values())


class Semantrix(Warehouse):
    """Compressed warehouse answering individual, pattern and aggregate queries.

    ``B`` marks run starts in the row-major activity sequence, ``H`` holds one
    activity id per run, ``fm`` indexes ``H`` with a separator after each
    object, and ``S[a-1]`` is the summed area table of activity ``a``'s
    indicator matrix.
    """

    def __init__(self, meta: WarehouseMeta, B: BitVector, H: np.ndarray, fm: FMIndex, S: list):
        self.meta = meta
        self.B = B
        self.H = np.ascontiguousarray(H, dtype=np.uint8)
        self.fm = fm
        self.S = list(S)
        self.tag = "semantrix-diff" if S and isinstance(S[0], DiffSAT) else "semantrix-plain"
        self._H = self.H.tolist()
        I = meta.num_intervals
        # run-sequence offset of each object's first run, and where it sits in fm's text
        self._first_run = np.array([B.rank1(j * I + 1) - 1 for j in range(meta.num_objects)], dtype=np.int64)
        self._seq_start = self._first_run + np.arange(meta.num_objects) + 1

    @property
    def separator(self) -> int:
        return self.meta.sigma + 1

    @property
    def runs(self) -> int:
        return len(self._H)

    def activity_at(self, obj: int, interval: int) -> int:
        self._check_cell(obj, interval)
        pos = (obj - 1) * self.meta.num_intervals + interval
        return self._H[self.B.rank1(pos) - 1]

    def activities_in_range(self, obj, i_s, i_e):
        self._check_cell(obj, i_s)
        self._check_span(i_s, i_e, self.meta.num_intervals, "interval")
        base = (obj - 1) * self.meta.num_intervals
        k1 = self.B.rank1(base + i_s)
        k2 = self.B.rank1(base + i_e)
        runs = []
        for k in range(k1, k2 + 1):
            start = i_s if k == k1 else self.B.select1(k) - base
            end = i_e if k == k2 else self.B.select1(k + 1) - base - 1
            runs.append((self._H[k - 1], start, end))
        return runs

    def pattern_count(self, pattern) -> int:
        """Occurrences of ``pattern`` as consecutive runs of one object."""
        return self.fm.count(self._check_pattern(pattern))

    def pattern_occurrences(self, pattern) -> list[tuple[int, int]]:
        """``(object, interval)`` where each occurrence's first run begins."""
        pat = self._check_pattern(pattern)
        I = self.meta.num_intervals
        out = []
        for q in self.fm.locate(pat):
            j = int(np.searchsorted(self._seq_start, q, side="right"))
            p = self.B.select1(q - (j - 1))
            out.append((j, p - (j - 1) * I))
        return sorted(out)

    def aggregate_count(self, a: int, objs, intervals) -> int:
        """Cells of activity ``a`` in ``objs x intervals`` (inclusive ranges)."""
        self._check_rect(a, objs, intervals)
        return self.S[a - 1]._sum(objs[0], intervals[0], objs[1], intervals[1])

    def to_matrix(self) -> np.ndarray:
        """Rebuild the full activity matrix from ``B`` and ``H``."""
        runs = np.cumsum(self.B.to_numpy()) - 1
        return self.H[runs].reshape(self.meta.num_objects, self.meta.num_intervals)

    def space(self) -> dict[str, int]:
        sizes = {"B": self.B.nbytes, "H": 8 + len(self._H), "FM": self.fm.nbytes}
        for a, table in enumerate(self.S, start=1):
            sizes[f"S{a}"] = table.nbytes
        return sizes

    def __repr__(self):
        m = self.meta
        return f"Semantrix({m.num_objects}x{m.num_intervals}, sigma={m.sigma}, runs={self.runs}, {self.tag})"


def build_semantrix(m: ActivityMatrix, aggregation: str = "plain", diff_period: int = 4,
                    fm_sample_rate: int = DEFAULT_SAMPLE_RATE) -> Semantrix:
    """Build a Semantrix over ``m``.

    ``aggregation`` is ``"plain"`` for full summed area tables or ``"diff"``
    for the row-sampled encoding with period ``diff_period``.
    """
    if aggregation not in ("plain", "diff"):
        raise ValueError(f"aggregation must be 'plain' or 'diff', not {aggregation!r}")
    starts = run_starts(m.cells)
    bits = np.zeros(m.cells.size, dtype=np.uint8)
    bits[starts - 1] = 1
    B = BitVector.from_bits(bits)
    H = m.os[starts - 1]
    first_run = np.searchsorted(starts, np.arange(m.num_objects) * m.num_intervals + 1)
    fm = build_fmindex(separated_runs(H, first_run, m.sigma + 1), fm_sample_rate, sigma=m.sigma + 1)
    S = []
    for a in range(1, m.sigma + 1):
        M = prefix_sums(m.indicator(a))
        S.append(SummedAreaTable(M) if aggregation == "plain" else DiffSAT.from_prefix_sums(M, diff_period))
    return Semantrix(m.meta, B, H, fm, S)
