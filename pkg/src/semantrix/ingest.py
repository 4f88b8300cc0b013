"""Labelled trajectory segments to a discretized activity matrix."""

from __future__ import annotations

import csv
import io
import logging
import math
from dataclasses import dataclass
from datetime import datetime, timezone

import numpy as np

from .core import ActivityMatrix

log = logging.getLogger(__name__)

FLEET_ACTIVITIES = (
    "Being at headquarters",
    "Working at a customer place",
    "Normal transit on planned route",
    "Slow transit on planned route",
    "Normal transit out of planned route",
    "Slow transit out of planned route",
    "Taking a break",
    "Undefined/unknown activity",
    "Inactive",
)
UNKNOWN_ACTIVITY = FLEET_ACTIVITIES.index("Undefined/unknown activity") + 1


class IngestError(ValueError):
    """Malformed or unresolvable segment data."""


@dataclass(frozen=True)
class SegmentRecord:
    object_id: str
    start_ts: int
    end_ts: int
    label: str

    def __post_init__(self):
        if self.start_ts >= self.end_ts:
            raise IngestError(f"segment of {self.object_id!r} has start {self.start_ts} >= end {self.end_ts}")


class LabelDictionary:
    """Bijective label <-> id map with ids ``1..sigma``.

    A dictionary built from a fixed label list is closed: looking up an
    unknown label raises.  An open one assigns the next id on first sight.
    """

    def __init__(self, labels=(), closed: bool | None = None):
        self._labels: list[str] = []
        self._ids: dict[str, int] = {}
        for label in labels:
            self._add(label)
        self.closed = bool(labels) if closed is None else closed

    @classmethod
    def fleet(cls) -> "LabelDictionary":
        return cls(FLEET_ACTIVITIES)

    def _add(self, label: str) -> int:
        if label in self._ids:
            raise IngestError(f"duplicate label {label!r}")
        self._labels.append(label)
        self._ids[label] = len(self._labels)
        return len(self._labels)

    def id(self, label: str) -> int:
        try:
            return self._ids[label]
        except KeyError:
            if self.closed:
                raise IngestError(f"unknown activity label {label!r}") from None
            return self._add(label)

    def label(self, ident: int) -> str:
        if not 1 <= ident <= len(self._labels):
            raise KeyError(ident)
        return self._labels[ident - 1]

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(self._labels)

    def __len__(self):
        return len(self._labels)

    def __contains__(self, label):
        return label in self._ids

    def __repr__(self):
        return f"LabelDictionary({len(self)} labels, closed={self.closed})"


def parse_timestamp(text: str) -> int:
    """Unix seconds from an RFC-3339 string or a bare epoch number."""
    text = text.strip()
    try:
        return math.floor(float(text))
    except (ValueError, OverflowError):
        pass
    try:
        return _parse_rfc3339(text)
    except ValueError as exc:
        raise IngestError(f"bad timestamp {text!r}") from exc


def _parse_rfc3339(text: str) -> int:
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    dt = datetime.fromisoformat(text)
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return math.floor(dt.timestamp())


def parse_segments(text: str) -> list[SegmentRecord]:
    """Read ``object,start,end,label`` CSV text into records, in file order."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or [h.strip().lower() for h in header] != ["object", "start", "end", "label"]:
        raise IngestError("line 1: expected header 'object,start,end,label'")
    records = []
    for lineno, row in enumerate(reader, start=2):
        if not row or all(not f.strip() for f in row):
            continue
        if len(row) != 4:
            raise IngestError(f"line {lineno}: expected 4 fields, got {len(row)}")
        obj, start, end, label = (f.strip() for f in row)
        try:
            records.append(SegmentRecord(obj, parse_timestamp(start), parse_timestamp(end), label))
        except IngestError as exc:
            raise IngestError(f"line {lineno}: {exc}") from None
    return records


def discretize(records, epoch: int, interval_len: int, num_intervals: int,
               labels: LabelDictionary | None = None, fill_id: int | None = None,
               objects=None) -> tuple[ActivityMatrix, int]:
    """Assign each (object, interval) cell the activity that covers it most.

    Within each interval the segment with the largest overlap wins; ties go
    to the smaller activity id, then to the earlier segment start.  Cells no
    segment touches get ``fill_id``.  Rows follow ``objects`` if given, then
    any remaining objects in first-seen order.  ``interval_len`` is in
    minutes.  Returns the matrix and the number of records skipped for lying
    entirely outside the window.
    """
    if interval_len <= 0 or num_intervals < 1:
        raise IngestError("interval_len and num_intervals must be positive")
    labels = LabelDictionary.fleet() if labels is None else labels
    if fill_id is None:
        fill_id = UNKNOWN_ACTIVITY if labels.labels[:len(FLEET_ACTIVITIES)] == FLEET_ACTIVITIES else 1
    width = interval_len * 60
    window_end = epoch + num_intervals * width

    order: dict[str, int] = {}
    for obj in objects or ():
        order.setdefault(obj, len(order))
    seen = set()
    skipped = 0
    per_object: dict[str, list[tuple[int, int, int]]] = {}
    for rec in records:
        key = (rec.object_id, rec.start_ts, rec.end_ts, rec.label)
        if key in seen:
            raise IngestError(f"duplicate segment {key}")
        seen.add(key)
        order.setdefault(rec.object_id, len(order))
        ident = labels.id(rec.label)
        if rec.end_ts <= epoch or rec.start_ts >= window_end:
            skipped += 1
            continue
        per_object.setdefault(rec.object_id, []).append((rec.start_ts, rec.end_ts, ident))
    if not order:
        raise IngestError("no objects to discretize")
    sigma = len(labels)
    if not 1 <= fill_id <= sigma:
        raise IngestError(f"fill id {fill_id} outside 1..{sigma}")

    cells = np.full((len(order), num_intervals), fill_id, dtype=np.uint8)
    # best[j, i] ordering key: (-overlap, activity id, segment start)
    best_overlap = np.zeros((len(order), num_intervals), dtype=np.int64)
    best_start = np.zeros((len(order), num_intervals), dtype=np.int64)
    for obj, segs in per_object.items():
        j = order[obj]
        for start, end, ident in segs:
            lo = max(start, epoch)
            hi = min(end, window_end)
            for i in range((lo - epoch) // width, (hi - 1 - epoch) // width + 1):
                cell_lo = epoch + i * width
                ov = min(hi, cell_lo + width) - max(lo, cell_lo)
                if ov <= 0:
                    continue
                cur = best_overlap[j, i]
                if cur == 0 or (-ov, ident, start) < (-cur, int(cells[j, i]), int(best_start[j, i])):
                    best_overlap[j, i] = ov
                    cells[j, i] = ident
                    best_start[j, i] = start
    if skipped:
        log.warning("skipped %d segment(s) outside the discretization window", skipped)
    m = ActivityMatrix(cells, sigma=sigma, epoch=epoch, interval_len=interval_len, labels=labels.labels)
    return m, skipped


def matrix_to_csv(m: ActivityMatrix) -> str:
    """One segment per run, in the same CSV layout ``parse_segments`` reads."""
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["object", "start", "end", "label"])
    width = m.interval_len * 60
    for j, row in enumerate(m.cells, start=1):
        bounds = np.flatnonzero(np.diff(row)) + 1
        starts = np.concatenate(([0], bounds))
        ends = np.concatenate((bounds, [row.size]))
        for s, e in zip(starts.tolist(), ends.tolist()):
            a = int(row[s])
            label = m.labels[a - 1] if m.labels else str(a)
            w.writerow([f"obj{j}", m.epoch + s * width, m.epoch + e * width, label])
    return out.getvalue()
