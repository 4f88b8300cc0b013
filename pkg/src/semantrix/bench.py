"""Space and query-time comparison across warehouse structures."""

from __future__ import annotations

import csv
import io
import statistics
import time
from dataclasses import dataclass

import numpy as np

from .baselines import NaiveMatrix, build_baseline_plus
from .core import ActivityMatrix, Warehouse, build_semantrix

STRUCTURES = ("naive", "baseline+", "semantrix-plain", "semantrix-diff")
# trucks 1-3 over one hour of 5-minute intervals
DEFAULT_AGG_SHAPE = (3, 12)
CSV_HEADER = ("structure", "query_type", "n", "mean_us", "median_us", "bytes")
WARMUP = 1000


def build_structure(m: ActivityMatrix, name: str, diff_period: int = 4,
                    fm_sample_rate: int = 32) -> Warehouse:
    if name == "naive":
        return NaiveMatrix.from_matrix(m)
    if name == "baseline+":
        return build_baseline_plus(m, fm_sample_rate)
    if name == "semantrix-plain":
        return build_semantrix(m, "plain", fm_sample_rate=fm_sample_rate)
    if name == "semantrix-diff":
        return build_semantrix(m, "diff", diff_period, fm_sample_rate)
    raise ValueError(f"unknown structure {name!r}; choose from {', '.join(STRUCTURES)}")


def parse_query_type(spec: str):
    """``at``, ``pattern`` or ``agg`` / ``agg:JxW`` (J objects by W intervals)."""
    if spec in ("at", "pattern"):
        return spec, None
    if spec == "agg":
        return "agg", DEFAULT_AGG_SHAPE
    if spec.startswith("agg:"):
        try:
            j, w = (int(v) for v in spec[4:].lower().split("x"))
        except ValueError:
            raise ValueError(f"bad aggregate shape in {spec!r}; expected agg:JxW") from None
        if j < 1 or w < 1:
            raise ValueError(f"aggregate shape must be positive in {spec!r}")
        return "agg", (j, w)
    raise ValueError(f"unknown query type {spec!r}")


def make_workload(kind: str, shape, n: int, r: int, I: int, sigma: int, rng: np.random.Generator):
    """``n`` argument tuples for one query family."""
    if kind == "at":
        return list(zip(rng.integers(1, r + 1, n).tolist(), rng.integers(1, I + 1, n).tolist()))
    if kind == "pattern":
        pairs = rng.integers(1, sigma + 1, (n, 2)).tolist()
        return [(p,) for p in pairs]
    jn, w = shape
    if jn > r or w > I:
        raise ValueError(f"aggregate shape {jn}x{w} exceeds matrix {r}x{I}")
    acts = rng.integers(1, sigma + 1, n).tolist()
    j1 = rng.integers(1, r - jn + 2, n).tolist()
    i1 = rng.integers(1, I - w + 2, n).tolist()
    return [(a, (j, j + jn - 1), (i, i + w - 1)) for a, j, i in zip(acts, j1, i1)]


def _method(structure: Warehouse, kind: str):
    return {"at": structure.activity_at, "pattern": structure.pattern_count,
            "agg": structure.aggregate_count}[kind]


def time_queries(fn, workload) -> tuple[float, float, list]:
    """Mean and median microseconds per call after a warm-up pass."""
    for args in workload[:WARMUP]:
        fn(*args)
    clock = time.perf_counter_ns
    samples = []
    answers = []
    for args in workload:
        t0 = clock()
        ans = fn(*args)
        samples.append(clock() - t0)
        answers.append(ans)
    mean = sum(samples) / len(samples) / 1e3
    return mean, statistics.median(samples) / 1e3, answers


@dataclass
class BenchRow:
    structure: str
    query_type: str
    n: int
    mean_us: float | None = None
    median_us: float | None = None
    bytes: int | None = None

    def as_csv(self):
        fmt = lambda v: "" if v is None else (f"{v:.3f}" if isinstance(v, float) else str(v))
        return [self.structure, self.query_type, str(self.n), fmt(self.mean_us), fmt(self.median_us), fmt(self.bytes)]


def run_bench(m: ActivityMatrix, structures=STRUCTURES, query_types=("at", "pattern", "agg"),
              queries: int = 10_000, seed: int = 0, diff_period: int = 4,
              check: bool = False) -> list[BenchRow]:
    """Build each structure over ``m`` and time the same seeded workloads.

    With ``check`` set, answers are compared across structures and a
    mismatch raises ``AssertionError``.
    """
    r, I, sigma = m.num_objects, m.num_intervals, m.sigma
    workloads = {}
    for k, spec in enumerate(query_types):
        kind, shape = parse_query_type(spec)
        rng = np.random.default_rng([seed, k])
        workloads[spec] = (kind, make_workload(kind, shape, queries, r, I, sigma, rng))
    rows = []
    reference = {}
    for name in structures:
        s = build_structure(m, name, diff_period)
        rows.append(BenchRow(name, "space", 0, bytes=s.nbytes))
        for spec, (kind, workload) in workloads.items():
            mean, median, answers = time_queries(_method(s, kind), workload)
            if check:
                expected = reference.setdefault(spec, answers)
                if answers != expected:
                    raise AssertionError(f"{name} disagrees on {spec} queries")
            rows.append(BenchRow(name, spec, len(workload), mean, median))
    return rows


def rows_to_csv(rows) -> str:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for row in rows:
        w.writerow(row.as_csv())
    return out.getvalue()
