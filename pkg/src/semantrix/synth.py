"""Seeded synthetic truck-fleet activity matrices.

Each object's row is an independent first-order Markov chain over the nine
fleet activities.  Randomness comes from numpy's PCG64 generator; row ``j``
draws from ``SeedSequence([seed, j])`` so rows can be produced in any order
or in parallel without changing the result.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field

import numpy as np

from .core import ActivityMatrix, run_starts
from .ingest import FLEET_ACTIVITIES

# 12 five-minute intervals per hour, 8-hour shifts, 7 days a week, 4-week months
INTERVALS_PER_DAY = 12 * 8
PRESETS = {
    "month": INTERVALS_PER_DAY * 7 * 4,
    "six-months": INTERVALS_PER_DAY * 7 * 4 * 6,
    "year": INTERVALS_PER_DAY * 7 * 4 * 12,
}
SIGMA = len(FLEET_ACTIVITIES)


def default_transition() -> np.ndarray:
    """Sticky 9x9 transition matrix loosely shaped like a working day.

    Every activity keeps itself with probability at least 0.6; the
    leftover mass favours plausible successors (headquarters to transit,
    transit to customers, slow to normal traffic, and so on).
    """
    stay = np.array([0.80, 0.85, 0.85, 0.75, 0.70, 0.65, 0.80, 0.60, 0.90])
    succ = np.array([
        # hq  cust  norm  slow  out   oslow break undef inact
        [0.0, 0.10, 0.55, 0.15, 0.05, 0.02, 0.05, 0.03, 0.05],
        [0.05, 0.0, 0.55, 0.15, 0.10, 0.05, 0.05, 0.05, 0.00],
        [0.10, 0.45, 0.0, 0.20, 0.10, 0.03, 0.07, 0.05, 0.00],
        [0.05, 0.20, 0.50, 0.0, 0.05, 0.10, 0.05, 0.05, 0.00],
        [0.05, 0.15, 0.45, 0.05, 0.0, 0.20, 0.05, 0.05, 0.00],
        [0.05, 0.10, 0.20, 0.10, 0.45, 0.0, 0.05, 0.05, 0.00],
        [0.10, 0.20, 0.45, 0.10, 0.05, 0.02, 0.0, 0.08, 0.00],
        [0.15, 0.15, 0.30, 0.10, 0.10, 0.05, 0.05, 0.0, 0.10],
        [0.60, 0.05, 0.15, 0.05, 0.00, 0.00, 0.05, 0.10, 0.0],
    ])
    succ = succ / succ.sum(axis=1, keepdims=True)
    return stay[:, None] * np.eye(SIGMA) + (1 - stay)[:, None] * succ


def default_initial() -> np.ndarray:
    p = np.full(SIGMA, 0.02)
    p[0] = 1 - p[1:].sum()
    return p


@dataclass
class GeneratorConfig:
    num_objects: int = 20
    intervals: int = PRESETS["month"]
    seed: int = 0
    transition: np.ndarray = field(default_factory=default_transition)
    initial: np.ndarray = field(default_factory=default_initial)
    epoch: int = 0
    interval_len: int = 5

    @classmethod
    def preset(cls, name: str, **kw) -> "GeneratorConfig":
        try:
            return cls(intervals=PRESETS[name], **kw)
        except KeyError:
            raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None

    def validate(self) -> None:
        T = np.asarray(self.transition, dtype=float)
        p0 = np.asarray(self.initial, dtype=float)
        sigma = p0.size
        if T.shape != (sigma, sigma):
            raise ValueError(f"transition must be {sigma}x{sigma}, got {T.shape}")
        if (T < 0).any() or not np.allclose(T.sum(axis=1), 1, rtol=0, atol=1e-9):
            raise ValueError("transition rows must be non-negative and sum to 1")
        if (p0 < 0).any() or abs(p0.sum() - 1) > 1e-9:
            raise ValueError("initial distribution must be non-negative and sum to 1")
        if self.num_objects < 1 or self.intervals < 1:
            raise ValueError("num_objects and intervals must be positive")


def _sample_row(rng: np.random.Generator, cum_T: list[list[float]], cum_p0: list[float], n: int) -> list[int]:
    u = rng.random(n).tolist()
    last = len(cum_p0) - 1
    state = min(bisect_right(cum_p0, u[0]), last)
    row = [state]
    for x in u[1:]:
        state = min(bisect_right(cum_T[state], x), last)
        row.append(state)
    return row


def generate(cfg: GeneratorConfig) -> ActivityMatrix:
    cfg.validate()
    T = np.asarray(cfg.transition, dtype=float)
    p0 = np.asarray(cfg.initial, dtype=float)
    cum_T = np.cumsum(T, axis=1).tolist()
    cum_p0 = np.cumsum(p0).tolist()
    cells = np.empty((cfg.num_objects, cfg.intervals), dtype=np.uint8)
    for j in range(cfg.num_objects):
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([cfg.seed, j])))
        cells[j] = _sample_row(rng, cum_T, cum_p0, cfg.intervals)
    cells += 1
    labels = FLEET_ACTIVITIES if p0.size == SIGMA else ()
    return ActivityMatrix(cells, sigma=p0.size, epoch=cfg.epoch, interval_len=cfg.interval_len, labels=labels)


def generate_preset(name: str, seed: int = 0, num_objects: int = 20) -> ActivityMatrix:
    return generate(GeneratorConfig.preset(name, seed=seed, num_objects=num_objects))


def mean_run_length(m: ActivityMatrix) -> float:
    return m.cells.size / run_starts(m.cells).size
