"""Compressed warehouse for semantic trajectories."""

from .baselines import (BaselinePlus, NaiveMatrix, build_baseline_plus, naive_activity_at,
                        naive_aggregate, naive_pattern_count)
from .core import ActivityMatrix, Semantrix, WarehouseMeta, build_semantrix
from .fmindex import FMIndex, build_fmindex
from .ingest import LabelDictionary, SegmentRecord, discretize, parse_segments
from .sat import DiffSAT, SummedAreaTable, build_diff_sat, build_sat
from .succinct import BitVector, build_bitvector
from .synth import GeneratorConfig, generate, generate_preset

__version__ = "0.1.0"

__all__ = [
    "ActivityMatrix", "BaselinePlus", "BitVector", "DiffSAT", "FMIndex", "GeneratorConfig",
    "LabelDictionary", "NaiveMatrix", "SegmentRecord", "Semantrix", "SummedAreaTable",
    "WarehouseMeta", "build_baseline_plus", "build_bitvector", "build_diff_sat", "build_fmindex",
    "build_sat", "build_semantrix", "discretize", "generate", "generate_preset",
    "naive_activity_at", "naive_aggregate", "naive_pattern_count", "parse_segments",
]
