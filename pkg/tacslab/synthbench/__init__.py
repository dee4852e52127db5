# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 tacslab contributors.
#
# tacslab is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Synthetic benchmarks, candidate pools and selection metrics."""

from .generators import (
    BENCHMARKS,
    Benchmark,
    BenchmarkSpec,
    gen_crossclass,
    gen_keymatch,
    generate,
)
from .metrics import MetricsRecord, entropy, eval_metrics, mean_class_accuracy
from .samples import CandidatePool, LabeledSample, SampleSet, build_pool, hash_arrays
from .snapshot import export_benchmark, read_bin, write_bin, write_csv

__all__ = (
    "BENCHMARKS",
    "Benchmark",
    "BenchmarkSpec",
    "CandidatePool",
    "LabeledSample",
    "MetricsRecord",
    "SampleSet",
    "build_pool",
    "entropy",
    "eval_metrics",
    "export_benchmark",
    "gen_crossclass",
    "gen_keymatch",
    "generate",
    "hash_arrays",
    "mean_class_accuracy",
    "read_bin",
    "write_bin",
    "write_csv",
)
