# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 tacslab contributors.
#
# tacslab is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Shared pytest fixtures."""

import numpy as np
import pytest

from tacslab.synthbench import BenchmarkSpec, CandidatePool, generate


@pytest.fixture
def rng():
    """Fixed-seed generator."""
    return np.random.default_rng(2024)


@pytest.fixture
def make_pool():
    """Factory for small candidate pools."""

    def _make_pool(features, labels=None, group_ids=None, classes=4):
        features = np.asarray(features, dtype=np.float64)
        count = features.shape[0]
        if labels is None:
            labels = np.zeros(count, dtype=np.int64)
        if group_ids is None:
            group_ids = np.arange(count) + 1000
        return CandidatePool(features, labels, group_ids, classes=classes)

    return _make_pool


@pytest.fixture(scope="session")
def small_spec():
    """A keymatch benchmark small enough for unit tests."""
    return BenchmarkSpec(
        name="keymatch",
        classes=4,
        d_in=16,
        keys=8,
        pool_size=16,
        train_size=64,
        eval_size=32,
        seed=5,
    )


@pytest.fixture(scope="session")
def small_benchmark(small_spec):
    """Generated small keymatch benchmark."""
    return generate(small_spec)


SMALL_CONFIG = """\
[run]
seed = 5
out = {out}

[benchmark]
classes = 4
d_in = 16
keys = 8
pool_size = 32
train_size = 64
eval_size = 32

[selector]
hidden = 8
embedding_dim = 4

[tasknet]
hidden = 8

[trainer]
epochs = 2
batch_size = 16
"""


@pytest.fixture
def config_file(tmp_path):
    """A run configuration for a two-epoch run on the small benchmark."""
    path = tmp_path / "small.ini"
    path.write_text(SMALL_CONFIG.format(out=tmp_path / "runs"))
    return path
