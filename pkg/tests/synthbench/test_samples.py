# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 tacslab contributors.
#
# tacslab is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Sample set and candidate pool tests."""

import numpy as np
import pytest

from tacslab.errors import InvalidArgumentError, TacsLabConfigError
from tacslab.synthbench import (
    CandidatePool,
    LabeledSample,
    SampleSet,
    build_pool,
    hash_arrays,
)


@pytest.fixture
def samples(rng):
    return SampleSet(
        rng.normal(size=(1000, 3)),
        rng.integers(0, 4, size=1000),
        np.arange(1000),
        classes=4,
    )


def test_getitem_returns_a_labeled_sample(samples):
    sample = samples[3]
    assert isinstance(sample, LabeledSample)
    assert sample.group_id == 3
    assert sample.key_id == -1
    assert np.array_equal(sample.features, samples.features[3])


@pytest.mark.parametrize(
    "features,labels",
    [
        (np.zeros((3, 2)), [0, 1]),
        (np.array([[0.0, np.nan]]), [0]),
        (np.array([[0.0, np.inf]]), [0]),
        (np.zeros((2, 2)), [0, 4]),
        (np.zeros((2, 2)), [-1, 0]),
    ],
)
def test_invalid_sample_sets(features, labels):
    with pytest.raises(InvalidArgumentError):
        SampleSet(features, labels, np.arange(len(labels)), classes=4)


def test_build_pool_sizes(samples):
    pool, train = build_pool(samples, 0.2, seed=17)
    assert len(pool) == 200
    assert len(train) == 800
    assert pool.fraction == 0.2


def test_build_pool_partitions_the_training_set(samples):
    pool, train = build_pool(samples, 0.2, seed=17)
    groups = np.concatenate([pool.group_ids, train.group_ids])
    assert sorted(groups.tolist()) == list(range(1000))


def test_build_pool_is_deterministic(samples):
    first, _ = build_pool(samples, 0.2, seed=17)
    second, _ = build_pool(samples, 0.2, seed=17)
    third, _ = build_pool(samples, 0.2, seed=18)
    assert first.pool_version == second.pool_version
    assert first.pool_version != third.pool_version


@pytest.mark.parametrize("fraction", [0.0, 1.0, -0.5, 1e-6])
def test_build_pool_rejects_fraction(samples, fraction):
    with pytest.raises(TacsLabConfigError):
        build_pool(samples, fraction, seed=17)


def test_pool_is_immutable_and_detached(rng):
    features = rng.normal(size=(4, 3))
    pool = CandidatePool(features, [0, 1, 2, 3], np.arange(4), classes=4)
    features[0, 0] = 99.0
    assert pool.features[0, 0] != 99.0
    with pytest.raises(ValueError):
        pool.features[1, 1] = 0.0


def test_hash_arrays_tracks_content_and_shape():
    a = np.arange(6, dtype=np.float64)
    assert hash_arrays(a) == hash_arrays(a.copy())
    assert hash_arrays(a) != hash_arrays(a.reshape(2, 3))
    b = a.copy()
    b[-1] += 1e-12
    assert hash_arrays(a) != hash_arrays(b)
