# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 tacslab contributors.
#
# tacslab is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Baseline retrieval and control tests."""

import numpy as np
import pytest

from tacslab.errors import EmptyPoolError, InvalidArgumentError, TacsLabConfigError
from tacslab.nets import SelectorNet
from tacslab.synthbench import BenchmarkSpec, generate
from tacslab.training import (
    BaselineConfig,
    HybridConfig,
    build_feature_averaged_context,
    build_method,
    make_control_context,
    retrieve_frozen_similarity,
    retrieve_random,
)
from tacslab.training.baselines import canonical_kind, feature_averaged_weights
from tacslab.training.loop import training_streams
from tacslab.training.method import Batch


def _norm_preserving_encoder(dim):
    encoder = SelectorNet(dim, dim, dim)
    encoder.l1.weight.value[...] = 0.1 * np.eye(dim)
    encoder.l2.weight.value[...] = 10.0 * np.eye(dim)
    return encoder.frozen_copy()


def test_random_singleton(rng, make_pool):
    pool = make_pool(np.ones((1, 3)))
    assert all(retrieve_random(pool, rng) == 0 for _ in range(10))


def test_random_is_uniform(rng, make_pool):
    pool = make_pool(np.eye(4))
    draws = np.array([retrieve_random(pool, rng) for _ in range(100_000)])
    frequencies = np.bincount(draws, minlength=4) / 100_000
    sigma = np.sqrt(0.25 * 0.75 / 100_000)
    assert np.all(np.abs(frequencies - 0.25) <= 3 * sigma)


def test_random_respects_the_query_group(rng, make_pool):
    pool = make_pool(np.eye(4), group_ids=[1, 2, 1, 3])
    draws = np.array([retrieve_random(pool, rng, query_group=1) for _ in range(1000)])
    assert not np.isin(draws, [0, 2]).any()
    with pytest.raises(EmptyPoolError):
        retrieve_random(make_pool(np.eye(2), group_ids=[1, 1]), rng, query_group=1)


def test_frozen_similarity_finds_the_copy(rng, make_pool):
    encoder = _norm_preserving_encoder(6)
    candidates = rng.normal(size=(5, 6))
    candidates /= np.linalg.norm(candidates, axis=1, keepdims=True)
    x_q = candidates[3].copy()
    pool = make_pool(candidates, group_ids=[10, 11, 12, 13, 14])
    assert retrieve_frozen_similarity(encoder, x_q, pool, query_group=99) == 3
    assert retrieve_frozen_similarity(encoder, x_q, pool, query_group=13) != 3


def test_frozen_similarity_picks_the_keymatch_distractor():
    bench = generate(BenchmarkSpec())
    encoder = _norm_preserving_encoder(bench.spec.d_in)
    picks = np.array(
        [
            retrieve_frozen_similarity(encoder, x, bench.pool)
            for x in bench.eval.features
        ]
    )
    assert np.mean(picks == bench.eval_trap) >= 0.9


def test_feature_averaged_weights():
    scores = np.log([1.0, 2.0, 3.0, 0.01])
    weights = feature_averaged_weights(scores, 3).value
    assert np.allclose(weights, [1 / 6, 2 / 6, 3 / 6, 0])
    assert np.array_equal(feature_averaged_weights(scores, 1).value, [0, 0, 1, 0])
    with pytest.raises(InvalidArgumentError):
        feature_averaged_weights(scores, 0)
    with pytest.raises(InvalidArgumentError):
        feature_averaged_weights(np.array([0.0, -np.inf, 1.0]), 3)


def test_feature_averaged_context(make_pool):
    encoder = SelectorNet(3, 3, 3)
    pool = make_pool(np.array([[1.0, 0.0, 2.0], [3.0, 2.0, 0.0], [5.0, 5.0, 5.0]]))
    context = build_feature_averaged_context(encoder, np.ones(3), pool, k=2)
    assert np.allclose(context.value, [2.0, 1.0, 1.0])
    top = build_feature_averaged_context(encoder, np.ones(3), pool, k=1)
    assert np.array_equal(top.value, pool.features[0])


def test_control_contexts(rng):
    x = rng.normal(size=32)
    assert np.linalg.norm(make_control_context("blank", x)) == 0.0
    assert np.array_equal(make_control_context("duplicate", x), x)
    deviations = [
        np.sum((make_control_context("noisy", x, rng, 0.1) - x) ** 2) / 32
        for _ in range(10_000)
    ]
    assert np.mean(deviations) == pytest.approx(0.01, rel=0.05)
    with pytest.raises(InvalidArgumentError):
        make_control_context("mirror", x)


def test_canonical_kind():
    assert canonical_kind("frozen_similarity") == "frozen_sim"
    assert canonical_kind("feature_averaged") == "feat_avg"
    assert canonical_kind("noisy") == "noisy"
    with pytest.raises(InvalidArgumentError):
        canonical_kind("dino")


@pytest.mark.parametrize(
    "changes", [{"top_k": 0}, {"feat_avg_encoder": "clip"}, {"noise_sigma": -1.0}]
)
def test_invalid_baseline_config(changes):
    with pytest.raises(TacsLabConfigError):
        BaselineConfig(**changes).validate()


def _method(name, benchmark, **baselines):
    config = HybridConfig(batch_size=8, seed=4)
    return build_method(
        name,
        benchmark.spec,
        config,
        selector_hidden=8,
        embedding_dim=4,
        tasknet_hidden=8,
        baselines=BaselineConfig(**baselines),
    )


def test_no_context_outcomes_carry_no_selection(small_benchmark):
    method = _method("no_context", small_benchmark)
    batch = Batch.take(small_benchmark.eval, np.arange(4))
    for outcome in method.evaluate(batch, small_benchmark.pool):
        assert outcome.action is None
        assert outcome.probabilities is None
        assert outcome.prediction is not None


def test_frozen_similarity_never_changes(small_benchmark):
    method = _method("frozen_sim", small_benchmark)
    eval_batch = Batch.take(small_benchmark.eval, np.arange(len(small_benchmark.eval)))
    before = method.select(eval_batch, small_benchmark.pool).actions
    streams = training_streams(4)
    for start in range(0, 32, 8):
        batch = Batch.take(small_benchmark.train, np.arange(start, start + 8))
        method.train_step(batch, small_benchmark.pool, streams)
    after = method.select(eval_batch, small_benchmark.pool).actions
    assert np.array_equal(before, after)


@pytest.mark.parametrize("name", ["random", "noisy"])
def test_evaluation_draws_do_not_depend_on_batching(small_benchmark, name):
    method = _method(name, small_benchmark)
    pool = small_benchmark.pool
    whole = method.select(Batch.take(small_benchmark.eval, np.arange(8)), pool)
    tail = method.select(Batch.take(small_benchmark.eval, np.arange(4, 8)), pool)
    assert np.array_equal(whole.contexts[4:], tail.contexts)


def test_random_probabilities_are_uniform_over_unmasked(small_benchmark):
    method = _method("random", small_benchmark)
    batch = Batch.take(small_benchmark.eval, np.arange(3))
    batch.group_ids = np.full(3, small_benchmark.pool.group_ids[2])
    selection = method.select(batch, small_benchmark.pool)
    assert np.all(selection.actions != 2)
    assert np.all(selection.probabilities[:, 2] == 0.0)
    assert np.allclose(selection.probabilities.sum(axis=1), 1.0)


def test_feature_averaged_encoder_choice(small_benchmark):
    learned = _method("feat_avg", small_benchmark)
    frozen = _method("feat_avg", small_benchmark, feat_avg_encoder="frozen")
    learned_names = {p.name for p in learned.optimizer.parameters}
    frozen_names = {p.name for p in frozen.optimizer.parameters}
    assert "selector.l1.weight" in learned_names
    assert "selector.l1.weight" not in frozen_names


def test_feature_averaged_step_trains_the_encoder(small_benchmark):
    method = _method("feat_avg", small_benchmark, top_k=3)
    before = method.encoder.state()["selector.l1.weight"]
    batch = Batch.take(small_benchmark.train, np.arange(8))
    method.train_step(batch, small_benchmark.pool, training_streams(4))
    assert not np.array_equal(method.encoder.state()["selector.l1.weight"], before)


def test_blank_control_keeps_the_null_vector_at_zero(small_benchmark):
    method = _method("blank", small_benchmark)
    batch = Batch.take(small_benchmark.train, np.arange(8))
    method.train_step(batch, small_benchmark.pool, training_streams(4))
    assert not method.tasknet.null_context.value.any()
    selection = method.select(batch, small_benchmark.pool)
    assert not selection.contexts.any()
