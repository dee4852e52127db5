# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 tacslab contributors.
#
# tacslab is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Evaluation metric tests."""

import numpy as np
import pytest

from tacslab.errors import InvalidArgumentError
from tacslab.synthbench import (
    BenchmarkSpec,
    entropy,
    eval_metrics,
    gen_crossclass,
    mean_class_accuracy,
)
from tacslab.training import SelectionOutcome


def _outcomes(predictions, actions=None, probabilities=None):
    outcomes = []
    for q, prediction in enumerate(predictions):
        outcomes.append(
            SelectionOutcome(
                query_id=q,
                prediction=int(prediction),
                action=None if actions is None else int(actions[q]),
                probabilities=None if probabilities is None else probabilities[q],
            )
        )
    return outcomes


def test_oracle_selections_agree_fully(small_benchmark):
    bench = small_benchmark
    metrics = eval_metrics(
        _outcomes(bench.eval.labels, actions=bench.eval_oracle),
        bench.eval,
        bench.eval_oracle,
        bench.pool,
    )
    assert metrics.accuracy == 1.0
    assert metrics.mean_class_accuracy == 1.0
    assert metrics.oracle_agreement == 1.0
    assert metrics.mean_entropy is None


def test_no_context_outcomes_have_no_selection_statistics(small_benchmark):
    bench = small_benchmark
    metrics = eval_metrics(
        _outcomes(np.zeros(len(bench.eval))), bench.eval, bench.eval_oracle, bench.pool
    )
    assert metrics.oracle_agreement is None
    assert metrics.cross_class_rate is None
    assert metrics.accuracy == pytest.approx(np.mean(bench.eval.labels == 0))


def test_uniform_probabilities_have_entropy_ln4(small_benchmark):
    bench = small_benchmark
    uniform = np.full((len(bench.eval), len(bench.pool)), 1.0 / len(bench.pool))
    metrics = eval_metrics(
        _outcomes(bench.eval.labels, np.zeros(len(bench.eval)), uniform),
        bench.eval,
        bench.eval_oracle,
        bench.pool,
    )
    assert metrics.mean_entropy == pytest.approx(np.log(len(bench.pool)))
    assert entropy(np.full(4, 0.25)) == pytest.approx(np.log(4))


def test_entropy_ignores_zero_entries():
    assert entropy([0.0, 1.0, 0.0]) == 0.0
    assert entropy([0.5, 0.5, 0.0]) == pytest.approx(np.log(2))


def test_missing_outcomes(small_benchmark):
    bench = small_benchmark
    outcomes = _outcomes(bench.eval.labels)[:-1]
    with pytest.raises(InvalidArgumentError):
        eval_metrics(outcomes, bench.eval, bench.eval_oracle, bench.pool)


def test_mean_class_accuracy():
    predictions = np.array([0, 0, 0, 1])
    labels = np.array([0, 0, 0, 1])
    assert mean_class_accuracy(predictions, labels) == 1.0
    predictions = np.array([0, 0, 0, 0])
    assert mean_class_accuracy(predictions, labels) == 0.5


def test_random_selection_cross_class_rate():
    bench = gen_crossclass(BenchmarkSpec(name="crossclass"))
    rng = np.random.default_rng(11)
    count = len(bench.eval)
    actions = rng.integers(len(bench.pool), size=count)
    metrics = eval_metrics(
        _outcomes(bench.eval.labels, actions), bench.eval, bench.eval_oracle, bench.pool
    )
    sigma = np.sqrt(0.75 * 0.25 / count)
    assert abs(metrics.cross_class_rate - 0.75) <= 3 * sigma
