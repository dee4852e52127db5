# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 tacslab contributors.
#
# tacslab is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Epoch loop, evaluation and method construction."""

import itertools
import logging
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .. import __version__
from ..errors import InvalidArgumentError
from ..helpers.seeding import substream
from ..nets import SelectorNet, TaskNet
from ..synthbench import eval_metrics
from .baselines import (
    BASELINES,
    BaselineConfig,
    ControlMethod,
    FeatureAveragedMethod,
    FrozenSimilarityMethod,
    NoContextMethod,
    RandomMethod,
    canonical_kind,
)
from .hybrid import TacsMethod
from .method import Batch
from .records import EpochRecord, RunReport

logger = logging.getLogger(__name__)

METHODS = ("tacs",) + BASELINES
TRAINING_STREAMS = ("gumbel", "policy", "shuffle", "retrieval", "control")


def training_streams(seed):
    """Generators for every random draw made while training."""
    return {name: substream(seed, name) for name in TRAINING_STREAMS}


def probe_streams(seed):
    """A single probe generator standing in for every training stream."""
    probe = substream(seed, "probe")
    return {name: probe for name in TRAINING_STREAMS}


def build_method(
    name,
    spec,
    config,
    selector_hidden=64,
    embedding_dim=16,
    tasknet_hidden=64,
    baselines=None,
):
    """Networks initialized from the ``init`` stream, wrapped in a method.

    Every method draws its task network from the same substream, so all
    methods of one seed start from identical task-network weights.
    """
    baselines = (baselines or BaselineConfig()).validate()
    kind = "tacs" if name == "tacs" else canonical_kind(name)
    selector = SelectorNet(
        spec.d_in,
        selector_hidden,
        embedding_dim,
        rng=substream(config.seed, "init", 0),
    )
    tasknet = TaskNet(
        spec.d_in,
        tasknet_hidden,
        spec.classes,
        rng=substream(config.seed, "init", 1),
        null_trainable=kind != "blank",
    )
    if kind == "tacs":
        return TacsMethod(selector, tasknet, config)
    if kind == "no_context":
        return NoContextMethod(tasknet, config)
    if kind == "random":
        return RandomMethod(tasknet, config)
    if kind == "frozen_sim":
        return FrozenSimilarityMethod(selector.frozen_copy(), tasknet, config)
    if kind == "feat_avg":
        encoder = selector
        if baselines.feat_avg_encoder == "frozen":
            encoder = selector.frozen_copy()
        return FeatureAveragedMethod(encoder, tasknet, config, top_k=baselines.top_k)
    return ControlMethod(kind, tasknet, config, sigma=baselines.noise_sigma)


def _chunks(count, parts):
    bounds = np.linspace(0, count, num=max(1, min(parts, count)) + 1).astype(int)
    return [np.arange(a, b) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]


def evaluate(method, samples, pool, threads=1):
    """Argmax-selection outcomes for every row of ``samples``, in order.

    Query chunks run on up to ``threads`` worker threads over the
    immutable networks; results are gathered back in query order.
    """
    cache = method.prepare(pool)
    chunks = _chunks(len(samples), threads)

    def run(ids):
        return method.evaluate(Batch.take(samples, ids), pool, cache)

    if threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            parts = list(executor.map(run, chunks))
    else:
        parts = [run(ids) for ids in chunks]
    return [outcome for part in parts for outcome in part]


def _batches(order, batch_size, min_size):
    for start in range(0, len(order), batch_size):
        ids = order[start : start + batch_size]
        if len(ids) >= min_size:
            yield ids


def _epoch_record(epoch, losses, metrics):
    if losses:
        l_grad, l_policy, l_total = np.mean(
            [[s.l_grad, s.l_policy, s.l_total] for s in losses], axis=0
        )
    else:
        l_grad = l_policy = l_total = float("nan")
    return EpochRecord(
        epoch=epoch,
        l_grad=float(l_grad),
        l_policy=float(l_policy),
        l_total=float(l_total),
        **metrics.as_dict(),
    )


def train(method, benchmark, config, threads=1, on_epoch=None, config_echo=None):
    """Train ``method`` on ``benchmark`` and evaluate after every epoch.

    Epoch 0 records the losses of an update-free probe pass over the
    training set and the initial evaluation.

    :param on_epoch: Called with the report after every epoch record.
    :returns: A :class:`RunReport`.
    """
    if len(benchmark.train) == 0 or len(benchmark.eval) == 0:
        raise InvalidArgumentError("training and evaluation sets must be non-empty")
    started = time.perf_counter()
    report = RunReport(
        method=method.name,
        seed=config.seed,
        version=__version__,
        config=dict(config_echo or {}),
        dataset=benchmark.describe(),
    )
    train_set, pool = benchmark.train, benchmark.pool
    min_batch = 2 if config.advantage_mode == "standardized" else 1
    streams = training_streams(config.seed)
    step_ids = itertools.count()

    def run_epoch(epoch, order, epoch_streams, update):
        losses = []
        for batch_id, ids in enumerate(_batches(order, config.batch_size, min_batch)):
            _, step = method.train_step(
                Batch.take(train_set, ids),
                pool,
                epoch_streams,
                batch_id=next(step_ids),
                update=update,
            )
            losses.append(step)
            logger.debug(
                "epoch=%d batch=%d l_grad=%r l_policy=%r l_total=%r",
                epoch,
                batch_id,
                step.l_grad,
                step.l_policy,
                step.l_total,
            )
        outcomes = evaluate(method, benchmark.eval, pool, threads)
        metrics = eval_metrics(outcomes, benchmark.eval, benchmark.eval_oracle, pool)
        record = _epoch_record(epoch, losses, metrics)
        logger.info(
            "epoch=%d l_total=%r accuracy=%r oracle_agreement=%r",
            epoch,
            record.l_total,
            record.accuracy,
            record.oracle_agreement,
        )
        report.add_epoch(record)
        report.wall_clock_seconds = time.perf_counter() - started
        if on_epoch is not None:
            on_epoch(report)

    run_epoch(0, np.arange(len(train_set)), probe_streams(config.seed), update=False)
    for epoch in range(1, config.epochs + 1):
        order = streams["shuffle"].permutation(len(train_set))
        run_epoch(epoch, order, streams, update=True)

    report.completed = True
    report.wall_clock_seconds = time.perf_counter() - started
    return report
