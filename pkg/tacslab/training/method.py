# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 tacslab contributors.
#
# tacslab is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Shared shape of every trainable method (the learned selector and baselines)."""

from dataclasses import dataclass

import numpy as np

from ..diffmath import no_grad
from ..errors import NumericError
from ..nets import MomentumSGD
from .records import SelectionOutcome, StepLosses


@dataclass
class Batch:
    """Rows of a sample set, with their ids in that set."""

    ids: np.ndarray
    features: np.ndarray
    labels: np.ndarray
    group_ids: np.ndarray

    @classmethod
    def take(cls, samples, ids):
        """Gather ``ids`` from ``samples``."""
        ids = np.asarray(ids, dtype=np.int64)
        return cls(
            ids=ids,
            features=samples.features[ids],
            labels=samples.labels[ids],
            group_ids=samples.group_ids[ids],
        )

    def __len__(self):
        """Number of rows."""
        return len(self.ids)


@dataclass
class Selection:
    """Contexts chosen for a batch; ``contexts=None`` means the null context."""

    contexts: np.ndarray = None
    actions: np.ndarray = None
    probabilities: np.ndarray = None
    scores: np.ndarray = None


class Method(object):
    """Trains the task network on contexts chosen by some strategy.

    Subclasses override :meth:`training_contexts` and :meth:`select`; the
    learned selector also overrides :meth:`train_step`.
    """

    name = None

    def __init__(self, tasknet, config, modules=()):
        """Constructor.

        :param modules: Further networks whose parameters are optimized.
        """
        self.tasknet = tasknet
        self.config = config
        params = list(tasknet.parameters())
        for module in modules:
            params.extend(module.parameters())
        self.optimizer = MomentumSGD(params, lr=config.lr, momentum=config.momentum)

    def zero_grad(self):
        """Reset every gradient the optimizer manages."""
        self.optimizer.zero_grad()

    def prepare(self, pool):
        """Per-evaluation cache, computed once before queries are split."""
        return None

    def training_contexts(self, batch, pool, streams):
        """Contexts (array or node) and selection used in a training step."""
        return None, Selection()

    def select(self, batch, pool, cache=None):
        """Untracked evaluation-time selection."""
        return Selection()

    def predict(self, batch, selection):
        """Predicted classes for ``batch`` under ``selection``."""
        with no_grad():
            if selection.contexts is None:
                logits = self.tasknet.forward_noctx(batch.features)
            else:
                logits = self.tasknet.forward_pair(batch.features, selection.contexts)
        return np.argmax(logits.value, axis=1)

    def evaluate(self, batch, pool, cache=None):
        """Outcomes of argmax selection on ``batch``."""
        selection = self.select(batch, pool, cache)
        predictions = self.predict(batch, selection)
        return outcomes_from(batch, selection, predictions=predictions)

    def train_step(self, batch, pool, streams, batch_id=None, update=True):
        """One task-loss step on the strategy's contexts."""
        self.zero_grad()
        try:
            contexts, selection = self.training_contexts(batch, pool, streams)
            loss = self.tasknet.batch_loss(batch.features, contexts, batch.labels)
        except NumericError as e:
            raise NumericError(str(e), batch_id=batch_id)
        losses = StepLosses(float(loss.value), 0.0, float(loss.value))
        check_finite(losses, batch_id)
        if update:
            loss.backward()
            self.optimizer.step()
        return outcomes_from(batch, selection), losses


def check_finite(losses, batch_id):
    """Abort on a non-finite loss component."""
    values = (losses.l_grad, losses.l_policy, losses.l_total)
    if not np.all(np.isfinite(values)):
        raise NumericError(f"non-finite loss {values}", batch_id=batch_id)


def _row(array, b):
    return None if array is None else array[b]


def _scalar(array, b, kind):
    return None if array is None else kind(array[b])


def outcomes_from(batch, selection, predictions=None, **per_row):
    """One :class:`SelectionOutcome` per batch row."""
    outcomes = []
    for b, query_id in enumerate(batch.ids):
        outcomes.append(
            SelectionOutcome(
                query_id=int(query_id),
                scores=_row(selection.scores, b),
                probabilities=_row(selection.probabilities, b),
                action=_scalar(selection.actions, b, int),
                gumbel_index=_scalar(per_row.get("gumbel_index"), b, int),
                reward=_scalar(per_row.get("rewards"), b, float),
                advantage=_scalar(per_row.get("advantages"), b, float),
                prediction=_scalar(predictions, b, int),
            )
        )
    return outcomes
