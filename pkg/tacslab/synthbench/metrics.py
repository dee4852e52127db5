# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 tacslab contributors.
#
# tacslab is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Accuracy and selection-behavior metrics."""

from dataclasses import asdict, dataclass

import numpy as np

from ..errors import InvalidArgumentError


@dataclass
class MetricsRecord:
    """Evaluation metrics; selection statistics are ``None`` without selections."""

    accuracy: float
    mean_class_accuracy: float
    oracle_agreement: float = None
    cross_class_rate: float = None
    mean_entropy: float = None

    def as_dict(self):
        """Plain dict."""
        return asdict(self)


def entropy(probabilities):
    """Row-wise entropy in nats, with ``0 log 0 = 0``."""
    p = np.asarray(probabilities, dtype=np.float64)
    logs = np.log(np.where(p > 0, p, 1.0))
    return -(p * logs).sum(axis=-1)


def mean_class_accuracy(predictions, labels):
    """Mean over present classes of the per-class accuracy."""
    predictions = np.asarray(predictions)
    labels = np.asarray(labels)
    per_class = [
        np.mean(predictions[labels == c] == c) for c in np.unique(labels)
    ]
    return float(np.mean(per_class))


def eval_metrics(outcomes, eval_set, oracle, pool):
    """Metrics of per-query outcomes over ``eval_set``.

    :param outcomes: Objects with ``query_id``, ``prediction``, ``action``
        (``None`` when no candidate was selected) and ``probabilities``.
    :param oracle: Pool index of the most helpful candidate per query.
    """
    by_query = {o.query_id: o for o in outcomes}
    missing = set(range(len(eval_set))) - set(by_query)
    if missing:
        raise InvalidArgumentError(
            f"outcomes missing for {len(missing)} evaluation queries"
        )
    ordered = [by_query[q] for q in range(len(eval_set))]
    labels = eval_set.labels
    predictions = np.array([o.prediction for o in ordered])
    record = MetricsRecord(
        accuracy=float(np.mean(predictions == labels)),
        mean_class_accuracy=mean_class_accuracy(predictions, labels),
    )

    if all(o.action is not None for o in ordered):
        actions = np.array([o.action for o in ordered], dtype=np.int64)
        record.oracle_agreement = float(np.mean(actions == np.asarray(oracle)))
        record.cross_class_rate = float(np.mean(pool.labels[actions] != labels))
    if all(o.probabilities is not None for o in ordered):
        record.mean_entropy = float(
            np.mean([entropy(o.probabilities) for o in ordered])
        )
    return record
