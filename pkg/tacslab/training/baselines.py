# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 tacslab contributors.
#
# tacslab is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Comparison retrieval strategies and context controls."""

from dataclasses import dataclass

import numpy as np

from ..diffmath import no_grad, ops
from ..errors import EmptyPoolError, InvalidArgumentError, TacsLabConfigError
from ..helpers.seeding import substream
from ..nets import embed_pool, exclusion_mask, score_matrix, score_pool
from .method import Method, Selection

BASELINES = (
    "no_context",
    "random",
    "frozen_sim",
    "feat_avg",
    "blank",
    "duplicate",
    "noisy",
)
KIND_ALIASES = {"frozen_similarity": "frozen_sim", "feature_averaged": "feat_avg"}
CONTROLS = ("blank", "duplicate", "noisy")
ENCODERS = ("learned", "frozen")


@dataclass
class BaselineConfig:
    """Baseline knobs."""

    top_k: int = 5
    feat_avg_encoder: str = "learned"
    noise_sigma: float = 0.1

    def validate(self):
        """Raise :class:`TacsLabConfigError` on invalid values."""
        if self.top_k < 1:
            raise TacsLabConfigError("top_k must be >= 1")
        if self.feat_avg_encoder not in ENCODERS:
            raise TacsLabConfigError(f"feat_avg_encoder must be one of {ENCODERS}")
        if not self.noise_sigma >= 0:
            raise TacsLabConfigError("noise_sigma must be >= 0")
        return self


def canonical_kind(kind):
    """Map long baseline names onto CLI tags."""
    kind = KIND_ALIASES.get(kind, kind)
    if kind not in BASELINES:
        raise InvalidArgumentError(f"unknown baseline {kind!r}")
    return kind


def retrieve_random(pool, rng, query_group=None):
    """Uniform draw over the candidates not sharing ``query_group``."""
    allowed = np.arange(len(pool))
    if query_group is not None:
        allowed = allowed[pool.group_ids != query_group]
    if len(allowed) == 0:
        raise EmptyPoolError("retrieve_random: no candidate left after exclusion")
    return int(allowed[rng.integers(len(allowed))])


def retrieve_frozen_similarity(frozen, x_q, pool, query_group=None):
    """Highest inner product in the frozen embedding space, lowest index on ties."""
    with no_grad():
        utility = score_pool(frozen, x_q, pool, query_group)
    return int(np.argmax(utility.scores))


def top_k_mask(scores, k):
    """Mask (``True`` = dropped) keeping the ``k`` best unmasked entries per row."""
    scores = np.asarray(scores)
    available = (~np.isneginf(scores)).sum(axis=-1)
    if k < 1 or (k > available).any():
        raise InvalidArgumentError(
            f"top-k size {k} outside [1, {int(np.min(available))}]"
        )
    order = np.argsort(-scores, axis=-1, kind="stable")
    keep = np.zeros(scores.shape, dtype=bool)
    np.put_along_axis(keep, order[..., :k], True, axis=-1)
    return ~keep


def feature_averaged_weights(scores, k):
    """Softmax weights renormalized over the top-``k`` scores."""
    scores = ops.as_node(scores)
    return ops.softmax(ops.mask_fill(scores, top_k_mask(scores.value, k)))


def build_feature_averaged_context(encoder, x_q, pool, k, query_group=None):
    """Weighted average of the top-``k`` candidates' feature vectors."""
    utility = score_pool(encoder, x_q, pool, query_group)
    weights = feature_averaged_weights(utility.node, k)
    return ops.matvec(pool.features.T, weights)


def make_control_context(kind, x_q, rng=None, sigma=0.1):
    """Blank, duplicated or noisy copy of the query as its own context."""
    x_q = np.asarray(x_q, dtype=np.float64)
    if kind == "blank":
        return np.zeros_like(x_q)
    if kind == "duplicate":
        return x_q.copy()
    if kind == "noisy":
        return x_q + sigma * rng.standard_normal(x_q.shape)
    raise InvalidArgumentError(f"unknown control context {kind!r}")


def _uniform_rows(mask):
    allowed = (~mask).astype(np.float64)
    return allowed / allowed.sum(axis=1, keepdims=True)


class NoContextMethod(Method):
    """Task network trained and evaluated with the null context only."""

    name = "no_context"


class RandomMethod(Method):
    """A uniformly random unmasked candidate per query."""

    name = "random"

    def _draw(self, batch, pool, rngs):
        mask = exclusion_mask(batch.group_ids, pool.group_ids)
        actions = np.array(
            [
                retrieve_random(pool, rng, group)
                for rng, group in zip(rngs, batch.group_ids)
            ],
            dtype=np.int64,
        )
        return Selection(
            contexts=pool.features[actions],
            actions=actions,
            probabilities=_uniform_rows(mask),
        )

    def training_contexts(self, batch, pool, streams):
        """Draws from the shared retrieval stream."""
        selection = self._draw(batch, pool, [streams["retrieval"]] * len(batch))
        return selection.contexts, selection

    def select(self, batch, pool, cache=None):
        """Draws from per-query substreams."""
        rngs = [substream(self.config.seed, "retrieval", q) for q in batch.ids]
        return self._draw(batch, pool, rngs)


class FrozenSimilarityMethod(Method):
    """Nearest candidate in a fixed, task-unaware embedding space."""

    name = "frozen_sim"

    def __init__(self, frozen, tasknet, config):
        """Constructor."""
        super().__init__(tasknet, config)
        self.frozen = frozen
        self._pool_version = None
        self._pool_embeddings = None

    def prepare(self, pool):
        """Frozen embeddings never change; computed once per pool."""
        if self._pool_version != pool.pool_version:
            self._pool_embeddings = embed_pool(self.frozen, pool)
            self._pool_version = pool.pool_version
        return self._pool_embeddings

    def select(self, batch, pool, cache=None):
        """Argmax of frozen similarity."""
        if cache is None:
            cache = self.prepare(pool)
        mask = exclusion_mask(batch.group_ids, pool.group_ids)
        with no_grad():
            scores = score_matrix(self.frozen, batch.features, cache, mask).value
            probabilities = ops.softmax(scores).value
        actions = np.argmax(scores, axis=1)
        return Selection(
            contexts=pool.features[actions],
            actions=actions,
            probabilities=probabilities,
            scores=scores,
        )

    def training_contexts(self, batch, pool, streams):
        """Same selection as in evaluation."""
        selection = self.select(batch, pool)
        return selection.contexts, selection


class FeatureAveragedMethod(Method):
    """Soft aggregation of the top-k candidates, trained without reinforcement."""

    name = "feat_avg"

    def __init__(self, encoder, tasknet, config, top_k=5):
        """Constructor.

        :param encoder: Selector network; its parameters are trained when it
            is trainable.
        """
        modules = (encoder,) if encoder.trainable_parameters() else ()
        super().__init__(tasknet, config, modules=modules)
        self.encoder = encoder
        self.top_k = top_k

    def _weights(self, batch, pool, pool_embeddings=None):
        if pool_embeddings is None:
            pool_embeddings = self.encoder.embed(pool.features)
        mask = exclusion_mask(batch.group_ids, pool.group_ids)
        scores = score_matrix(self.encoder, batch.features, pool_embeddings, mask)
        return scores, feature_averaged_weights(scores, self.top_k)

    def training_contexts(self, batch, pool, streams):
        """Differentiable weighted contexts."""
        scores, weights = self._weights(batch, pool)
        selection = Selection(
            actions=np.argmax(weights.value, axis=1),
            probabilities=weights.value,
            scores=scores.value,
        )
        return ops.matmul(weights, pool.features), selection

    def prepare(self, pool):
        """Candidate embeddings for one evaluation."""
        return embed_pool(self.encoder, pool)

    def select(self, batch, pool, cache=None):
        """Untracked weighted contexts; the top weight is the reported action."""
        with no_grad():
            scores, weights = self._weights(batch, pool, cache)
        return Selection(
            contexts=weights.value @ pool.features,
            actions=np.argmax(weights.value, axis=1),
            probabilities=weights.value,
            scores=scores.value,
        )


class ControlMethod(Method):
    """The query itself, blanked, duplicated or noised, as context."""

    def __init__(self, kind, tasknet, config, sigma=0.1):
        """Constructor."""
        if kind not in CONTROLS:
            raise InvalidArgumentError(f"unknown control context {kind!r}")
        super().__init__(tasknet, config)
        self.kind = kind
        self.name = kind
        self.sigma = sigma

    def training_contexts(self, batch, pool, streams):
        """Controls drawn from the shared control stream."""
        contexts = make_control_context(
            self.kind, batch.features, streams["control"], self.sigma
        )
        return contexts, Selection(contexts=contexts)

    def select(self, batch, pool, cache=None):
        """Controls drawn from per-query substreams."""
        rows = [
            make_control_context(
                self.kind,
                x,
                substream(self.config.seed, "control", q),
                self.sigma,
            )
            for q, x in zip(batch.ids, batch.features)
        ]
        return Selection(contexts=np.array(rows).reshape(batch.features.shape))
