# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 tacslab contributors.
#
# tacslab is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Joint training of the selector through two paths.

The differentiable path draws a straight-through Gumbel-Softmax sample
and backpropagates the task loss of the selected pair into both networks.
The policy path samples an action from the noiseless selection
probabilities, rewards it by the task-loss improvement over the null
context (computed without gradient tracking) and applies the
score-function gradient with batch-standardized advantages. Both terms
are summed, ``L = L_grad + lambda * L_policy``, and backpropagated once.
"""

from dataclasses import dataclass

import numpy as np

from ..diffmath import no_grad, ops
from ..errors import (
    EmptyPoolError,
    InvalidArgumentError,
    NumericError,
    ShapeError,
    TacsLabConfigError,
)
from ..nets import (
    embed_pool,
    exclusion_mask,
    score_matrix,
    score_pool,
    select_argmax_rows,
)
from .method import Method, Selection, check_finite, outcomes_from
from .records import StepLosses

ADVANTAGE_MODES = ("standardized", "raw")
ABLATIONS = ("full", "soft_only", "policy_only")
GUMBEL_EPS = 1e-12
ADVANTAGE_EPS = 1e-8
ZERO_STD = 1e-12


@dataclass
class HybridConfig:
    """Trainer hyper-parameters."""

    temperature: float = 0.1
    hybrid_weight: float = 0.5
    epochs: int = 40
    batch_size: int = 16
    lr: float = 0.05
    momentum: float = 0.9
    seed: int = 17
    advantage_mode: str = "standardized"
    ablation: str = "full"

    def validate(self):
        """Raise :class:`TacsLabConfigError` on invalid values."""
        if not self.temperature > 0:
            raise TacsLabConfigError(f"temperature must be > 0, got {self.temperature}")
        if not self.hybrid_weight >= 0:
            raise TacsLabConfigError(
                f"hybrid_weight must be >= 0, got {self.hybrid_weight}"
            )
        if self.seed < 0:
            raise TacsLabConfigError(f"seed must be >= 0, got {self.seed}")
        if self.epochs < 0:
            raise TacsLabConfigError("epochs must be >= 0")
        if not self.lr > 0:
            raise TacsLabConfigError("lr must be > 0")
        if not 0 <= self.momentum < 1:
            raise TacsLabConfigError("momentum must lie in [0, 1)")
        if self.advantage_mode not in ADVANTAGE_MODES:
            raise TacsLabConfigError(
                f"advantage_mode must be one of {ADVANTAGE_MODES}"
            )
        if self.ablation not in ABLATIONS:
            raise TacsLabConfigError(f"ablation must be one of {ABLATIONS}")
        min_batch = 2 if self.advantage_mode == "standardized" else 1
        if self.batch_size < min_batch:
            raise TacsLabConfigError(
                f"batch_size must be >= {min_batch} with "
                f"{self.advantage_mode} advantages"
            )
        return self


def gumbel_from_uniform(u):
    """``-log(-log u)`` with ``u`` clamped into ``[eps, 1 - eps]``."""
    u = np.clip(u, GUMBEL_EPS, 1.0 - GUMBEL_EPS)
    return -np.log(-np.log(u))


def gumbel_noise(rng, shape=None):
    """Standard Gumbel draws; a float when ``shape`` is ``None``."""
    return gumbel_from_uniform(rng.random(shape))


def one_hot(index, size):
    """One-hot rows for an index or an index array."""
    return np.eye(size)[np.asarray(index)]


def gumbel_softmax_select(scores, temperature, rng=None, noise=None):
    """Straight-through Gumbel-Softmax sample over the last axis.

    The forward value is the one-hot of ``argmax(scores + g)``; the
    backward pass is that of ``softmax((scores + g) / temperature)``.

    :param noise: Fixed Gumbel noise; drawn from ``rng`` when ``None``.
    :returns: ``(one_hot_node, index)``.
    """
    if not temperature > 0:
        raise InvalidArgumentError(f"temperature must be > 0, got {temperature}")
    scores = ops.as_node(scores)
    if np.isneginf(scores.value).all(axis=-1).any():
        raise EmptyPoolError("gumbel_softmax_select: every candidate is masked")
    if noise is None:
        noise = gumbel_noise(rng, scores.shape)
    perturbed = ops.add(scores, noise)
    index = np.argmax(perturbed.value, axis=-1)
    soft = ops.softmax(ops.scale(perturbed, 1.0 / temperature))
    hard = one_hot(index, scores.shape[-1])
    if scores.value.ndim == 1:
        index = int(index)
    return ops.straight_through(hard, soft), index


def grad_path_loss(
    selector,
    tasknet,
    x_q,
    pool,
    label,
    temperature,
    rng=None,
    query_group=None,
    noise=None,
):
    """Task loss of the query paired with a straight-through sample."""
    utility = score_pool(selector, x_q, pool, query_group)
    weights, _ = gumbel_softmax_select(utility.node, temperature, rng, noise)
    x_sel = ops.matvec(pool.features.T, weights)
    return tasknet.task_loss(x_q, x_sel, label)


def compute_reward(tasknet, x_q, x_candidate, label):
    """Task-loss improvement of a candidate over the null context."""
    with no_grad():
        baseline = tasknet.task_loss(x_q, None, label).value
        paired = tasknet.task_loss(x_q, x_candidate, label).value
    return float(baseline - paired)


def compute_rewards(tasknet, x_q, x_candidates, labels):
    """Row-wise :func:`compute_reward` for a batch."""
    with no_grad():
        baseline = tasknet.task_loss_rows(x_q, None, labels).value
        paired = tasknet.task_loss_rows(x_q, x_candidates, labels).value
    return baseline - paired


def standardize_advantages(rewards, mode="standardized"):
    """Batch-standardized rewards, or the raw rewards in ``raw`` mode."""
    rewards = np.asarray(rewards, dtype=np.float64)
    if mode == "raw":
        return rewards.copy()
    if mode != "standardized":
        raise TacsLabConfigError(f"advantage_mode must be one of {ADVANTAGE_MODES}")
    if rewards.size < 2:
        raise TacsLabConfigError(
            "standardized advantages need a batch of at least 2 rewards; "
            "use advantage_mode = raw"
        )
    std = rewards.std()
    if std < ZERO_STD:
        return np.zeros_like(rewards)
    return (rewards - rewards.mean()) / (std + ADVANTAGE_EPS)


def policy_loss(scores, actions, advantages):
    """``-(1/B) sum_b log pi(a_b | o_b) A_b`` with ``pi = softmax(scores)``.

    Advantages are constants. ``scores`` is a masked score vector or a
    matrix with one row per query.
    """
    scores = ops.as_node(scores)
    if scores.value.ndim == 1:
        scores = ops.reshape(scores, (1, scores.shape[0]))
    actions = np.atleast_1d(np.asarray(actions, dtype=np.int64))
    advantages = np.atleast_1d(np.asarray(advantages, dtype=np.float64))
    rows = scores.shape[0]
    if actions.shape != (rows,) or advantages.shape != (rows,):
        raise ShapeError("policy_loss", scores.shape, actions.shape, advantages.shape)
    if (actions < 0).any() or (actions >= scores.shape[1]).any():
        raise InvalidArgumentError("policy_loss: action out of range")
    if np.isneginf(scores.value[np.arange(rows), actions]).any():
        raise InvalidArgumentError("policy_loss: action on a masked candidate")
    picked = ops.pick(ops.log_softmax(scores), actions)
    return ops.scale(ops.mean(ops.mul(picked, advantages)), -1.0)


def sample_actions(probabilities, rng):
    """One inverse-CDF draw per row; zero-probability entries are never drawn."""
    p = np.atleast_2d(np.asarray(probabilities, dtype=np.float64))
    cdf = np.cumsum(p, axis=1)
    u = rng.random(p.shape[0]) * cdf[:, -1]
    index = (cdf <= u[:, None]).sum(axis=1)
    last = p.shape[1] - 1 - np.argmax(p[:, ::-1] > 0, axis=1)
    return np.minimum(index, last)


class TacsMethod(Method):
    """The learned selector trained by the hybrid objective."""

    name = "tacs"

    def __init__(self, selector, tasknet, config):
        """Constructor."""
        config.validate()
        super().__init__(tasknet, config, modules=(selector,))
        self.selector = selector

    def scores(self, batch, pool, pool_embeddings=None):
        """Masked score matrix of ``batch`` against ``pool``."""
        if pool_embeddings is None:
            pool_embeddings = self.selector.embed(pool.features)
        mask = exclusion_mask(batch.group_ids, pool.group_ids)
        return score_matrix(self.selector, batch.features, pool_embeddings, mask)

    def train_step(self, batch, pool, streams, batch_id=None, update=True):
        """One joint step.

        :param streams: Mapping with ``gumbel`` and ``policy`` generators.
        :param update: Apply backward and the momentum update.
        :returns: ``(outcomes, StepLosses)``.
        """
        cfg = self.config
        self.zero_grad()
        gumbel_index = actions = rewards = advantages = None
        try:
            scores = self.scores(batch, pool)
            probabilities = ops.softmax(scores).value
            if cfg.ablation == "policy_only":
                chosen = select_argmax_rows(probabilities)
                l_grad = self.tasknet.batch_loss(
                    batch.features, pool.features[chosen], batch.labels
                )
            else:
                weights, gumbel_index = gumbel_softmax_select(
                    scores, cfg.temperature, streams["gumbel"]
                )
                contexts = ops.matmul(weights, pool.features)
                l_grad = self.tasknet.batch_loss(batch.features, contexts, batch.labels)

            if cfg.ablation == "soft_only":
                total, l_policy_value = l_grad, 0.0
            else:
                actions = sample_actions(probabilities, streams["policy"])
                rewards = compute_rewards(
                    self.tasknet, batch.features, pool.features[actions], batch.labels
                )
                advantages = standardize_advantages(rewards, cfg.advantage_mode)
                l_policy = policy_loss(scores, actions, advantages)
                l_policy_value = float(l_policy.value)
                total = ops.add(l_grad, ops.scale(l_policy, cfg.hybrid_weight))
        except NumericError as e:
            raise NumericError(str(e), batch_id=batch_id)

        losses = StepLosses(float(l_grad.value), l_policy_value, float(total.value))
        check_finite(losses, batch_id)
        if update:
            total.backward()
            self.optimizer.step()
        selection = Selection(
            actions=actions, probabilities=probabilities, scores=scores.value
        )
        outcomes = outcomes_from(
            batch,
            selection,
            gumbel_index=gumbel_index,
            rewards=rewards,
            advantages=advantages,
        )
        return outcomes, losses

    def prepare(self, pool):
        """Candidate embeddings, computed once per evaluation."""
        return embed_pool(self.selector, pool)

    def select(self, batch, pool, cache=None):
        """Argmax selection with noiseless probabilities."""
        with no_grad():
            scores = self.scores(batch, pool, cache).value
            probabilities = ops.softmax(scores).value
        actions = select_argmax_rows(probabilities)
        return Selection(
            contexts=pool.features[actions],
            actions=actions,
            probabilities=probabilities,
            scores=scores,
        )
