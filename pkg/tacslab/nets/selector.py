# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 tacslab contributors.
#
# tacslab is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Selector network: embeddings, utility scores and argmax selection."""

from dataclasses import dataclass

import numpy as np

from ..diffmath import no_grad, ops
from ..errors import EmptyPoolError, ShapeError
from .module import Dense, Module


class SelectorNet(Module):
    """Two-layer tanh encoder shared by queries and candidates."""

    def __init__(self, d_in, hidden, dim, rng=None, trainable=True, prefix="selector"):
        """Constructor.

        :param rng: Initialization generator; ``None`` gives zero weights.
        :param trainable: ``False`` builds a frozen encoder.
        """
        super().__init__()
        self.d_in = d_in
        self.hidden = hidden
        self.dim = dim
        self.prefix = prefix
        self.l1 = Dense(self, f"{prefix}.l1", d_in, hidden, rng, trainable)
        self.l2 = Dense(self, f"{prefix}.l2", hidden, dim, rng, trainable)

    def embed(self, x):
        """Embed one feature vector, or every row of a matrix."""
        x = ops.as_node(x)
        if x.shape[-1] != self.d_in:
            raise ShapeError("embed", x.shape, (self.d_in,))
        return self.l2(ops.tanh(self.l1(x)))

    def frozen_copy(self):
        """Untrainable snapshot of the current weights."""
        frozen = SelectorNet(
            self.d_in, self.hidden, self.dim, trainable=False, prefix=self.prefix
        )
        frozen.load_state(self.state())
        return frozen


@dataclass
class UtilityScores:
    """Masked utility scores of one query over a pool."""

    scores: np.ndarray
    probabilities: np.ndarray
    pool_version: str = None
    node: object = None


def score(z_q, z_c):
    """Utility score ``<z_q, z_c>``."""
    return ops.dot(z_q, z_c)


def exclusion_mask(query_groups, candidate_groups):
    """Boolean (queries x candidates) mask of shared group ids."""
    query_groups = np.atleast_1d(np.asarray(query_groups))
    candidate_groups = np.asarray(candidate_groups)
    return query_groups[:, None] == candidate_groups[None, :]


def score_pool(net, x_q, pool, query_group=None):
    """Score ``x_q`` against every candidate, masking its own group."""
    if len(pool) == 0:
        raise EmptyPoolError("score_pool: empty candidate pool")
    z_q = net.embed(x_q)
    z_c = net.embed(pool.features)
    scores = ops.matvec(z_c, z_q)
    if query_group is not None:
        scores = ops.mask_fill(scores, exclusion_mask(query_group, pool.group_ids)[0])
    probabilities = ops.softmax(scores).value
    return UtilityScores(
        scores=scores.value,
        probabilities=probabilities,
        pool_version=pool.pool_version,
        node=scores,
    )


def score_matrix(net, x_q, pool_embeddings, mask=None):
    """Masked score matrix of a query batch against embedded candidates."""
    z_q = net.embed(x_q)
    scores = ops.matmul(z_q, ops.transpose(pool_embeddings))
    if mask is not None:
        scores = ops.mask_fill(scores, mask)
    return scores


def embed_pool(net, pool):
    """Untracked candidate embeddings, computed once per evaluation."""
    with no_grad():
        return net.embed(pool.features)


def select_argmax(u):
    """Lowest index attaining the maximum probability."""
    probabilities = u.probabilities if isinstance(u, UtilityScores) else u
    return int(np.argmax(probabilities))


def select_argmax_rows(probabilities):
    """Row-wise :func:`select_argmax`."""
    return np.argmax(np.asarray(probabilities), axis=-1)
