# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 tacslab contributors.
#
# tacslab is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Selector network tests."""

import numpy as np
import pytest

from tacslab.diffmath import gradcheck, ops
from tacslab.errors import EmptyPoolError, ShapeError
from tacslab.nets import (
    SelectorNet,
    UtilityScores,
    exclusion_mask,
    score,
    score_pool,
    select_argmax,
)


def _identity_net(dim):
    net = SelectorNet(dim, dim, dim)
    net.l1.weight.value[...] = np.eye(dim)
    net.l2.weight.value[...] = np.eye(dim)
    return net


def test_zero_weights_embed_to_zero():
    net = SelectorNet(4, 3, 2)
    out = net.embed(np.array([1.0, -2.0, 0.5, 3.0]))
    assert np.array_equal(out.value, np.zeros(2))


def test_identity_weights_embed_to_tanh():
    net = _identity_net(3)
    x = np.array([0.3, -1.2, 2.0])
    assert np.allclose(net.embed(x).value, np.tanh(x), atol=1e-15)


def test_embed_rows_match_single_embeddings(rng):
    net = SelectorNet(5, 4, 3, rng=rng)
    x = rng.normal(size=(6, 5))
    rows = net.embed(x).value
    for i in range(6):
        assert np.allclose(rows[i], net.embed(x[i]).value, atol=1e-14)


def test_embed_rejects_wrong_dimension(rng):
    net = SelectorNet(5, 4, 3, rng=rng)
    with pytest.raises(ShapeError):
        net.embed(np.zeros(4))


def test_embed_gradients(rng):
    net = SelectorNet(4, 5, 3, rng=rng)
    x = rng.normal(size=4)
    weights = rng.normal(size=3)
    report = gradcheck(
        lambda: ops.sum_(ops.mul(net.embed(x), weights)), net.parameters()
    )
    assert report.passed, str(report)


def test_initialization_bounds(rng):
    net = SelectorNet(16, 8, 4, rng=rng)
    assert np.abs(net.l1.weight.value).max() <= 1.0 / np.sqrt(16)
    assert np.abs(net.l2.weight.value).max() <= 1.0 / np.sqrt(8)
    assert not net.l1.bias.value.any()


def test_frozen_copy_is_an_untrainable_snapshot(rng):
    net = SelectorNet(4, 3, 2, rng=rng)
    frozen = net.frozen_copy()
    assert frozen.trainable_parameters() == []
    for name, value in net.state().items():
        assert np.array_equal(frozen.state()[name], value)
    net.l1.weight.value[...] += 1.0
    assert not np.array_equal(
        frozen.state()["selector.l1.weight"], net.state()["selector.l1.weight"]
    )


@pytest.mark.parametrize(
    "z_q,z_c,expected",
    [
        ([1.0, 0.0], [1.0, 0.0], 1.0),
        ([1.0, 0.0], [0.0, 1.0], 0.0),
        ([1.0, 2.0], [3.0, -1.0], 1.0),
    ],
)
def test_score(z_q, z_c, expected):
    assert float(score(np.array(z_q), np.array(z_c)).value) == expected


def test_score_pool_singleton(rng, make_pool):
    net = SelectorNet(3, 4, 2, rng=rng)
    utility = score_pool(net, rng.normal(size=3), make_pool(rng.normal(size=(1, 3))))
    assert np.array_equal(utility.probabilities, [1.0])


def test_score_pool_zero_weights_is_uniform(make_pool):
    net = SelectorNet(3, 4, 2)
    utility = score_pool(net, np.ones(3), make_pool(np.eye(3)))
    assert np.allclose(utility.probabilities, 1.0 / 3.0)


def test_score_pool_matches_hand_computed_softmax(make_pool):
    net = _identity_net(2)
    x_q = np.array([0.5, -1.0])
    candidates = np.array([[1.0, 0.0], [0.0, 1.0], [-0.5, 2.0]])
    utility = score_pool(net, x_q, make_pool(candidates))
    dots = np.tanh(candidates) @ np.tanh(x_q)
    expected = np.exp(dots) / np.exp(dots).sum()
    assert np.allclose(utility.scores, dots, atol=1e-14)
    assert np.allclose(utility.probabilities, expected, atol=1e-14)


def test_score_pool_masks_the_query_group(rng, make_pool):
    net = SelectorNet(3, 4, 2, rng=rng)
    pool = make_pool(rng.normal(size=(3, 3)), group_ids=[5, 6, 5])
    utility = score_pool(net, rng.normal(size=3), pool, query_group=5)
    assert np.isneginf(utility.scores[[0, 2]]).all()
    assert np.array_equal(utility.probabilities, [0.0, 1.0, 0.0])
    assert select_argmax(utility) == 1


def test_score_pool_is_permutation_equivariant(rng, make_pool):
    net = SelectorNet(4, 5, 3, rng=rng)
    features = rng.normal(size=(6, 4))
    x_q = rng.normal(size=4)
    perm = rng.permutation(6)
    base = score_pool(net, x_q, make_pool(features))
    permuted = score_pool(net, x_q, make_pool(features[perm]))
    assert np.allclose(permuted.scores, base.scores[perm], atol=1e-14)
    assert perm[select_argmax(permuted)] == select_argmax(base)


def test_frozen_scores_are_bit_identical(rng, make_pool):
    frozen = SelectorNet(4, 5, 3, rng=rng).frozen_copy()
    pool = make_pool(rng.normal(size=(5, 4)))
    x_q = rng.normal(size=4)
    first = score_pool(frozen, x_q, pool)
    second = score_pool(frozen, x_q, pool)
    assert np.array_equal(first.scores, second.scores)
    assert first.pool_version == pool.pool_version


def test_score_pool_empty_pool(make_pool):
    net = SelectorNet(3, 4, 2)
    with pytest.raises(EmptyPoolError):
        score_pool(net, np.ones(3), make_pool(np.zeros((0, 3))))


def test_exclusion_mask():
    mask = exclusion_mask([1, 2], [2, 3, 1])
    assert mask.tolist() == [[False, False, True], [True, False, False]]


@pytest.mark.parametrize(
    "probabilities,expected",
    [([0.2, 0.5, 0.3], 1), ([0.5, 0.5], 0), ([0.25, 0.25, 0.25, 0.25], 0)],
)
def test_select_argmax(probabilities, expected):
    assert select_argmax(np.array(probabilities)) == expected


def test_select_argmax_is_shift_invariant(rng):
    scores = rng.normal(size=7)
    shifted = ops.softmax(scores + 123.0).value
    utility = UtilityScores(scores=scores, probabilities=ops.softmax(scores).value)
    assert select_argmax(utility) == select_argmax(shifted)
