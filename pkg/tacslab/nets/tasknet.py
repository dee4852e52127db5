# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 tacslab contributors.
#
# tacslab is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Pairwise downstream classifier over ``[x_q ; x_ctx]``."""

import numpy as np

from ..diffmath import ops
from ..errors import ShapeError
from .module import Dense, Module


class TaskNet(Module):
    """Tanh perceptron with a learned null-context vector.

    The null vector stands in for "no context"; it starts at zero and is
    frozen there when ``null_trainable`` is false.
    """

    def __init__(self, d_in, hidden, classes, rng=None, null_trainable=True):
        """Constructor."""
        super().__init__()
        self.d_in = d_in
        self.hidden = hidden
        self.classes = classes
        self.l1 = Dense(self, "tasknet.l1", 2 * d_in, hidden, rng)
        self.l2 = Dense(self, "tasknet.l2", hidden, classes, rng)
        self.null_context = self.add_parameter(
            "tasknet.null_context", np.zeros(d_in), trainable=null_trainable
        )

    def _check(self, x_q, x_ctx):
        if x_q.shape[-1] != self.d_in or x_ctx.shape != x_q.shape:
            raise ShapeError("forward_pair", x_q.shape, x_ctx.shape)

    def forward_pair(self, x_q, x_ctx):
        """Class logits for a query and its context.

        Accepts vectors, or matrices holding one pair per row.
        """
        x_q, x_ctx = ops.as_node(x_q), ops.as_node(x_ctx)
        self._check(x_q, x_ctx)
        return self.l2(ops.tanh(self.l1(ops.concat([x_q, x_ctx]))))

    def null_batch(self, rows):
        """The null vector repeated ``rows`` times."""
        return ops.tile_rows(self.null_context.node, rows)

    def forward_noctx(self, x_q):
        """Class logits with the null context."""
        x_q = ops.as_node(x_q)
        if x_q.value.ndim == 2:
            return self.forward_pair(x_q, self.null_batch(x_q.shape[0]))
        return self.forward_pair(x_q, self.null_context.node)

    def task_loss(self, x_q, x_ctx, label):
        """Cross-entropy of one pair; ``x_ctx=None`` uses the null context."""
        if x_ctx is None:
            logits = self.forward_noctx(x_q)
        else:
            logits = self.forward_pair(x_q, x_ctx)
        return ops.cross_entropy(logits, label)

    def task_loss_rows(self, x_q, x_ctx, labels):
        """Per-row cross-entropy of a batch of pairs."""
        if x_ctx is None:
            logits = self.forward_noctx(x_q)
        else:
            logits = self.forward_pair(x_q, x_ctx)
        return ops.cross_entropy_rows(logits, labels)

    def batch_loss(self, x_q, x_ctx, labels):
        """Mean cross-entropy of a batch of pairs."""
        return ops.mean(self.task_loss_rows(x_q, x_ctx, labels))
