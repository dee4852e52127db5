# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 tacslab contributors.
#
# tacslab is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Gradient descent with momentum."""

import numpy as np


class MomentumSGD(object):
    """``v <- mu v + g``, ``theta <- theta - lr v`` on trainable parameters."""

    def __init__(self, parameters, lr=0.05, momentum=0.9):
        """Constructor."""
        self.parameters = [p for p in parameters if p.trainable]
        self.lr = lr
        self.momentum = momentum
        self.velocity = {p.name: np.zeros_like(p.value) for p in self.parameters}

    def zero_grad(self):
        """Reset gradients of every managed parameter."""
        for p in self.parameters:
            p.zero_grad()

    def step(self):
        """Apply one update in place."""
        for p in self.parameters:
            v = self.velocity[p.name]
            v *= self.momentum
            v += p.grad
            p.value[...] -= self.lr * v
