# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 tacslab contributors.
#
# tacslab is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Parameter containers and the dense layer shared by both networks."""

from collections import OrderedDict

import numpy as np

from ..diffmath import Parameter, ops
from ..errors import ShapeError


class Module(object):
    """Owner of an ordered set of uniquely named parameters."""

    def __init__(self):
        """Constructor."""
        self._parameters = OrderedDict()

    def add_parameter(self, name, value, trainable=True):
        """Register a new parameter and return it."""
        if name in self._parameters:
            raise ValueError(f"duplicate parameter name: {name}")
        param = Parameter(name, value, trainable=trainable)
        self._parameters[name] = param
        return param

    def parameters(self):
        """Parameters in registration order."""
        return list(self._parameters.values())

    def trainable_parameters(self):
        """Parameters that receive gradient updates."""
        return [p for p in self._parameters.values() if p.trainable]

    def zero_grad(self):
        """Reset every gradient accumulator."""
        for p in self._parameters.values():
            p.zero_grad()

    def state(self):
        """Copy of every parameter value, keyed by name."""
        return OrderedDict(
            (name, p.value.copy()) for name, p in self._parameters.items()
        )

    def load_state(self, state):
        """Overwrite parameter values in place from ``state``."""
        missing = set(self._parameters) - set(state)
        unknown = set(state) - set(self._parameters)
        if missing or unknown:
            raise KeyError(
                f"state mismatch: missing {sorted(missing)}, unknown {sorted(unknown)}"
            )
        for name, value in state.items():
            param = self._parameters[name]
            value = np.asarray(value, dtype=np.float64)
            if list(value.shape) != param.shape:
                raise ShapeError(f"load_state {name}", tuple(param.shape), value.shape)
            param.value[...] = value


class Dense(object):
    """Affine map ``W x + b`` with ``W`` of shape (out, in)."""

    def __init__(self, module, prefix, fan_in, fan_out, rng=None, trainable=True):
        """Constructor.

        :param module: The :class:`Module` that owns the parameters.
        :param rng: Generator for uniform(-1/sqrt(fan_in), 1/sqrt(fan_in))
            weights; zero weights when ``None``.
        """
        if rng is None:
            weight = np.zeros((fan_out, fan_in))
        else:
            bound = 1.0 / np.sqrt(fan_in)
            weight = rng.uniform(-bound, bound, size=(fan_out, fan_in))
        self.fan_in = fan_in
        self.fan_out = fan_out
        self.weight = module.add_parameter(f"{prefix}.weight", weight, trainable)
        self.bias = module.add_parameter(f"{prefix}.bias", np.zeros(fan_out), trainable)

    def __call__(self, x):
        """Apply to a vector, or row-wise to a matrix."""
        x = ops.as_node(x)
        if x.value.ndim == 1:
            return ops.add(ops.matvec(self.weight.node, x), self.bias.node)
        if x.value.ndim != 2 or x.shape[1] != self.fan_in:
            raise ShapeError("dense", tuple(self.weight.shape), x.shape)
        return ops.add(
            ops.matmul(x, ops.transpose(self.weight.node)), self.bias.node
        )
