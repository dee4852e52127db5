# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 tacslab contributors.
#
# tacslab is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Reverse-mode differentiable math in double precision."""

from .gradcheck import (
    GradcheckReport,
    check_operation,
    compare_gradients,
    gradcheck,
    numeric_gradient,
    relative_error,
)
from .node import Node, Parameter, backward, is_grad_enabled, no_grad
from .ops import (
    add,
    concat,
    constant,
    cross_entropy,
    cross_entropy_rows,
    dot,
    log_softmax,
    mask_fill,
    matmul,
    matvec,
    mean,
    mul,
    pick,
    reshape,
    scale,
    softmax,
    straight_through,
    sub,
    sum_,
    take_rows,
    tanh,
    tile_rows,
    transpose,
)

__all__ = (
    "GradcheckReport",
    "Node",
    "Parameter",
    "add",
    "backward",
    "check_operation",
    "compare_gradients",
    "concat",
    "constant",
    "cross_entropy",
    "cross_entropy_rows",
    "dot",
    "gradcheck",
    "is_grad_enabled",
    "log_softmax",
    "mask_fill",
    "matmul",
    "matvec",
    "mean",
    "mul",
    "no_grad",
    "numeric_gradient",
    "pick",
    "relative_error",
    "reshape",
    "scale",
    "softmax",
    "straight_through",
    "sub",
    "sum_",
    "take_rows",
    "tanh",
    "tile_rows",
    "transpose",
)
