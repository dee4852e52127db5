# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 tacslab contributors.
#
# tacslab is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Selector and downstream networks."""

from .module import Dense, Module
from .optimizer import MomentumSGD
from .selector import (
    SelectorNet,
    UtilityScores,
    embed_pool,
    exclusion_mask,
    score,
    score_matrix,
    score_pool,
    select_argmax,
    select_argmax_rows,
)
from .tasknet import TaskNet

__all__ = (
    "Dense",
    "Module",
    "MomentumSGD",
    "SelectorNet",
    "TaskNet",
    "UtilityScores",
    "embed_pool",
    "exclusion_mask",
    "score",
    "score_matrix",
    "score_pool",
    "select_argmax",
    "select_argmax_rows",
)
