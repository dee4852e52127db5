# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 tacslab contributors.
#
# tacslab is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Hybrid selector training, baselines and the epoch loop."""

from .baselines import (
    BASELINES,
    BaselineConfig,
    build_feature_averaged_context,
    make_control_context,
    retrieve_frozen_similarity,
    retrieve_random,
)
from .checks import CHECKS, CheckResult, run_checks
from .hybrid import (
    ABLATIONS,
    ADVANTAGE_MODES,
    HybridConfig,
    TacsMethod,
    compute_reward,
    grad_path_loss,
    gumbel_noise,
    gumbel_softmax_select,
    policy_loss,
    standardize_advantages,
)
from .loop import METHODS, build_method, evaluate, train
from .method import Batch, Method, Selection
from .records import EpochRecord, RunReport, SelectionOutcome, StepLosses

__all__ = (
    "ABLATIONS",
    "ADVANTAGE_MODES",
    "BASELINES",
    "Batch",
    "BaselineConfig",
    "CHECKS",
    "CheckResult",
    "EpochRecord",
    "HybridConfig",
    "METHODS",
    "Method",
    "RunReport",
    "Selection",
    "SelectionOutcome",
    "StepLosses",
    "TacsMethod",
    "build_feature_averaged_context",
    "build_method",
    "compute_reward",
    "evaluate",
    "grad_path_loss",
    "gumbel_noise",
    "gumbel_softmax_select",
    "make_control_context",
    "policy_loss",
    "retrieve_frozen_similarity",
    "retrieve_random",
    "run_checks",
    "standardize_advantages",
    "train",
)
