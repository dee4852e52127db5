# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 tacslab contributors.
#
# tacslab is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Verification check tests."""

import numpy as np
import pytest

from tacslab.diffmath import ops as ops_module
from tacslab.training import checks


@pytest.mark.parametrize(
    "check",
    [
        checks.check_straight_through,
        checks.check_gumbel_law,
        checks.check_estimator_bias,
        checks.check_detachment,
        checks.check_standardization,
    ],
)
def test_check_passes(check):
    result = check(17)
    assert result.passed, str(result)


def test_gradient_checks_pass():
    results = checks.check_gradients(17)
    names = [r.name for r in results]
    assert "gradcheck softmax" in names
    assert names[-1] == "gradcheck selector+tasknet"
    failed = [str(r) for r in results if not r.passed]
    assert not failed


def test_corrupted_softmax_backward_fails_by_name(monkeypatch):
    monkeypatch.setattr(ops_module, "_softmax_backward", lambda p, g: p * g)
    results = checks.check_gradients(17, instances=2)
    failed = {r.name for r in results if not r.passed}
    assert "gradcheck softmax" in failed
    assert "gradcheck matvec" not in failed


def test_fixed_seed_gives_identical_statistics():
    first = [str(checks.check_standardization(3)), str(checks.check_detachment(3))]
    second = [str(checks.check_standardization(3)), str(checks.check_detachment(3))]
    assert first == second


def test_gumbel_law_statistics():
    result = checks.check_gumbel_law(17, draws=20_000)
    assert len(result.statistics["frequencies"]) == 4
    assert np.isclose(sum(result.statistics["frequencies"]), 1.0)


def test_run_checks_selects_by_name():
    results = checks.run_checks(17, names={"detachment", "standardization"})
    assert [r.name for r in results] == [
        "policy detachment",
        "advantage standardization",
    ]


def test_result_rendering():
    result = checks.CheckResult("demo", False, {"z": 1.5, "arms": [0.1, 0.2]}, "note")
    assert str(result) == "[FAIL] demo: z=1.5, arms=(0.1, 0.2) (note)"
