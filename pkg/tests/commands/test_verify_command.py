# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 tacslab contributors.
#
# tacslab is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Verification command tests."""

from tacslab.commands import VerifyCommands
from tacslab.diffmath import ops as ops_module


def test_gradcheck_passes():
    response = VerifyCommands(17).gradcheck()
    assert response.status_code == 0
    lines = response.output.splitlines()
    assert lines[0].startswith("[PASS] gradcheck ")
    assert "[PASS] gradcheck selector+tasknet" in response.output
    assert "checks passed" in lines[-1]


def test_corrupted_softmax_backward_is_named(monkeypatch):
    monkeypatch.setattr(ops_module, "_softmax_backward", lambda p, g: p * g)
    response = VerifyCommands(17).gradcheck()
    assert response.status_code == 1
    assert "gradcheck softmax" in response.error
    assert "[FAIL] gradcheck softmax" in response.output


def test_selected_checks_print_their_statistics():
    response = VerifyCommands(5).verify(names={"detachment", "standardization"})
    assert response.status_code == 0
    lines = response.output.splitlines()
    assert lines[0].startswith("[PASS] policy detachment:")
    assert lines[1].startswith("[PASS] advantage standardization:")
    assert lines[2].startswith("2/2 checks passed")


def test_fixed_seed_gives_identical_statistics():
    names = {"detachment", "standardization"}
    first = VerifyCommands(3).verify(names=names).output.splitlines()[:-1]
    second = VerifyCommands(3).verify(names=names).output.splitlines()[:-1]
    assert first == second
