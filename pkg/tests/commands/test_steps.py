# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 tacslab contributors.
#
# tacslab is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Module for step tests."""

import pytest

from tacslab.commands.steps import FunctionStep
from tacslab.helpers.response import StepResponse


def func():
    return StepResponse(error="test", output="test", status_code=1, warning=False)


def test_func_step():
    step = FunctionStep(func=func, args={}, message="")
    response = step.execute()

    assert response.status_code == 1
    assert not response.warning


def test_step_has_no_skip_option():
    with pytest.raises(TypeError):
        FunctionStep(func=func, message="", skippable=True)


def test_step_arguments():
    step = FunctionStep(
        func=lambda value: StepResponse(output=f"got {value}"),
        args={"value": 3},
        message="Passing arguments...",
    )
    assert step.execute().output == "got 3"
    assert step.message == "Passing arguments..."


def test_default_response():
    response = StepResponse()
    assert response.status_code == 0
    assert response.output is None
    assert not response.warning
    assert "status_code=0" in repr(response)
