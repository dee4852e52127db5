# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 tacslab contributors.
#
# tacslab is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Units of work run one after another by the CLI."""


class Step(object):
    """Something the CLI announces with a message and then executes."""

    def __init__(self, message=None):
        """Constructor."""
        self.message = message

    def execute(self):
        """Execute the step."""
        raise NotImplementedError


class FunctionStep(Step):
    """Step wrapping a bound method or function.

    ``func(**args)`` must return a
    :class:`tacslab.helpers.response.StepResponse`; it is passed through
    untouched.
    """

    def __init__(self, func, args=None, **kwargs):
        """Constructor."""
        super().__init__(**kwargs)
        self.func = func
        self.args = args or {}

    def execute(self):
        """Call the wrapped function."""
        return self.func(**self.args)
