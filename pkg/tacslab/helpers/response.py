# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 tacslab contributors.
#
# tacslab is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Outcome of one command step."""


class StepResponse:
    """Step response class."""

    def __init__(self, output=None, error=None, status_code=0, warning=False):
        """Constructor.

        By default, it is a successful response (0) with no error nor output.
        """
        self.output = output
        self.error = error
        self.status_code = status_code
        self.warning = warning

    def __repr__(self):
        """Short form for test failures."""
        return (
            f"StepResponse(status_code={self.status_code}, warning={self.warning}, "
            f"output={self.output!r}, error={self.error!r})"
        )
