# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 tacslab contributors.
#
# tacslab is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Exceptions raised by tacslab."""

import click


class TacsLabConfigError(click.UsageError):
    """Exception when reading/writing a run configuration file."""


class NumericAbort(click.ClickException):
    """A run aborted on a non-finite loss."""

    exit_code = 3


class TacsLabError(Exception):
    """Base class for library errors."""


class ShapeError(TacsLabError, ValueError):
    """Operand dimensions do not agree."""

    def __init__(self, op, *shapes):
        """Constructor.

        :param op: name of the operation.
        :param shapes: the offending operand shapes.
        """
        joined = " and ".join(str(tuple(s)) for s in shapes)
        super().__init__(f"{op}: incompatible shapes {joined}")
        self.op = op
        self.shapes = shapes


class InvalidArgumentError(TacsLabError, ValueError):
    """An argument lies outside its documented domain."""


class EmptyPoolError(TacsLabError):
    """No candidate is left to select from."""


class NumericError(TacsLabError, ArithmeticError):
    """A value that must be finite is not."""

    def __init__(self, message, batch_id=None):
        """Constructor."""
        if batch_id is not None:
            message = f"{message} (batch {batch_id})"
        super().__init__(message)
        self.batch_id = batch_id
