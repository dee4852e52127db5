# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 tacslab contributors.
#
# tacslab is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Rendering of command responses."""

import sys

import click


def run_steps(steps, fail_message, success_message):
    """Run a series of steps."""
    for step in steps:
        click.secho(message=step.message, fg="green")
        response = step.execute()
        handle_response(response, fail_message=fail_message)
    else:
        click.secho(message=success_message, fg="green")


def handle_response(response, fail_message=None):
    """Print a `StepResponse` and exit with its status code on failure."""
    is_error = response.status_code > 0
    if is_error:
        if response.output:
            click.echo(response.output)
        msg = f"Errors: {response.error}" if response.error else ""
        if fail_message:
            msg = fail_message + ("\n" + msg if msg else "")
        click.secho(msg, fg="red", err=True)
        sys.exit(response.status_code)
    if response.output:
        click.secho(message=response.output, fg="green")
    if response.warning and response.error:
        click.secho(response.error, fg="yellow")


def combine_decorators(*decorators):
    """Combine multiple decorators."""

    def _decorator(f):
        for dec in reversed(decorators):
            f = dec(f)
        return f

    return _decorator
