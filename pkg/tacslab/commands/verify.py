# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 tacslab contributors.
#
# tacslab is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Gradient and estimator verification suites."""

import time

from ..helpers.response import StepResponse
from ..training import run_checks


class VerifyCommands(object):
    """Run the verification checks and report their statistics."""

    def __init__(self, seed=17):
        """Constructor.

        :param seed: Seed of the ``verify`` random stream.
        """
        self.seed = seed

    def verify(self, names=None):
        """Run the named checks, or all of them.

        Every check prints one line with its statistics; any failure makes
        the response an error.
        """
        started = time.perf_counter()
        results = run_checks(self.seed, names=names)
        elapsed = time.perf_counter() - started
        lines = [str(r) for r in results]
        failed = [r.name for r in results if not r.passed]
        summary = (
            f"{len(results) - len(failed)}/{len(results)} checks passed "
            f"in {elapsed:.1f}s (seed {self.seed})"
        )
        if failed:
            return StepResponse(
                output="\n".join(lines + [summary]),
                error="Failed: " + ", ".join(failed),
                status_code=1,
            )
        return StepResponse(output="\n".join(lines + [summary]))

    def gradcheck(self):
        """Gradient checks only."""
        return self.verify(names={"gradients"})
