# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 tacslab contributors.
#
# tacslab is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Environment helpers."""

import os

from ..errors import TacsLabConfigError

THREADS_VARIABLE = "TACSLAB_THREADS"


def get_threads():
    """Evaluation worker threads allowed by ``TACSLAB_THREADS`` (default 1)."""
    value = os.environ.get(THREADS_VARIABLE, "").strip()
    if not value:
        return 1
    try:
        threads = int(value)
    except ValueError:
        threads = 0
    if threads < 1:
        raise TacsLabConfigError(
            f"{THREADS_VARIABLE} must be a positive integer, got {value!r}"
        )
    return threads
