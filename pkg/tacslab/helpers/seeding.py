# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 tacslab contributors.
#
# tacslab is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Named random substreams derived from a single run seed."""

import zlib

import numpy as np

STREAMS = (
    "dataset",
    "pool",
    "init",
    "gumbel",
    "policy",
    "shuffle",
    "probe",
    "control",
    "retrieval",
    "verify",
)


def _tag(name):
    return zlib.crc32(name.encode("utf-8"))


def substream(seed, name, *extra):
    """Generator for the stream ``name`` of ``seed``.

    :param extra: Further non-negative integers, e.g. a query id for
        per-query streams.
    """
    if name not in STREAMS:
        raise ValueError(f"unknown random stream: {name}")
    entropy = [int(seed), _tag(name)] + [int(e) for e in extra]
    return np.random.default_rng(np.random.SeedSequence(entropy))
