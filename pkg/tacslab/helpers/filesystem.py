# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 tacslab contributors.
#
# tacslab is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Run directory and file hashing helpers."""

import hashlib
from datetime import datetime
from pathlib import Path

# Defining buffer size to avoid using too much memory
BUF_SIZE = 65536  # 64 KB

TIMESTAMP_FORMAT = "%Y%m%d-%H%M%S"


def hash_file(path_to_file):
    """Hash file to check for consistency."""
    sha256 = hashlib.sha256()

    with open(path_to_file, "rb") as f:
        while True:
            data = f.read(BUF_SIZE)
            if not data:
                break
            sha256.update(data)

    return sha256.hexdigest()


def create_run_dir(out_dir, method, benchmark, seed, now=None):
    """Create a fresh run directory under ``out_dir``.

    The name is ``<timestamp>-<method>-<benchmark>-s<seed>``; a ``-1``,
    ``-2``, ... suffix is appended when that name is taken, so an
    existing run directory is never reused.

    :param now: Timestamp to use instead of the current time.
    :return: Path of the created directory.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    stamp = (now or datetime.now()).strftime(TIMESTAMP_FORMAT)
    base = f"{stamp}-{method}-{benchmark}-s{seed}"
    suffix = 0
    while True:
        name = base if suffix == 0 else f"{base}-{suffix}"
        path = out_dir / name
        try:
            path.mkdir()
            return path
        except FileExistsError:
            suffix += 1


def find_run_files(run_dir, *names):
    """Paths of ``names`` inside ``run_dir``; missing ones are ``None``."""
    run_dir = Path(run_dir)
    return {
        name: run_dir / name if (run_dir / name).is_file() else None for name in names
    }
