# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 tacslab contributors.
#
# tacslab is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Flat binary and CSV dataset snapshots.

Binary layout: a header of three little-endian int64 ``(d_in, classes,
count)`` followed by ``count`` rows of ``d_in`` little-endian float64
features and the int64 label, group id and key id.
"""

import csv
from pathlib import Path

import numpy as np

from ..errors import InvalidArgumentError
from .samples import CandidatePool, SampleSet

HEADER = np.dtype("<i8")
FORMATS = ("bin", "csv")


def row_dtype(d_in):
    """Structured dtype of one snapshot row."""
    return np.dtype(
        [
            ("features", "<f8", (d_in,)),
            ("label", "<i8"),
            ("group_id", "<i8"),
            ("key_id", "<i8"),
        ]
    )


def write_bin(path, samples, classes):
    """Write ``samples`` in the binary layout."""
    rows = np.zeros(len(samples), dtype=row_dtype(samples.dim))
    rows["features"] = samples.features
    rows["label"] = samples.labels
    rows["group_id"] = samples.group_ids
    rows["key_id"] = samples.key_ids
    with open(path, "wb") as f:
        f.write(np.array([samples.dim, classes, len(samples)], dtype=HEADER).tobytes())
        f.write(rows.tobytes())


def read_bin(path, pool=False):
    """Read a binary snapshot back into a sample set (or pool)."""
    data = Path(path).read_bytes()
    if len(data) < 3 * HEADER.itemsize:
        raise InvalidArgumentError(f"{path}: truncated header")
    d_in, classes, count = np.frombuffer(data[: 3 * HEADER.itemsize], dtype=HEADER)
    dtype = row_dtype(int(d_in))
    body = data[3 * HEADER.itemsize :]
    if len(body) != int(count) * dtype.itemsize:
        raise InvalidArgumentError(
            f"{path}: expected {count} rows of {dtype.itemsize} bytes"
        )
    rows = np.frombuffer(body, dtype=dtype)
    cls = CandidatePool if pool else SampleSet
    return cls(
        rows["features"].astype(np.float64),
        rows["label"].astype(np.int64),
        rows["group_id"].astype(np.int64),
        rows["key_id"].astype(np.int64),
        classes=int(classes),
    )


def write_csv(path, samples):
    """Write ``samples`` as CSV, floats in round-trip ``repr`` form."""
    header = [f"f{i}" for i in range(samples.dim)] + ["label", "group_id", "key_id"]
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(header)
        for i in range(len(samples)):
            writer.writerow(
                [repr(float(v)) for v in samples.features[i]]
                + [
                    int(samples.labels[i]),
                    int(samples.group_ids[i]),
                    int(samples.key_ids[i]),
                ]
            )


def write_oracle(path, benchmark):
    """Write per-query oracle and trap pool indices."""
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["split", "query", "oracle", "trap"])
        for split, oracle, trap in (
            ("train", benchmark.train_oracle, benchmark.train_trap),
            ("eval", benchmark.eval_oracle, benchmark.eval_trap),
        ):
            for query, (o, t) in enumerate(zip(oracle, trap)):
                writer.writerow([split, query, int(o), int(t)])


def export_benchmark(benchmark, out_dir, fmt="bin"):
    """Write every split, the pool, the oracle and the dataset hash.

    :returns: List of written paths.
    """
    if fmt not in FORMATS:
        raise InvalidArgumentError(f"unknown snapshot format {fmt!r}")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    classes = benchmark.spec.classes
    written = []
    for name, samples in (
        ("train", benchmark.train),
        ("eval", benchmark.eval),
        ("pool", benchmark.pool),
    ):
        path = out_dir / f"{name}.{fmt}"
        if fmt == "bin":
            write_bin(path, samples, classes)
        else:
            write_csv(path, samples)
        written.append(path)
    oracle = out_dir / "oracle.csv"
    write_oracle(oracle, benchmark)
    digest = out_dir / "dataset.sha256"
    digest.write_text(benchmark.digest() + "\n")
    return written + [oracle, digest]
