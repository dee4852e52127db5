# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 tacslab contributors.
#
# tacslab is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Labeled samples, sample sets and the candidate pool."""

import hashlib
from dataclasses import dataclass

import numpy as np

from ..errors import InvalidArgumentError, TacsLabConfigError
from ..helpers.seeding import substream


@dataclass(frozen=True)
class LabeledSample:
    """One sample; ``key_id`` is benchmark bookkeeping, never a network input."""

    features: np.ndarray
    label: int
    group_id: int
    key_id: int = -1


def hash_arrays(*arrays):
    """Hex sha256 over the little-endian bytes of ``arrays``."""
    sha256 = hashlib.sha256()
    for array in arrays:
        array = np.ascontiguousarray(array)
        sha256.update(str(array.shape).encode("ascii"))
        sha256.update(array.astype(array.dtype.newbyteorder("<")).tobytes())
    return sha256.hexdigest()


class SampleSet(object):
    """Column-oriented set of labeled samples."""

    def __init__(self, features, labels, group_ids, key_ids=None, classes=None):
        """Constructor."""
        features = np.asarray(features, dtype=np.float64)
        labels = np.asarray(labels, dtype=np.int64)
        if features.ndim != 2 or labels.shape != (features.shape[0],):
            raise InvalidArgumentError(
                f"features {features.shape} and labels {labels.shape} disagree"
            )
        if not np.all(np.isfinite(features)):
            raise InvalidArgumentError("features must be finite")
        if classes is not None and len(labels) and (
            labels.min() < 0 or labels.max() >= classes
        ):
            raise InvalidArgumentError(f"labels outside [0, {classes})")
        self.features = features
        self.labels = labels
        self.group_ids = np.asarray(group_ids, dtype=np.int64)
        if key_ids is None:
            key_ids = np.full(len(labels), -1)
        self.key_ids = np.asarray(key_ids, dtype=np.int64)
        self.classes = classes

    def __len__(self):
        """Number of samples."""
        return self.features.shape[0]

    def __getitem__(self, index):
        """The sample at ``index``."""
        return LabeledSample(
            features=self.features[index],
            label=int(self.labels[index]),
            group_id=int(self.group_ids[index]),
            key_id=int(self.key_ids[index]),
        )

    @property
    def dim(self):
        """Feature dimension."""
        return self.features.shape[1]

    def subset(self, index):
        """A new set holding the rows ``index``."""
        index = np.asarray(index, dtype=np.int64)
        return SampleSet(
            self.features[index],
            self.labels[index],
            self.group_ids[index],
            self.key_ids[index],
            classes=self.classes,
        )

    def digest(self):
        """Content hash."""
        return hash_arrays(self.features, self.labels, self.group_ids, self.key_ids)


class CandidatePool(SampleSet):
    """Immutable, indexed sample set scored by the selector."""

    def __init__(
        self, features, labels, group_ids, key_ids=None, classes=None, fraction=None
    ):
        """Constructor."""
        super().__init__(features, labels, group_ids, key_ids, classes)
        for attr in ("features", "labels", "group_ids", "key_ids"):
            array = getattr(self, attr).copy()
            array.setflags(write=False)
            setattr(self, attr, array)
        self.fraction = fraction
        self.pool_version = self.digest()

    @classmethod
    def from_set(cls, samples, fraction=None):
        """Freeze a copy of ``samples`` as a pool."""
        return cls(
            samples.features,
            samples.labels,
            samples.group_ids,
            samples.key_ids,
            classes=samples.classes,
            fraction=fraction,
        )


def build_pool(train, fraction, seed):
    """Move a seeded ``fraction`` of ``train`` into a fixed candidate pool.

    :returns: ``(pool, reduced_train)``; together they partition ``train``.
    """
    if not 0.0 < fraction < 1.0:
        raise TacsLabConfigError(f"pool fraction must lie in (0, 1), got {fraction}")
    size = int(round(fraction * len(train)))
    if size == 0:
        raise TacsLabConfigError(
            f"pool fraction {fraction} of {len(train)} samples gives an empty pool"
        )
    rng = substream(seed, "pool")
    chosen = np.sort(rng.choice(len(train), size=size, replace=False))
    rest = np.setdiff1d(np.arange(len(train)), chosen)
    pool = CandidatePool.from_set(train.subset(chosen), fraction=fraction)
    return pool, train.subset(rest)
