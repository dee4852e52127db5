# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 tacslab contributors.
#
# tacslab is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Synthetic benchmarks with exact helpfulness oracles.

Every feature vector is laid out as ``[key | code | payload]``: the key
block has width ``(d_in - classes) // 2`` and holds a unit vector, the
code block is a one-hot over the classes scaled by :data:`CODE_SCALE`
and the payload block holds a vector of norm
``PAYLOAD_NORM * distractor_strength``. Payloads dominate raw similarity
while helpfulness follows the key.

``keymatch``
    A query of key ``k`` with code ``c_q`` has label ``(c_q + c_k) mod C``
    where ``c_k`` is the code of the candidate holding key ``k``. Every
    query shares its payload with a distractor candidate holding a decoy
    key and no code.

``crossclass``
    Every family ``f`` has an offset ``d_f`` in ``1..C-1``; a query of
    family ``f`` has label ``(l + d_f) mod C`` where ``l`` is the class
    carried by the family's reference candidate, which therefore always
    has another class than the query. Every query is a noisy copy of a
    trap candidate of its own class.

Training keys (families) have two candidates with different codes. Each
training query shares its group id with one of them, so leakage
exclusion leaves exactly one visible candidate per key. Training queries
come in pairs with identical features that exclude different twins, so
the query alone cannot tell which candidate is visible. Evaluation
queries use held-out keys with a single candidate and group ids that
never occur in the pool.
"""

from dataclasses import asdict, dataclass

import numpy as np

from ..errors import TacsLabConfigError
from ..helpers.seeding import substream
from .samples import CandidatePool, SampleSet, hash_arrays

BENCHMARKS = ("keymatch", "crossclass")
CODE_SCALE = 2.0
PAYLOAD_NORM = 3.0
QUERY_NOISE = 0.1


@dataclass(frozen=True)
class BenchmarkSpec:
    """Benchmark construction parameters."""

    name: str = "keymatch"
    classes: int = 4
    d_in: int = 32
    keys: int = 16
    pool_size: int = 64
    train_size: int = 1024
    eval_size: int = 512
    distractor_strength: float = 1.0
    eval_key_fraction: float = 0.25
    seed: int = 17

    @property
    def key_width(self):
        """Width of the key block."""
        return (self.d_in - self.classes) // 2

    @property
    def payload_width(self):
        """Width of the payload block."""
        return self.d_in - self.key_width - self.classes

    @property
    def eval_keys(self):
        """Number of keys (families) reserved for evaluation."""
        return max(1, int(round(self.keys * self.eval_key_fraction)))

    @property
    def train_keys(self):
        """Number of keys (families) used by training queries."""
        return self.keys - self.eval_keys

    @property
    def keyed_candidates(self):
        """Pool rows holding a key: one per key plus a twin per training key."""
        return self.keys + self.train_keys

    @property
    def traps(self):
        """Number of distractor, trap or filler candidates in the pool."""
        return self.pool_size - self.keyed_candidates

    def validate(self):
        """Raise :class:`TacsLabConfigError` on an inconsistent spec."""
        if self.name not in BENCHMARKS:
            raise TacsLabConfigError(
                f"unknown benchmark {self.name!r}, expected one of {BENCHMARKS}"
            )
        sizes = ("classes", "d_in", "keys", "pool_size", "train_size", "eval_size")
        for attr in sizes:
            if getattr(self, attr) <= 0:
                raise TacsLabConfigError(f"benchmark {attr} must be positive")
        if self.seed < 0:
            raise TacsLabConfigError(f"seed must be >= 0, got {self.seed}")
        if self.classes < 2:
            raise TacsLabConfigError("benchmark classes must be at least 2")
        if self.d_in - self.classes < 2:
            raise TacsLabConfigError(
                f"d_in = {self.d_in} leaves no room for key and payload blocks "
                f"next to {self.classes} code entries"
            )
        if not 0.0 < self.eval_key_fraction < 1.0:
            raise TacsLabConfigError("eval_key_fraction must lie in (0, 1)")
        if self.train_keys < 1:
            raise TacsLabConfigError("no keys left for training queries")
        if self.keys > self.pool_size:
            raise TacsLabConfigError(
                f"key count {self.keys} exceeds pool size {self.pool_size}"
            )
        if self.name == "crossclass":
            # every key row is paired with a trap row of the same group
            needed = 2 * self.keyed_candidates
        else:
            needed = self.keyed_candidates + 1
        if self.pool_size < needed:
            raise TacsLabConfigError(
                f"{self.name} with {self.keys} keys needs a pool of at least "
                f"{needed} candidates, got {self.pool_size}"
            )
        if self.distractor_strength < 0:
            raise TacsLabConfigError("distractor_strength must be non-negative")
        return self


@dataclass
class Benchmark:
    """Generated splits, the fixed pool and per-query oracle indices.

    ``*_oracle`` holds the pool index of each query's most helpful
    candidate; ``*_trap`` the pool index of the similarity trap planted
    for it. Both are visible to the query after leakage exclusion.
    """

    spec: BenchmarkSpec
    train: SampleSet
    eval: SampleSet
    pool: CandidatePool
    train_oracle: np.ndarray
    eval_oracle: np.ndarray
    train_trap: np.ndarray
    eval_trap: np.ndarray

    def digest(self):
        """Hash of every generated array."""
        return hash_arrays(
            self.train.features,
            self.train.labels,
            self.train.group_ids,
            self.train.key_ids,
            self.eval.features,
            self.eval.labels,
            self.eval.group_ids,
            self.eval.key_ids,
            self.pool.features,
            self.pool.labels,
            self.pool.group_ids,
            self.pool.key_ids,
            self.train_oracle,
            self.eval_oracle,
        )

    def describe(self):
        """Plain-dict summary for reports."""
        return dict(
            asdict(self.spec),
            pool_version=self.pool.pool_version,
            dataset_sha256=self.digest(),
        )


def _unit_vectors(rng, count, width):
    vectors = rng.standard_normal((count, width))
    return vectors / np.linalg.norm(vectors, axis=1, keepdims=True)


def _payloads(rng, spec, count):
    norm = PAYLOAD_NORM * spec.distractor_strength
    return norm * _unit_vectors(rng, count, spec.payload_width)


def _balanced(rng, count, classes):
    """``count`` labels, each class equally often up to one, shuffled."""
    return rng.permutation(np.arange(count) % classes)


def _rows(spec, keys, codes, payloads):
    """Assemble ``[key | code | payload]`` rows; ``codes=None`` leaves no code."""
    count = keys.shape[0]
    rows = np.zeros((count, spec.d_in))
    kw = spec.key_width
    rows[:, :kw] = keys
    if codes is not None:
        rows[np.arange(count), kw + np.asarray(codes)] = CODE_SCALE
    rows[:, kw + spec.classes :] = payloads
    return rows


def _shuffled_pool(spec, features, labels, group_ids, key_ids):
    """Shuffle pool rows on the pool stream; return the pool and positions."""
    order = substream(spec.seed, "pool").permutation(len(labels))
    position = np.empty_like(order)
    position[order] = np.arange(len(order))
    pool = CandidatePool(
        features[order],
        labels[order],
        group_ids[order],
        key_ids[order],
        classes=spec.classes,
        fraction=spec.pool_size / (spec.pool_size + spec.train_size),
    )
    return pool, position


def _split_keys(rng, spec):
    split = rng.permutation(spec.keys)
    return np.sort(split[spec.eval_keys :]), np.sort(split[: spec.eval_keys])


def _pool_groups(spec, count):
    """Pool group ids, disjoint from every evaluation query group."""
    return spec.train_size + spec.eval_size + np.arange(count)


def _twin_rows(index, key_rows, twin_rows):
    """Excluded and visible key rows of training queries.

    Queries alternate between sharing the group of a key's first row and
    the group of its twin, so both codes occur equally often per key.
    """
    slot = index % len(twin_rows)
    first = (index // len(twin_rows)) % 2 == 0
    excluded = np.where(first, key_rows[slot], twin_rows[slot])
    visible = np.where(first, twin_rows[slot], key_rows[slot])
    return slot, excluded, visible


def _pair_ids(index, twins):
    """Pair id of each training query; pair mates exclude different twins."""
    return index % twins + twins * (index // (2 * twins))


def gen_keymatch(spec):
    """Generate the key-match benchmark."""
    spec.validate()
    rng = substream(spec.seed, "dataset")
    C, K, T = spec.classes, spec.keys, spec.train_keys

    keys = _unit_vectors(rng, K, spec.key_width)
    train_keys, eval_keys = _split_keys(rng, spec)
    codes = np.empty(K, dtype=np.int64)
    codes[train_keys] = _balanced(rng, T, C)
    codes[eval_keys] = _balanced(rng, len(eval_keys), C)
    twin_codes = (codes[train_keys] + rng.integers(1, C, size=T)) % C

    decoys = _unit_vectors(rng, spec.traps, spec.key_width)
    payloads = _payloads(rng, spec, spec.traps)

    features = np.vstack(
        [
            _rows(spec, keys, codes, 0.0),
            _rows(spec, keys[train_keys], twin_codes, 0.0),
            _rows(spec, decoys, None, payloads),
        ]
    )
    labels = np.concatenate([codes, twin_codes, _balanced(rng, spec.traps, C)])
    key_ids = np.concatenate([np.arange(K), train_keys, np.full(spec.traps, -1)])
    groups = _pool_groups(spec, len(labels))
    pool, position = _shuffled_pool(spec, features, labels, groups, key_ids)
    first_trap = spec.keyed_candidates

    index = np.arange(spec.train_size)
    slot, excluded, visible = _twin_rows(index, train_keys, K + np.arange(T))
    key = train_keys[slot]
    code = (index // (2 * T)) % C
    pair = _pair_ids(index, T)
    trap = rng.integers(0, spec.traps, size=pair.max() + 1)[pair]
    train = SampleSet(
        _rows(spec, keys[key], code, payloads[trap]),
        (code + labels[visible]) % C,
        groups[excluded],
        key,
        classes=C,
    )

    index = np.arange(spec.eval_size)
    key = eval_keys[index % len(eval_keys)]
    code = (index // len(eval_keys)) % C
    eval_trap = rng.integers(0, spec.traps, size=spec.eval_size)
    evaluation = SampleSet(
        _rows(spec, keys[key], code, payloads[eval_trap]),
        (code + codes[key]) % C,
        spec.train_size + index,
        key,
        classes=C,
    )
    return Benchmark(
        spec,
        train,
        evaluation,
        pool,
        position[visible],
        position[key],
        position[first_trap + trap],
        position[first_trap + eval_trap],
    )


def gen_crossclass(spec):
    """Generate the cross-class benchmark."""
    spec.validate()
    rng = substream(spec.seed, "dataset")
    C, K, T = spec.classes, spec.keys, spec.train_keys

    families = _unit_vectors(rng, K, spec.key_width)
    train_families, eval_families = _split_keys(rng, spec)
    offsets = 1 + _balanced(rng, K, C - 1)
    references = np.empty(K, dtype=np.int64)
    references[train_families] = _balanced(rng, T, C)
    twin_references = (references[train_families] + rng.integers(1, C, size=T)) % C
    # evaluation query labels come out balanced
    eval_labels = _balanced(rng, len(eval_families), C)
    references[eval_families] = (eval_labels - offsets[eval_families]) % C
    payloads = _payloads(rng, spec, K)

    keyed = spec.keyed_candidates
    fillers = spec.traps - keyed
    reference_labels = np.concatenate([references, twin_references])
    trap_families = np.concatenate([np.arange(K), train_families])
    features = np.vstack(
        [
            _rows(spec, families, references, 0.0),
            _rows(spec, families[train_families], twin_references, 0.0),
            _rows(
                spec,
                _unit_vectors(rng, keyed, spec.key_width),
                None,
                payloads[trap_families],
            ),
            _rows(
                spec,
                _unit_vectors(rng, fillers, spec.key_width),
                None,
                _payloads(rng, spec, fillers),
            ),
        ]
    )
    labels = np.concatenate(
        [
            reference_labels,
            (reference_labels + offsets[trap_families]) % C,
            _balanced(rng, fillers, C),
        ]
    )
    key_ids = np.concatenate(
        [np.arange(K), train_families, np.full(keyed + fillers, -1)]
    )
    groups = _pool_groups(spec, len(labels))
    # a trap belongs to the group of the reference row it mirrors
    groups[keyed : 2 * keyed] = groups[:keyed]
    pool, position = _shuffled_pool(spec, features, labels, groups, key_ids)

    index = np.arange(spec.train_size)
    slot, excluded, visible = _twin_rows(index, train_families, K + np.arange(T))
    family = train_families[slot]
    pair = _pair_ids(index, T)
    noise = rng.standard_normal((pair.max() + 1, spec.payload_width))[pair]
    noise *= QUERY_NOISE
    train = SampleSet(
        _rows(spec, families[family], offsets[family], payloads[family] + noise),
        (labels[visible] + offsets[family]) % C,
        groups[excluded],
        family,
        classes=C,
    )

    index = np.arange(spec.eval_size)
    family = eval_families[index % len(eval_families)]
    noise = QUERY_NOISE * rng.standard_normal((spec.eval_size, spec.payload_width))
    evaluation = SampleSet(
        _rows(spec, families[family], offsets[family], payloads[family] + noise),
        (references[family] + offsets[family]) % C,
        spec.train_size + index,
        family,
        classes=C,
    )
    return Benchmark(
        spec,
        train,
        evaluation,
        pool,
        position[visible],
        position[family],
        position[keyed + visible],
        position[keyed + family],
    )


def generate(spec):
    """Dispatch on ``spec.name``."""
    spec.validate()
    if spec.name == "crossclass":
        return gen_crossclass(spec)
    return gen_keymatch(spec)
