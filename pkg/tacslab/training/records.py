# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 tacslab contributors.
#
# tacslab is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Per-query outcomes, loss records and the run report."""

import csv
import io
import json
from dataclasses import asdict, dataclass, field, fields

import numpy as np


@dataclass
class SelectionOutcome:
    """What happened to one query in a step or an evaluation."""

    query_id: int
    scores: np.ndarray = None
    probabilities: np.ndarray = None
    gumbel_index: int = None
    action: int = None
    reward: float = None
    advantage: float = None
    prediction: int = None


@dataclass
class StepLosses:
    """Loss components of one training step."""

    l_grad: float
    l_policy: float
    l_total: float


@dataclass
class EpochRecord:
    """One row of ``epochs.csv``."""

    epoch: int
    l_grad: float
    l_policy: float
    l_total: float
    accuracy: float
    mean_class_accuracy: float
    oracle_agreement: float = None
    cross_class_rate: float = None
    mean_entropy: float = None

    @classmethod
    def columns(cls):
        """CSV header."""
        return [f.name for f in fields(cls)]


def _cell(value):
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


@dataclass
class RunReport:
    """Everything a run writes: config echo, epochs and summary."""

    method: str
    seed: int
    version: str
    config: dict = field(default_factory=dict)
    dataset: dict = field(default_factory=dict)
    epochs: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    wall_clock_seconds: float = 0.0
    completed: bool = False

    def add_epoch(self, record):
        """Append an epoch record and refresh the summary."""
        self.epochs.append(record)
        self.summary = {
            k: v for k, v in asdict(record).items() if k != "epoch"
        }
        self.summary["epochs_completed"] = record.epoch

    @property
    def final(self):
        """Last epoch record, or ``None``."""
        return self.epochs[-1] if self.epochs else None

    def epochs_csv(self):
        """Deterministic CSV text; no wall-clock fields."""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(EpochRecord.columns())
        for record in self.epochs:
            writer.writerow([_cell(getattr(record, c)) for c in EpochRecord.columns()])
        return buffer.getvalue()

    def to_dict(self):
        """JSON-ready dict."""
        return asdict(self)

    def to_json(self):
        """Pretty JSON text."""
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, data):
        """Rebuild a report read from ``report.json``."""
        data = dict(data)
        data["epochs"] = [EpochRecord(**r) for r in data.get("epochs", [])]
        return cls(**data)
