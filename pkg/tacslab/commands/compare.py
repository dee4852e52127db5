# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 tacslab contributors.
#
# tacslab is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Method-by-metric comparison across run directories."""

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..errors import InvalidArgumentError, TacsLabConfigError
from ..helpers.filesystem import find_run_files
from ..helpers.response import StepResponse
from ..training import RunReport
from .run import REPORT_FILENAME

METRICS = (
    "accuracy",
    "mean_class_accuracy",
    "oracle_agreement",
    "cross_class_rate",
    "mean_entropy",
)
EXPECTED_RANKING = ("tacs", "frozen_sim", "random", "no_context")
COMPARISON_FILENAME = "comparison.csv"
# Fields of the dataset description that may differ between comparable runs.
PER_RUN_FIELDS = ("seed", "dataset_sha256", "pool_version")


def load_reports(run_dirs):
    """Read ``report.json`` from every run directory.

    :raises TacsLabConfigError: On a missing directory or report.
    """
    reports = []
    for run_dir in run_dirs:
        run_dir = Path(run_dir)
        if not run_dir.is_dir():
            raise TacsLabConfigError(f"Run directory '{run_dir}' does not exist.")
        path = find_run_files(run_dir, REPORT_FILENAME)[REPORT_FILENAME]
        if path is None:
            raise TacsLabConfigError(f"No {REPORT_FILENAME} in '{run_dir}'.")
        reports.append(RunReport.from_dict(json.loads(path.read_text())))
    return reports


def benchmark_key(report):
    """Dataset description without the per-seed fields."""
    return tuple(
        sorted(
            (k, v) for k, v in report.dataset.items() if k not in PER_RUN_FIELDS
        )
    )


def row_label(report):
    """Method tag, with the ablation appended when it is not ``full``."""
    ablation = report.config.get("trainer", {}).get("ablation", "full")
    return report.method if ablation == "full" else f"{report.method}[{ablation}]"


@dataclass
class ComparisonRow:
    """Per-seed statistics of one method."""

    label: str
    seeds: list
    means: dict = field(default_factory=dict)
    stds: dict = field(default_factory=dict)


@dataclass
class Comparison:
    """Comparison table plus ranking violations."""

    rows: list
    violations: list
    benchmark: str

    def row(self, label):
        """Row for ``label`` or ``None``."""
        return next((r for r in self.rows if r.label == label), None)

    def accuracy_delta(self, label, baseline="no_context"):
        """Mean accuracy difference between two rows, or ``None``."""
        row, base = self.row(label), self.row(baseline)
        if row is None or base is None:
            return None
        return row.means["accuracy"] - base.means["accuracy"]

    def table(self):
        """Fixed-width text table."""
        header = ["method", "runs"] + list(METRICS) + ["acc_delta"]
        lines = [header]
        for row in self.rows:
            cells = [row.label, str(len(row.seeds))]
            for metric in METRICS:
                mean = row.means[metric]
                cells.append(
                    "-" if mean is None else f"{mean:.4f} ± {row.stds[metric]:.4f}"
                )
            delta = self.accuracy_delta(row.label)
            cells.append("-" if delta is None else f"{delta:+.4f}")
            lines.append(cells)
        widths = [max(len(line[i]) for line in lines) for i in range(len(header))]
        return "\n".join(
            "  ".join(cell.ljust(w) for cell, w in zip(line, widths)).rstrip()
            for line in lines
        )

    def write_csv(self, path):
        """Write ``comparison.csv``."""
        with open(path, "w", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            columns = ["method", "runs"]
            for metric in METRICS:
                columns += [f"{metric}_mean", f"{metric}_std"]
            writer.writerow(columns + ["accuracy_delta"])
            for row in self.rows:
                cells = [row.label, len(row.seeds)]
                for metric in METRICS:
                    mean = row.means[metric]
                    cells += ["", ""] if mean is None else [
                        repr(mean),
                        repr(row.stds[metric]),
                    ]
                delta = self.accuracy_delta(row.label)
                writer.writerow(cells + ["" if delta is None else repr(delta)])


def ranking_violations(rows):
    """Broken links of ``tacs > frozen_sim >= random >= no_context``.

    Only methods present in ``rows`` take part; absent ones are skipped.
    """
    accuracy = {r.label: r.means["accuracy"] for r in rows}
    present = [m for m in EXPECTED_RANKING if m in accuracy]
    violations = []
    for better, worse in zip(present, present[1:]):
        a, b = accuracy[better], accuracy[worse]
        strict = better == "tacs"
        if (a <= b) if strict else (a < b):
            relation = ">" if strict else ">="
            violations.append(
                f"expected {better} {relation} {worse}, got {a:.4f} vs {b:.4f}"
            )
    return violations


def compare_reports(reports):
    """Group final records by method and compute mean and std per metric.

    :raises InvalidArgumentError: When the reports come from different
        benchmark parameters.
    """
    keys = {benchmark_key(r) for r in reports}
    if len(keys) > 1:
        names = sorted({r.dataset.get("name", "?") for r in reports})
        raise InvalidArgumentError(
            "runs use incompatible benchmarks "
            f"({', '.join(names)}); compare runs of one benchmark spec"
        )
    groups = {}
    for report in reports:
        if report.final is None:
            raise InvalidArgumentError(f"run of {report.method} has no epochs")
        groups.setdefault(row_label(report), []).append(report)

    rows = []
    for label, group in groups.items():
        row = ComparisonRow(label=label, seeds=[r.seed for r in group])
        for metric in METRICS:
            values = [getattr(r.final, metric) for r in group]
            values = [v for v in values if v is not None]
            if values:
                row.means[metric] = float(np.mean(values))
                row.stds[metric] = float(np.std(values))
            else:
                row.means[metric] = row.stds[metric] = None
        rows.append(row)
    order = {m: i for i, m in enumerate(EXPECTED_RANKING)}
    rows.sort(key=lambda r: (order.get(r.label, len(order)), r.label))
    return Comparison(
        rows=rows,
        violations=ranking_violations(rows),
        benchmark=reports[0].dataset.get("name", "?"),
    )


class CompareCommands(object):
    """Compare finished runs."""

    def __init__(self, run_dirs, out_dir=None):
        """Constructor.

        :param run_dirs: At least two run directories.
        :param out_dir: Directory to write ``comparison.csv`` into.
        """
        if len(run_dirs) < 2:
            raise TacsLabConfigError("compare needs at least two run directories.")
        self.run_dirs = [Path(d) for d in run_dirs]
        self.out_dir = Path(out_dir) if out_dir else None

    def compare(self):
        """Build the table; ranking violations come back as a warning."""
        reports = load_reports(self.run_dirs)
        try:
            comparison = compare_reports(reports)
        except InvalidArgumentError as e:
            return StepResponse(error=str(e), status_code=1)

        output = f"Benchmark {comparison.benchmark}\n{comparison.table()}"
        if self.out_dir is not None:
            self.out_dir.mkdir(parents=True, exist_ok=True)
            path = self.out_dir / COMPARISON_FILENAME
            comparison.write_csv(path)
            output = f"{output}\nWrote {path}"
        if comparison.violations:
            return StepResponse(
                output=output,
                error="Ranking violations:\n" + "\n".join(comparison.violations),
                warning=True,
            )
        return StepResponse(output=output)
