# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 tacslab contributors.
#
# tacslab is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Loss and accuracy curves of a run."""

from pathlib import Path

from ..helpers.response import StepResponse
from .compare import load_reports

CURVES_FILENAME = "curves.svg"
LOSSES = ("l_grad", "l_policy", "l_total")
ACCURACIES = ("accuracy", "oracle_agreement")


def plot_report(report, path):
    """Write an SVG with one loss panel and one accuracy panel."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    epochs = [r.epoch for r in report.epochs]
    with matplotlib.rc_context({"svg.hashsalt": "tacslab"}):
        fig, (loss_ax, acc_ax) = plt.subplots(1, 2, figsize=(10, 4))
        for name in LOSSES:
            loss_ax.plot(epochs, [getattr(r, name) for r in report.epochs], label=name)
        loss_ax.set_xlabel("epoch")
        loss_ax.set_ylabel("loss")
        loss_ax.legend()
        for name in ACCURACIES:
            values = [getattr(r, name) for r in report.epochs]
            if all(v is None for v in values):
                continue
            acc_ax.plot(epochs, values, marker="o", label=name)
        acc_ax.set_xlabel("epoch")
        acc_ax.set_ylim(0.0, 1.0)
        acc_ax.legend()
        fig.suptitle(f"{report.method} seed {report.seed}")
        fig.tight_layout()
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)
    return path


class PlotCommands(object):
    """Plot a finished run."""

    def __init__(self, run_dir):
        """Constructor."""
        self.run_dir = Path(run_dir)

    def plot(self):
        """Write ``curves.svg`` into the run directory."""
        (report,) = load_reports([self.run_dir])
        try:
            path = plot_report(report, self.run_dir / CURVES_FILENAME)
        except ImportError:
            return StepResponse(
                error="matplotlib is not installed; install tacslab[plot].",
                status_code=1,
            )
        return StepResponse(output=f"Wrote {path}")
