# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 tacslab contributors.
#
# tacslab is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Run one method on one benchmark and persist the results."""

import contextlib
import logging

from .. import __version__
from ..errors import NumericAbort, NumericError
from ..helpers.filesystem import create_run_dir, hash_file
from ..helpers.response import StepResponse
from ..synthbench import generate
from ..training import RunReport, build_method, train
from .steps import FunctionStep

REPORT_FILENAME = "report.json"
EPOCHS_FILENAME = "epochs.csv"
DIGEST_FILENAME = "dataset.sha256"
LOG_FILENAME = "run.log"
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s %(message)s"


@contextlib.contextmanager
def run_log(run_dir):
    """Attach a ``run.log`` file handler to the ``tacslab`` logger."""
    logger = logging.getLogger("tacslab")
    handler = logging.FileHandler(run_dir / LOG_FILENAME)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    handler.setLevel(logging.DEBUG)
    previous = logger.level
    logger.addHandler(handler)
    logger.setLevel(logging.DEBUG)
    try:
        yield handler
    finally:
        logger.removeHandler(handler)
        logger.setLevel(previous)
        handler.close()


def write_report(run_dir, report):
    """Write ``report.json`` and ``epochs.csv``."""
    (run_dir / REPORT_FILENAME).write_text(report.to_json() + "\n")
    (run_dir / EPOCHS_FILENAME).write_text(report.epochs_csv())


class RunCommands(object):
    """One seeded run of a method on a benchmark."""

    def __init__(self, run_config, threads=1, now=None):
        """Constructor.

        :param run_config: :class:`tacslab.helpers.run_config.RunConfig`
        :param threads: Evaluation worker threads.
        :param now: Timestamp for the run directory name.
        """
        self.run_config = run_config
        self.threads = threads
        self.now = now
        self.run_dir = None
        self.benchmark = None
        self.method = None
        self.report = None

    def generate_benchmark(self):
        """Generate the benchmark and build the method to train on it."""
        self.benchmark = generate(self.run_config.get_benchmark_spec())
        self.method = build_method(
            self.run_config.get_method(),
            self.benchmark.spec,
            self.run_config.get_hybrid_config(),
            baselines=self.run_config.get_baseline_config(),
            **self.run_config.get_network_sizes(),
        )
        return StepResponse(output=f"Dataset sha256 {self.benchmark.digest()}")

    def create_run_dir(self):
        """Create the run directory; echo the configuration and dataset hash."""
        self.run_dir = create_run_dir(
            self.run_config.get_out_dir(),
            self.run_config.get_method(),
            self.benchmark.spec.name,
            self.run_config.get_seed(),
            now=self.now,
        )
        self.run_config.write(self.run_dir)
        (self.run_dir / DIGEST_FILENAME).write_text(self.benchmark.digest() + "\n")
        return StepResponse(output=f"Run directory {self.run_dir}")

    def train_method(self):
        """Train and evaluate, flushing the report after every epoch.

        A non-finite loss aborts the run with :class:`NumericAbort` once
        the partial report is on disk.
        """
        config = self.run_config.get_hybrid_config()
        method = self.method
        echo = self.run_config.as_text_dict()

        def flush(report):
            self.report = report
            write_report(self.run_dir, report)

        with run_log(self.run_dir):
            try:
                report = train(
                    method,
                    self.benchmark,
                    config,
                    threads=self.threads,
                    on_epoch=flush,
                    config_echo=echo,
                )
            except NumericError as e:
                if self.report is None:
                    self.report = RunReport(
                        method=method.name,
                        seed=config.seed,
                        version=__version__,
                        config=echo,
                        dataset=self.benchmark.describe(),
                    )
                write_report(self.run_dir, self.report)
                logging.getLogger(__name__).error("numeric abort: %s", e)
                raise NumericAbort(f"Numeric abort in {self.run_dir}: {e}")
        flush(report)

        final = report.final
        digest = hash_file(self.run_dir / EPOCHS_FILENAME)
        return StepResponse(
            output=(
                f"{report.method} accuracy={final.accuracy:.4f} "
                f"after {report.summary['epochs_completed']} epochs, "
                f"epochs.csv sha256 {digest}"
            )
        )

    def steps(self):
        """Steps of the run."""
        method = self.run_config.get_method()
        seed = self.run_config.get_seed()
        return [
            FunctionStep(
                func=self.generate_benchmark, message="Generating benchmark..."
            ),
            FunctionStep(func=self.create_run_dir, message="Creating run directory..."),
            FunctionStep(
                func=self.train_method, message=f"Training {method} (seed {seed})..."
            ),
        ]
