# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 tacslab contributors.
#
# tacslab is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Dataset snapshot export."""

from pathlib import Path

from ..helpers.response import StepResponse
from ..synthbench import export_benchmark, generate


class ExportCommands(object):
    """Generate a benchmark and write its splits to disk."""

    def __init__(self, run_config, out_dir, fmt="bin"):
        """Constructor."""
        self.run_config = run_config
        self.out_dir = Path(out_dir)
        self.fmt = fmt

    def export(self):
        """Write the snapshot files."""
        benchmark = generate(self.run_config.get_benchmark_spec())
        written = export_benchmark(benchmark, self.out_dir, fmt=self.fmt)
        names = ", ".join(p.name for p in written)
        return StepResponse(
            output=f"Exported {benchmark.spec.name} to {self.out_dir}: {names}"
        )
