# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 tacslab contributors.
#
# tacslab is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Command line interface of tacslab."""

import click

from ..commands import (
    CompareCommands,
    ExportCommands,
    PlotCommands,
    RunCommands,
    VerifyCommands,
)
from ..errors import TacsLabConfigError
from ..helpers.env import get_threads
from ..helpers.run_config import RunConfig
from ..synthbench import BENCHMARKS
from ..synthbench.snapshot import FORMATS
from ..training import ABLATIONS, METHODS
from ..training.baselines import KIND_ALIASES
from .utils import combine_decorators, handle_response, run_steps

ALL_SEEDS = (17, 23, 42)

config_options = combine_decorators(
    click.option(
        "--config",
        "config_path",
        type=click.Path(exists=True, dir_okay=False),
        default=None,
        help="Run configuration file (defaults apply to missing keys).",
    ),
    click.option(
        "--benchmark",
        type=click.Choice(BENCHMARKS),
        default=None,
        help="Benchmark, overrides [benchmark] name.",
    ),
    click.option(
        "--seed",
        type=int,
        default=None,
        help="Run seed, overrides [run] seed.",
    ),
)


@click.group()
@click.version_option()
@click.pass_context
def tacslab(ctx):
    """Task-aligned context selection experiments."""


@tacslab.command()
@config_options
@click.option(
    "--method",
    type=click.Choice(METHODS + tuple(KIND_ALIASES)),
    default=None,
    help="Method tag, overrides [run] method.",
)
@click.option(
    "--ablation",
    type=click.Choice(ABLATIONS),
    default=None,
    help="Trainer ablation, overrides [trainer] ablation.",
)
@click.option(
    "--out",
    type=click.Path(file_okay=False),
    default=None,
    help="Directory receiving the run directory, overrides [run] out.",
)
@click.option(
    "--all-seeds",
    default=False,
    is_flag=True,
    help=f"Run seeds {', '.join(map(str, ALL_SEEDS))} one after the other.",
)
def run(config_path, benchmark, seed, method, ablation, out, all_seeds):
    """Train and evaluate one method, writing a new run directory."""
    if all_seeds and seed is not None:
        raise TacsLabConfigError("--seed and --all-seeds are mutually exclusive.")
    run_config = RunConfig(
        config_path,
        method=method,
        benchmark=benchmark,
        seed=seed,
        ablation=ablation,
        out=out,
    )
    threads = get_threads()
    seeds = ALL_SEEDS if all_seeds else (run_config.get_seed(),)
    for run_seed in seeds:
        commands = RunCommands(run_config.with_seed(run_seed), threads=threads)
        run_steps(
            commands.steps(),
            fail_message=f"Run with seed {run_seed} failed.",
            success_message=f"Run with seed {run_seed} finished.",
        )


@tacslab.command()
@click.argument("run_dirs", nargs=-1, type=click.Path())
@click.option(
    "--out",
    type=click.Path(file_okay=False),
    default=None,
    help="Also write comparison.csv into this directory.",
)
def compare(run_dirs, out):
    """Compare final metrics of finished runs."""
    response = CompareCommands(run_dirs, out_dir=out).compare()
    handle_response(response, fail_message="Comparison failed.")


verify_seed = click.option(
    "--seed",
    type=int,
    default=17,
    show_default=True,
    help="Seed of the verification draws.",
)


@tacslab.command()
@verify_seed
def verify(seed):
    """Run gradient, sampling and estimator checks."""
    click.secho("Running verification checks...", fg="green")
    response = VerifyCommands(seed).verify()
    handle_response(response, fail_message="Verification failed.")


@tacslab.command()
@verify_seed
def gradcheck(seed):
    """Check every differentiable operation against finite differences."""
    click.secho("Running gradient checks...", fg="green")
    response = VerifyCommands(seed).gradcheck()
    handle_response(response, fail_message="Gradient check failed.")


@tacslab.command()
@click.argument("run_dir", type=click.Path(exists=True, file_okay=False))
def plot(run_dir):
    """Write loss and accuracy curves of a run as curves.svg."""
    handle_response(PlotCommands(run_dir).plot(), fail_message="Plot failed.")


@tacslab.command("export-dataset")
@config_options
@click.option(
    "--out",
    type=click.Path(file_okay=False),
    required=True,
    help="Directory to write the snapshot into.",
)
@click.option(
    "--format",
    "fmt",
    type=click.Choice(FORMATS),
    default="bin",
    show_default=True,
)
def export_dataset(config_path, benchmark, seed, out, fmt):
    """Write the benchmark splits, pool and oracle to disk."""
    run_config = RunConfig(config_path, benchmark=benchmark, seed=seed)
    response = ExportCommands(run_config, out, fmt=fmt).export()
    handle_response(response, fail_message="Export failed.")
