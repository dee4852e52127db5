# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 tacslab contributors.
#
# tacslab is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Run configuration file."""

import math
import re
from configparser import (
    ConfigParser,
    Error,
    MissingSectionHeaderError,
    ParsingError,
)
from pathlib import Path

from ..errors import TacsLabConfigError
from ..synthbench import BENCHMARKS, BenchmarkSpec
from ..training import (
    ABLATIONS,
    ADVANTAGE_MODES,
    METHODS,
    BaselineConfig,
    HybridConfig,
)
from ..training.baselines import ENCODERS, KIND_ALIASES


def _choice(*choices):
    def parse(text):
        text = KIND_ALIASES.get(text, text)
        if text not in choices:
            raise ValueError(f"expected one of {', '.join(choices)}")
        return text

    return parse


def _integer(text):
    if not re.fullmatch(r"[+-]?\d+", text):
        raise ValueError("expected an integer")
    return int(text)


def _seed(text):
    value = _integer(text)
    if value < 0:
        raise ValueError("expected a non-negative integer")
    return value


def _real(text):
    value = float(text)
    if not math.isfinite(value):
        raise ValueError("expected a finite number")
    return value


def _emit(value):
    if isinstance(value, float):
        return repr(value)
    return str(value)


class RunConfig(object):
    """Effective configuration of one run.

    Wraps a ``key = value`` file with one section per module. Every key
    has a default, so a run without a config file is fully specified.
    Values are kept typed; :meth:`write` emits them back so that reading
    the written file gives an equal configuration.
    """

    CONFIG_FILENAME = "config.ini"
    RUN_SECTION = "run"
    BENCHMARK_SECTION = "benchmark"
    SELECTOR_SECTION = "selector"
    TASKNET_SECTION = "tasknet"
    TRAINER_SECTION = "trainer"
    BASELINES_SECTION = "baselines"

    SCHEMA = {
        RUN_SECTION: {
            "method": (_choice(*METHODS), "tacs"),
            "seed": (_seed, 17),
            "out": (str, "runs"),
        },
        BENCHMARK_SECTION: {
            "name": (_choice(*BENCHMARKS), BenchmarkSpec.name),
            "classes": (_integer, BenchmarkSpec.classes),
            "d_in": (_integer, BenchmarkSpec.d_in),
            "keys": (_integer, BenchmarkSpec.keys),
            "pool_size": (_integer, BenchmarkSpec.pool_size),
            "train_size": (_integer, BenchmarkSpec.train_size),
            "eval_size": (_integer, BenchmarkSpec.eval_size),
            "distractor_strength": (_real, BenchmarkSpec.distractor_strength),
            "eval_key_fraction": (_real, BenchmarkSpec.eval_key_fraction),
        },
        SELECTOR_SECTION: {
            "hidden": (_integer, 64),
            "embedding_dim": (_integer, 16),
        },
        TASKNET_SECTION: {
            "hidden": (_integer, 64),
        },
        TRAINER_SECTION: {
            "temperature": (_real, HybridConfig.temperature),
            "hybrid_weight": (_real, HybridConfig.hybrid_weight),
            "epochs": (_integer, HybridConfig.epochs),
            "batch_size": (_integer, HybridConfig.batch_size),
            "lr": (_real, HybridConfig.lr),
            "momentum": (_real, HybridConfig.momentum),
            "advantage_mode": (_choice(*ADVANTAGE_MODES), HybridConfig.advantage_mode),
            "ablation": (_choice(*ABLATIONS), HybridConfig.ablation),
        },
        BASELINES_SECTION: {
            "top_k": (_integer, BaselineConfig.top_k),
            "feat_avg_encoder": (_choice(*ENCODERS), BaselineConfig.feat_avg_encoder),
            "noise_sigma": (_real, BaselineConfig.noise_sigma),
        },
    }

    # CLI option name -> (section, key)
    OVERRIDES = {
        "method": (RUN_SECTION, "method"),
        "seed": (RUN_SECTION, "seed"),
        "out": (RUN_SECTION, "out"),
        "benchmark": (BENCHMARK_SECTION, "name"),
        "ablation": (TRAINER_SECTION, "ablation"),
    }

    def __init__(self, config_path=None, **overrides):
        """Constructor.

        :param config_path: Path to a config file, or ``None`` for defaults.
        :param overrides: Values given on the command line; ``None`` values
            are ignored.
        """
        self.config_path = Path(config_path) if config_path else None
        self.values = {
            section: {key: default for key, (_, default) in keys.items()}
            for section, keys in self.SCHEMA.items()
        }
        if self.config_path is not None:
            self._read(self.config_path)
        for option, value in overrides.items():
            if value is None:
                continue
            if option not in self.OVERRIDES:
                raise TacsLabConfigError(f"unknown override '{option}'")
            section, key = self.OVERRIDES[option]
            self.set(section, key, str(value))
        self.validate()

    def _read(self, path):
        try:
            text = path.read_text()
        except FileNotFoundError as e:
            raise TacsLabConfigError(f"Missing config file '{e.filename}'.")

        parser = ConfigParser(interpolation=None)
        try:
            parser.read_string(text, source=str(path))
        except MissingSectionHeaderError as e:
            raise TacsLabConfigError(
                f"{path}:{e.lineno}: key outside of any section: {e.line.strip()!r}"
            )
        except ParsingError as e:
            lineno, line = e.errors[0]
            raise TacsLabConfigError(f"{path}:{lineno}: cannot parse line {line}")
        except Error as e:
            lineno = getattr(e, "lineno", None)
            where = f"{path}:{lineno}" if lineno else str(path)
            raise TacsLabConfigError(f"{where}: {e.message}")

        if parser.defaults():
            raise TacsLabConfigError(
                f"{path}:{self._locate(text, parser.default_section)}: "
                f"unknown section [{parser.default_section}]"
            )
        for section in parser.sections():
            if section not in self.SCHEMA:
                raise TacsLabConfigError(
                    f"{path}:{self._locate(text, section)}: unknown section [{section}]"
                )
            for key, value in parser.items(section):
                try:
                    self.set(section, key, value)
                except TacsLabConfigError as e:
                    raise TacsLabConfigError(
                        f"{path}:{self._locate(text, section, key)}: {e.message}"
                    )

    @staticmethod
    def _locate(text, section, key=None):
        """Line number of a section header or of a key inside a section."""
        current = None
        for lineno, line in enumerate(text.splitlines(), start=1):
            stripped = line.strip()
            header = re.fullmatch(r"\[(.+)\]", stripped)
            if header:
                current = header.group(1).strip()
                if key is None and current == section:
                    return lineno
                continue
            if key is not None and current == section:
                name = re.split(r"[=:]", stripped, maxsplit=1)[0].strip().lower()
                if name == key:
                    return lineno
        return "?"

    def set(self, section, key, text):
        """Parse ``text`` and store it as ``[section] key``."""
        if section not in self.SCHEMA:
            raise TacsLabConfigError(f"unknown section [{section}]")
        if key not in self.SCHEMA[section]:
            raise TacsLabConfigError(f"[{section}] unknown key '{key}'")
        parse, _ = self.SCHEMA[section][key]
        try:
            self.values[section][key] = parse(text.strip())
        except ValueError as e:
            raise TacsLabConfigError(f"[{section}] {key} = {text!r}: {e}")

    def get(self, section, key):
        """Typed value of ``[section] key``."""
        return self.values[section][key]

    def validate(self):
        """Check value domains by building every derived object."""
        checks = (
            (self.BENCHMARK_SECTION, self.get_benchmark_spec),
            (self.TRAINER_SECTION, self.get_hybrid_config),
            (self.BASELINES_SECTION, self.get_baseline_config),
        )
        for section, build in checks:
            try:
                build()
            except TacsLabConfigError as e:
                raise TacsLabConfigError(f"[{section}] {e.message}")
        for section, key in (
            (self.SELECTOR_SECTION, "hidden"),
            (self.SELECTOR_SECTION, "embedding_dim"),
            (self.TASKNET_SECTION, "hidden"),
        ):
            if self.get(section, key) < 1:
                raise TacsLabConfigError(f"[{section}] {key} must be >= 1")
        return self

    def get_method(self):
        """Returns the method tag."""
        return self.get(self.RUN_SECTION, "method")

    def get_seed(self):
        """Returns the run seed; every random stream descends from it."""
        return self.get(self.RUN_SECTION, "seed")

    def get_out_dir(self):
        """Returns the directory run directories are created in."""
        return Path(self.get(self.RUN_SECTION, "out"))

    def get_benchmark_spec(self):
        """Returns the :class:`BenchmarkSpec` seeded with the run seed."""
        return BenchmarkSpec(
            seed=self.get_seed(), **self.values[self.BENCHMARK_SECTION]
        ).validate()

    def get_hybrid_config(self):
        """Returns the :class:`HybridConfig` seeded with the run seed."""
        return HybridConfig(
            seed=self.get_seed(), **self.values[self.TRAINER_SECTION]
        ).validate()

    def get_baseline_config(self):
        """Returns the :class:`BaselineConfig`."""
        return BaselineConfig(**self.values[self.BASELINES_SECTION]).validate()

    def get_network_sizes(self):
        """Keyword arguments for :func:`tacslab.training.build_method`."""
        return dict(
            selector_hidden=self.get(self.SELECTOR_SECTION, "hidden"),
            embedding_dim=self.get(self.SELECTOR_SECTION, "embedding_dim"),
            tasknet_hidden=self.get(self.TASKNET_SECTION, "hidden"),
        )

    def with_seed(self, seed):
        """Copy of this configuration with another seed."""
        copy = RunConfig.__new__(RunConfig)
        copy.config_path = self.config_path
        copy.values = {section: dict(keys) for section, keys in self.values.items()}
        copy.set(self.RUN_SECTION, "seed", str(seed))
        return copy

    def as_text_dict(self):
        """Section -> key -> emitted text; the run report's config echo."""
        return {
            section: {key: _emit(value) for key, value in keys.items()}
            for section, keys in self.values.items()
        }

    def __eq__(self, other):
        """Equal when every typed value is equal."""
        return isinstance(other, RunConfig) and self.values == other.values

    def write(self, path):
        """Write the effective configuration.

        :param path: File to write, or a directory to write
            ``config.ini`` into.
        :return: Path of the written file.
        """
        path = Path(path)
        if path.is_dir():
            path = path / self.CONFIG_FILENAME
        config_parser = ConfigParser(interpolation=None)
        for section, keys in self.as_text_dict().items():
            config_parser[section] = keys
        with open(path, "w") as configfile:
            config_parser.write(configfile)
        return path
