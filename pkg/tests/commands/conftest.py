# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 tacslab contributors.
#
# tacslab is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Commands tests fixtures."""

import pytest

from tacslab.training import EpochRecord, RunReport

DATASET = {"name": "keymatch", "classes": 4, "d_in": 32, "pool_size": 64}


def _record(epoch, accuracy, oracle_agreement):
    return EpochRecord(
        epoch=epoch,
        l_grad=1.5 - 0.5 * epoch,
        l_policy=0.1,
        l_total=1.55 - 0.5 * epoch,
        accuracy=accuracy,
        mean_class_accuracy=accuracy,
        oracle_agreement=oracle_agreement,
        cross_class_rate=None if oracle_agreement is None else 0.2,
        mean_entropy=None if oracle_agreement is None else 1.0,
    )


@pytest.fixture
def write_run(tmp_path):
    """Factory writing a finished two-epoch run directory."""

    def _write_run(
        name,
        method,
        seed,
        accuracy,
        ablation="full",
        oracle_agreement=0.5,
        dataset=None,
    ):
        run_dir = tmp_path / name
        run_dir.mkdir()
        report = RunReport(
            method=method,
            seed=seed,
            version="0.0.0",
            config={"trainer": {"ablation": ablation}},
            dataset=dict(dataset or DATASET, seed=seed, dataset_sha256=f"sha{seed}"),
        )
        for epoch, value in enumerate((0.25, accuracy - 0.1, accuracy)):
            report.add_epoch(_record(epoch, value, oracle_agreement))
        report.completed = True
        (run_dir / "report.json").write_text(report.to_json())
        return run_dir

    return _write_run
