# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 tacslab contributors.
#
# tacslab is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Finite-difference gradient checking."""

from dataclasses import dataclass, field

import numpy as np

from ..errors import NumericError
from . import ops
from .node import Node, Parameter

DEFAULT_STEP = 1e-5
DEFAULT_TOLERANCE = 1e-4
RELATIVE_FLOOR = 1e-3


def relative_error(analytic, numeric):
    """Elementwise ``|a - n| / max(|a|, |n|, 1e-3)``."""
    analytic = np.asarray(analytic, dtype=np.float64)
    numeric = np.asarray(numeric, dtype=np.float64)
    scale = np.maximum(np.maximum(np.abs(analytic), np.abs(numeric)), RELATIVE_FLOOR)
    return np.abs(analytic - numeric) / scale


@dataclass
class GradcheckReport:
    """Per-parameter maximum relative errors of one check."""

    errors: dict = field(default_factory=dict)
    tolerance: float = DEFAULT_TOLERANCE
    name: str = None

    @property
    def passed(self):
        """True iff every parameter is within tolerance."""
        return all(err <= self.tolerance for err in self.errors.values())

    @property
    def max_error(self):
        """Largest error over all parameters."""
        return max(self.errors.values(), default=0.0)

    @property
    def failures(self):
        """Names of parameters over tolerance."""
        return [name for name, err in self.errors.items() if err > self.tolerance]

    def __str__(self):
        """Human-readable one-liner."""
        status = "ok" if self.passed else "FAILED"
        label = f"{self.name}: " if self.name else ""
        return f"{label}{status} (max relative error {self.max_error:.3e})"


def _evaluate(f):
    out = f()
    value = out.value if isinstance(out, Node) else np.asarray(out, dtype=np.float64)
    return float(value)


def numeric_gradient(f, params, step=DEFAULT_STEP):
    """Central differences of ``f`` w.r.t. every entry of ``params``.

    Values are perturbed in place and restored.
    """
    gradients = {}
    for p in params:
        value = p.node.value
        numeric = np.zeros_like(value)
        for index in np.ndindex(value.shape):
            original = value[index]
            value[index] = original + step
            upper = _evaluate(f)
            value[index] = original - step
            lower = _evaluate(f)
            value[index] = original
            numeric[index] = (upper - lower) / (2.0 * step)
        gradients[p.name] = numeric
    return gradients


def gradcheck(
    f, params, step=DEFAULT_STEP, tolerance=DEFAULT_TOLERANCE, name=None
):
    """Compare analytic gradients of ``f`` with central differences.

    :param f: Zero-argument callable returning a scalar node built from
        ``params``.
    :param params: List of :class:`Parameter` to perturb in place.
    :param step: Finite-difference step.
    :param tolerance: Maximum accepted relative error.
    :returns: A :class:`GradcheckReport`.
    """
    for p in params:
        p.zero_grad()
    out = f()
    if not np.all(np.isfinite(out.value)):
        raise NumericError("gradcheck: non-finite function value at base point")
    out.backward()
    analytic = {p.name: p.grad.copy() for p in params}
    for p in params:
        p.zero_grad()
    return compare_gradients(
        analytic, numeric_gradient(f, params, step), tolerance, name
    )


def compare_gradients(analytic, numeric, tolerance=DEFAULT_TOLERANCE, name=None):
    """Report of per-parameter maximum relative errors."""
    report = GradcheckReport(tolerance=tolerance, name=name)
    for key, expected in numeric.items():
        errors = relative_error(analytic[key], expected)
        report.errors[key] = float(errors.max()) if errors.size else 0.0
    return report


def check_operation(
    name, op, arrays, rng, step=DEFAULT_STEP, tolerance=DEFAULT_TOLERANCE
):
    """Gradcheck ``op`` applied to ``arrays``.

    The output is reduced to a scalar through a fixed random projection,
    so every output coordinate contributes to the check.
    """
    params = [
        Parameter(f"{name}.arg{i}", np.array(a, dtype=np.float64))
        for i, a in enumerate(arrays)
    ]
    probe = op(*[p.node for p in params])
    weights = rng.standard_normal(probe.shape)

    def f():
        return ops.sum_(ops.mul(op(*[p.node for p in params]), weights))

    return gradcheck(f, params, step=step, tolerance=tolerance, name=name)
