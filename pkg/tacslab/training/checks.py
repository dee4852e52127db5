# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 tacslab contributors.
#
# tacslab is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Statistical and gradient checks bundled by ``tacslab verify``.

Every check takes a seed, draws from the ``verify`` substream only and
returns a :class:`CheckResult`, so a fixed seed reproduces the printed
statistics exactly.
"""

from dataclasses import dataclass, field

import numpy as np

from ..diffmath import (
    Parameter,
    check_operation,
    compare_gradients,
    gradcheck,
    numeric_gradient,
    ops,
)
from ..helpers.seeding import substream
from ..nets import SelectorNet, TaskNet, score_pool
from ..synthbench import CandidatePool
from .hybrid import (
    compute_rewards,
    gumbel_noise,
    gumbel_softmax_select,
    policy_loss,
    sample_actions,
    standardize_advantages,
)

GRADCHECK_INSTANCES = 20
GUMBEL_DRAWS = 200_000
GUMBEL_TEMPERATURE = 0.1
GUMBEL_MAX_TV = 0.01
BANDIT_REWARDS = (0.0, 0.5, 1.0)
BANDIT_SAMPLES = 100_000
SIGMA_BOUND = 3.0


@dataclass
class CheckResult:
    """Outcome of one check, with the statistics it was decided on."""

    name: str
    passed: bool
    statistics: dict = field(default_factory=dict)
    detail: str = ""

    def __str__(self):
        """One line per check."""
        status = "PASS" if self.passed else "FAIL"
        stats = ", ".join(f"{k}={_fmt(v)}" for k, v in self.statistics.items())
        text = f"[{status}] {self.name}"
        if stats:
            text += f": {stats}"
        if self.detail:
            text += f" ({self.detail})"
        return text


def _fmt(value):
    if isinstance(value, float):
        return f"{value:.6g}"
    if isinstance(value, (list, tuple)):
        return "(" + ", ".join(_fmt(v) for v in value) + ")"
    return str(value)


def operation_cases():
    """Name, operation and argument factory for every differentiable op."""
    mask = np.array([[False, True, False, False], [True, False, False, False]])
    return [
        ("matvec", ops.matvec, lambda r: [r.normal(size=(4, 3)), r.normal(size=3)]),
        (
            "matmul",
            ops.matmul,
            lambda r: [r.normal(size=(3, 2)), r.normal(size=(2, 4))],
        ),
        ("transpose", ops.transpose, lambda r: [r.normal(size=(2, 3))]),
        ("reshape", lambda a: ops.reshape(a, (3, 2)), lambda r: [r.normal(size=6)]),
        ("add", ops.add, lambda r: [r.normal(size=(3, 4)), r.normal(size=4)]),
        ("sub", ops.sub, lambda r: [r.normal(size=(3, 4)), r.normal(size=(3, 1))]),
        ("mul", ops.mul, lambda r: [r.normal(size=(3, 4)), r.normal(size=4)]),
        ("scale", lambda a: ops.scale(a, -2.5), lambda r: [r.normal(size=4)]),
        ("tanh", ops.tanh, lambda r: [r.normal(size=5)]),
        ("dot", ops.dot, lambda r: [r.normal(size=4), r.normal(size=4)]),
        (
            "concat",
            lambda a, b: ops.concat([a, b]),
            lambda r: [r.normal(size=(2, 3)), r.normal(size=(2, 2))],
        ),
        ("tile_rows", lambda v: ops.tile_rows(v, 3), lambda r: [r.normal(size=4)]),
        (
            "take_rows",
            lambda a: ops.take_rows(a, [2, 0, 2]),
            lambda r: [r.normal(size=(3, 2))],
        ),
        ("pick", lambda a: ops.pick(a, [1, 0, 3]), lambda r: [r.normal(size=(3, 4))]),
        ("sum", ops.sum_, lambda r: [r.normal(size=(2, 3))]),
        ("mean", ops.mean, lambda r: [r.normal(size=(2, 3))]),
        ("softmax", ops.softmax, lambda r: [r.normal(size=(2, 5))]),
        ("log_softmax", ops.log_softmax, lambda r: [r.normal(size=(2, 5))]),
        (
            "masked_softmax",
            lambda s: ops.softmax(ops.mask_fill(s, mask)),
            lambda r: [r.normal(size=(2, 4))],
        ),
        (
            "cross_entropy",
            lambda s: ops.cross_entropy(s, 2),
            lambda r: [r.normal(size=5)],
        ),
        (
            "cross_entropy_rows",
            lambda s: ops.cross_entropy_rows(s, [0, 3, 1]),
            lambda r: [r.normal(size=(3, 4))],
        ),
    ]


def _toy_problem(rng, d_in=4, pool_size=3, classes=3):
    selector = SelectorNet(d_in, 5, 3, rng=rng)
    tasknet = TaskNet(d_in, 5, classes, rng=rng)
    tasknet.null_context.value[...] = rng.normal(size=d_in)
    pool = CandidatePool(
        rng.normal(size=(pool_size, d_in)),
        rng.integers(classes, size=pool_size),
        np.arange(pool_size) + 100,
        classes=classes,
    )
    x_q = rng.normal(size=d_in)
    label = int(rng.integers(classes))
    return selector, tasknet, pool, x_q, label


def soft_composite_loss(selector, tasknet, x_q, pool, label):
    """Task loss of the query paired with its probability-weighted context."""
    utility = score_pool(selector, x_q, pool)
    weights = ops.softmax(utility.node)
    return tasknet.task_loss(x_q, ops.matvec(pool.features.T, weights), label)


def check_gradients(seed, instances=GRADCHECK_INSTANCES):
    """Gradcheck every op and the composed selector and task-network loss."""
    rng = substream(seed, "verify", 0)
    results = []
    for name, op, make_args in operation_cases():
        worst = 0.0
        for _ in range(instances):
            worst = max(worst, check_operation(name, op, make_args(rng), rng).max_error)
        results.append(_gradient_result(f"gradcheck {name}", worst))

    worst = 0.0
    for _ in range(instances):
        selector, tasknet, pool, x_q, label = _toy_problem(rng)
        report = gradcheck(
            lambda: soft_composite_loss(selector, tasknet, x_q, pool, label),
            selector.parameters() + tasknet.parameters(),
        )
        worst = max(worst, report.max_error)
    results.append(_gradient_result("gradcheck selector+tasknet", worst))
    return results


def _gradient_result(name, worst, tolerance=1e-4):
    return CheckResult(
        name=name,
        passed=worst < tolerance,
        statistics={"max_relative_error": worst},
    )


def check_straight_through(seed, temperatures=(GUMBEL_TEMPERATURE, 1.0)):
    """Straight-through gradients against finite differences of the soft surrogate.

    For fixed noise ``g``, selector gradients of the hard-sample loss must
    equal the gradients of ``<c, softmax((s + g) / tau)>``, where ``c`` is
    the loss gradient w.r.t. the one-hot weights held at the hard sample.
    """
    rng = substream(seed, "verify", 1)
    worst = 0.0
    for temperature in temperatures:
        for _ in range(GRADCHECK_INSTANCES):
            selector, tasknet, pool, x_q, label = _toy_problem(rng)
            noise = gumbel_noise(rng, len(pool))
            params = selector.parameters()

            for p in params:
                p.zero_grad()
            utility = score_pool(selector, x_q, pool)
            weights, index = gumbel_softmax_select(
                utility.node, temperature, noise=noise
            )
            loss = tasknet.task_loss(x_q, ops.matvec(pool.features.T, weights), label)
            loss.backward()
            analytic = {p.name: p.grad.copy() for p in params}

            context = Parameter("context", pool.features[index].copy())
            tasknet.task_loss(x_q, context.node, label).backward()
            weight_grad = pool.features @ context.grad

            def surrogate():
                scores = score_pool(selector, x_q, pool).node
                soft = ops.softmax(ops.scale(ops.add(scores, noise), 1.0 / temperature))
                return ops.dot(soft, weight_grad)

            report = compare_gradients(analytic, numeric_gradient(surrogate, params))
            worst = max(worst, report.max_error)
            tasknet.zero_grad()
    return CheckResult(
        name="straight-through contract",
        passed=worst < 1e-4,
        statistics={"max_relative_error": worst},
    )


def check_gumbel_law(seed, draws=GUMBEL_DRAWS, temperature=GUMBEL_TEMPERATURE):
    """Hard-sample frequencies of the Gumbel-max draw against softmax."""
    rng = substream(seed, "verify", 2)
    logits = np.log([1.0, 2.0, 3.0, 4.0])
    expected = np.exp(logits) / np.exp(logits).sum()
    scores = np.tile(logits, (draws, 1))
    _, index = gumbel_softmax_select(scores, temperature, rng)
    frequencies = np.bincount(index, minlength=len(logits)) / draws
    sigma = np.sqrt(expected * (1.0 - expected) / draws)
    z = np.abs(frequencies - expected) / sigma
    tv = 0.5 * float(np.abs(frequencies - expected).sum())
    return CheckResult(
        name="gumbel hard-sample law",
        passed=bool((z <= SIGMA_BOUND).all() and tv < GUMBEL_MAX_TV),
        statistics={
            "frequencies": [float(f) for f in frequencies],
            "max_z": float(z.max()),
            "tv_distance": tv,
        },
    )


def bandit_gradient(rewards, samples, rng):
    """Policy-loss gradient estimates on a uniform bandit.

    :returns: ``(estimate, per_sample, analytic)``; ``estimate`` is the
        negated policy-loss gradient, ``per_sample`` the single-sample
        estimates it averages and ``analytic`` the exact gradient of the
        expected reward.
    """
    rewards = np.asarray(rewards, dtype=np.float64)
    arms = len(rewards)
    logits = Parameter("bandit.logits", np.zeros(arms))
    pi = np.full(arms, 1.0 / arms)
    actions = sample_actions(np.tile(pi, (samples, 1)), rng)
    advantages = standardize_advantages(rewards[actions], "raw")
    policy_loss(ops.tile_rows(logits.node, samples), actions, advantages).backward()
    per_sample = (np.eye(arms)[actions] - pi) * advantages[:, None]
    analytic = pi * (rewards - pi @ rewards)
    return -logits.grad, per_sample, analytic


def check_estimator_bias(seed, rewards=BANDIT_REWARDS, samples=BANDIT_SAMPLES):
    """Mean of single-sample policy gradients against the analytic gradient."""
    rng = substream(seed, "verify", 3)
    estimate, per_sample, analytic = bandit_gradient(rewards, samples, rng)
    standard_error = per_sample.std(axis=0, ddof=1) / np.sqrt(samples)
    z = np.abs(estimate - analytic) / np.maximum(standard_error, 1e-300)
    return CheckResult(
        name="policy-gradient unbiasedness",
        passed=bool((z <= SIGMA_BOUND).all()),
        statistics={
            "estimate": [float(v) for v in estimate],
            "analytic": [float(v) for v in analytic],
            "max_z": float(z.max()),
        },
    )


def check_detachment(seed, batch_size=8):
    """Policy loss alone leaves every task-network gradient at exactly zero."""
    rng = substream(seed, "verify", 4)
    selector, tasknet, pool, _, _ = _toy_problem(rng, pool_size=6)
    x_q = rng.normal(size=(batch_size, selector.d_in))
    labels = rng.integers(tasknet.classes, size=batch_size)
    embedded_pool = ops.transpose(selector.embed(pool.features))
    scores = ops.matmul(selector.embed(x_q), embedded_pool)
    actions = sample_actions(ops.softmax(scores).value, rng)
    rewards = compute_rewards(tasknet, x_q, pool.features[actions], labels)
    advantages = standardize_advantages(rewards)
    selector.zero_grad()
    tasknet.zero_grad()
    ops.scale(policy_loss(scores, actions, advantages), 0.5).backward()
    tasknet_norm = float(sum(np.abs(p.grad).sum() for p in tasknet.parameters()))
    selector_norm = float(sum(np.abs(p.grad).sum() for p in selector.parameters()))
    return CheckResult(
        name="policy detachment",
        passed=tasknet_norm == 0.0 and selector_norm > 0.0,
        statistics={
            "tasknet_grad_l1": tasknet_norm,
            "selector_grad_l1": selector_norm,
        },
    )


def check_standardization(seed, batches=200):
    """Batch statistics of standardized advantages."""
    rng = substream(seed, "verify", 5)
    worst_mean = worst_std = 0.0
    for _ in range(batches):
        size = int(rng.integers(2, 65))
        scale = float(np.exp(rng.uniform(np.log(0.1), np.log(10.0))))
        draws = rng.normal(size=size)
        rewards = scale * (draws - draws.mean()) / draws.std() + rng.normal()
        advantages = standardize_advantages(rewards)
        worst_mean = max(worst_mean, abs(float(advantages.mean())))
        worst_std = max(worst_std, abs(float(advantages.std()) - 1.0))
    flat = standardize_advantages(np.full(7, 0.25))
    passed = worst_mean <= 1e-9 and worst_std <= 1e-6 and not flat.any()
    return CheckResult(
        name="advantage standardization",
        passed=bool(passed),
        statistics={
            "max_abs_mean": worst_mean,
            "max_std_deviation": worst_std,
            "zero_variance_max": float(np.abs(flat).max()),
        },
    )


CHECKS = (
    ("gradients", check_gradients),
    ("straight_through", check_straight_through),
    ("gumbel_law", check_gumbel_law),
    ("estimator_bias", check_estimator_bias),
    ("detachment", check_detachment),
    ("standardization", check_standardization),
)


def run_checks(seed, names=None):
    """Run the named checks (all by default) and flatten their results."""
    results = []
    for name, check in CHECKS:
        if names is not None and name not in names:
            continue
        outcome = check(seed)
        results.extend(outcome if isinstance(outcome, list) else [outcome])
    return results
