# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 tacslab contributors.
#
# tacslab is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Differentiable operations on :class:`~tacslab.diffmath.node.Node` values.

Every operation takes nodes (or plain arrays, promoted to constants) and
returns a new node whose parents carry the vector-Jacobian products.
Values are float64 throughout.
"""

import numpy as np

from ..errors import EmptyPoolError, InvalidArgumentError, NumericError, ShapeError
from .node import Node, make_node


def constant(value):
    """Wrap an array as a node that never requires gradients."""
    return Node(value)


def as_node(value):
    """Promote an array to a constant node; nodes pass through."""
    return value if isinstance(value, Node) else Node(value)


def _unbroadcast(grad, shape):
    """Sum ``grad`` down to ``shape`` after numpy broadcasting."""
    while grad.ndim > len(shape):
        grad = grad.sum(axis=0)
    for axis, size in enumerate(shape):
        if size == 1 and grad.shape[axis] != 1:
            grad = grad.sum(axis=axis, keepdims=True)
    return grad


def _broadcast_shape(op, a, b):
    try:
        return np.broadcast_shapes(a.shape, b.shape)
    except ValueError:
        raise ShapeError(op, a.shape, b.shape)


def matvec(W, x):
    """Matrix-vector product ``W @ x``."""
    W, x = as_node(W), as_node(x)
    if W.value.ndim != 2 or x.value.ndim != 1 or W.shape[1] != x.shape[0]:
        raise ShapeError("matvec", W.shape, x.shape)
    Wv, xv = W.value, x.value
    return make_node(
        Wv @ xv,
        [(W, lambda g: np.outer(g, xv)), (x, lambda g: Wv.T @ g)],
    )


def matmul(A, B):
    """Matrix product of two 2-D nodes."""
    A, B = as_node(A), as_node(B)
    if A.value.ndim != 2 or B.value.ndim != 2 or A.shape[1] != B.shape[0]:
        raise ShapeError("matmul", A.shape, B.shape)
    Av, Bv = A.value, B.value
    return make_node(Av @ Bv, [(A, lambda g: g @ Bv.T), (B, lambda g: Av.T @ g)])


def transpose(A):
    """Transpose of a 2-D node."""
    A = as_node(A)
    return make_node(A.value.T, [(A, lambda g: g.T)])


def reshape(a, shape):
    """Reshape without copying data."""
    a = as_node(a)
    try:
        value = a.value.reshape(shape)
    except ValueError:
        raise ShapeError("reshape", a.shape, tuple(shape))
    return make_node(value, [(a, lambda g: g.reshape(a.shape))])


def add(a, b):
    """Elementwise sum with numpy broadcasting."""
    a, b = as_node(a), as_node(b)
    _broadcast_shape("add", a, b)
    return make_node(
        a.value + b.value,
        [
            (a, lambda g: _unbroadcast(g, a.shape)),
            (b, lambda g: _unbroadcast(g, b.shape)),
        ],
    )


def sub(a, b):
    """Elementwise difference with numpy broadcasting."""
    a, b = as_node(a), as_node(b)
    _broadcast_shape("sub", a, b)
    return make_node(
        a.value - b.value,
        [
            (a, lambda g: _unbroadcast(g, a.shape)),
            (b, lambda g: -_unbroadcast(g, b.shape)),
        ],
    )


def mul(a, b):
    """Elementwise product with numpy broadcasting."""
    a, b = as_node(a), as_node(b)
    _broadcast_shape("mul", a, b)
    av, bv = a.value, b.value
    return make_node(
        av * bv,
        [
            (a, lambda g: _unbroadcast(g * bv, a.shape)),
            (b, lambda g: _unbroadcast(g * av, b.shape)),
        ],
    )


def scale(a, factor):
    """Multiply by a constant scalar."""
    a = as_node(a)
    factor = float(factor)
    return make_node(a.value * factor, [(a, lambda g: g * factor)])


def tanh(a):
    """Elementwise hyperbolic tangent."""
    a = as_node(a)
    y = np.tanh(a.value)
    return make_node(y, [(a, lambda g: g * (1.0 - y * y))])


def dot(a, b):
    """Inner product of two vectors."""
    a, b = as_node(a), as_node(b)
    if a.value.ndim != 1 or a.shape != b.shape:
        raise ShapeError("dot", a.shape, b.shape)
    av, bv = a.value, b.value
    return make_node(np.dot(av, bv), [(a, lambda g: g * bv), (b, lambda g: g * av)])


def concat(nodes, axis=-1):
    """Concatenate nodes along ``axis``."""
    nodes = [as_node(n) for n in nodes]
    try:
        value = np.concatenate([n.value for n in nodes], axis=axis)
    except ValueError:
        raise ShapeError("concat", *[n.shape for n in nodes])
    bounds = np.cumsum([n.shape[axis] for n in nodes])[:-1]

    def _slice(i):
        return lambda g: np.split(g, bounds, axis=axis)[i]

    return make_node(value, [(n, _slice(i)) for i, n in enumerate(nodes)])


def tile_rows(v, rows):
    """Stack ``rows`` copies of vector ``v`` into a matrix."""
    v = as_node(v)
    if v.value.ndim != 1:
        raise ShapeError("tile_rows", v.shape)
    value = np.tile(v.value, (rows, 1))
    return make_node(value, [(v, lambda g: g.sum(axis=0))])


def take_rows(A, index):
    """Gather rows ``A[index]``."""
    A = as_node(A)
    index = np.asarray(index, dtype=np.int64)

    def _vjp(g):
        out = np.zeros_like(A.value)
        np.add.at(out, index, g)
        return out

    return make_node(A.value[index], [(A, _vjp)])


def pick(A, columns):
    """Gather one entry per row, ``A[b, columns[b]]``."""
    A = as_node(A)
    columns = np.asarray(columns, dtype=np.int64)
    if A.value.ndim != 2 or columns.shape != (A.shape[0],):
        raise ShapeError("pick", A.shape, columns.shape)
    rows = np.arange(A.shape[0])

    def _vjp(g):
        out = np.zeros_like(A.value)
        out[rows, columns] = g
        return out

    return make_node(A.value[rows, columns], [(A, _vjp)])


def sum_(a):
    """Sum of all entries."""
    a = as_node(a)
    return make_node(a.value.sum(), [(a, lambda g: np.full(a.shape, float(g)))])


def mean(a):
    """Mean of all entries."""
    a = as_node(a)
    n = a.value.size
    return make_node(a.value.mean(), [(a, lambda g: np.full(a.shape, float(g) / n))])


def mask_fill(s, mask):
    """Set masked entries to -inf; they receive no gradient."""
    s = as_node(s)
    mask = np.asarray(mask, dtype=bool)
    if mask.shape != s.shape:
        raise ShapeError("mask_fill", s.shape, mask.shape)
    return make_node(
        np.where(mask, -np.inf, s.value), [(s, lambda g: np.where(mask, 0.0, g))]
    )


def straight_through(hard, soft):
    """Forward ``hard``, backward through ``soft``."""
    soft = as_node(soft)
    hard = np.asarray(hard, dtype=np.float64)
    if hard.shape != soft.shape:
        raise ShapeError("straight_through", hard.shape, soft.shape)
    return make_node(hard, [(soft, lambda g: g)])


def _check_logits(op, values):
    if values.size == 0 or values.shape[-1] == 0:
        raise InvalidArgumentError(f"{op}: empty input")
    if np.isnan(values).any() or np.isposinf(values).any():
        raise NumericError(f"{op}: non-finite input")
    if (np.isneginf(values).all(axis=-1)).any():
        raise EmptyPoolError(f"{op}: every entry is masked")


def _softmax_value(values):
    shifted = values - values.max(axis=-1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=-1, keepdims=True)


def _softmax_backward(p, g):
    """Jacobian-vector product of softmax: ``J^T g = p * (g - <p, g>)``."""
    return p * (g - (p * g).sum(axis=-1, keepdims=True))


def softmax(s):
    """Softmax along the last axis, with max subtraction.

    Entries equal to -inf (masked) get probability exactly 0.
    """
    s = as_node(s)
    _check_logits("softmax", s.value)
    p = _softmax_value(s.value)
    return make_node(p, [(s, lambda g: _softmax_backward(p, g))])


def log_softmax(s):
    """Log-softmax along the last axis."""
    s = as_node(s)
    _check_logits("log_softmax", s.value)
    m = s.value.max(axis=-1, keepdims=True)
    lse = m + np.log(np.exp(s.value - m).sum(axis=-1, keepdims=True))
    out = s.value - lse
    p = np.exp(out)

    return make_node(
        out, [(s, lambda g: g - p * g.sum(axis=-1, keepdims=True))]
    )


def _check_labels(labels, classes):
    labels = np.asarray(labels, dtype=np.int64)
    if (labels < 0).any() or (labels >= classes).any():
        raise InvalidArgumentError(f"label out of range for {classes} classes")
    return labels


def cross_entropy(logits, label):
    """Cross-entropy ``-log softmax(logits)[label]`` of a logit vector."""
    logits = as_node(logits)
    if logits.value.ndim != 1:
        raise ShapeError("cross_entropy", logits.shape)
    _check_logits("cross_entropy", logits.value)
    label = int(_check_labels(label, logits.shape[0]))
    v = logits.value
    m = v.max()
    lse = m + np.log(np.exp(v - m).sum())
    p = _softmax_value(v)

    def _vjp(g):
        out = p.copy()
        out[label] -= 1.0
        return g * out

    return make_node(lse - v[label], [(logits, _vjp)])


def cross_entropy_rows(logits, labels):
    """Per-row cross-entropy of a logits matrix."""
    logits = as_node(logits)
    if logits.value.ndim != 2:
        raise ShapeError("cross_entropy_rows", logits.shape)
    _check_logits("cross_entropy_rows", logits.value)
    labels = _check_labels(labels, logits.shape[1])
    if labels.shape != (logits.shape[0],):
        raise ShapeError("cross_entropy_rows", logits.shape, labels.shape)
    v = logits.value
    rows = np.arange(v.shape[0])
    m = v.max(axis=1, keepdims=True)
    lse = (m + np.log(np.exp(v - m).sum(axis=1, keepdims=True)))[:, 0]
    p = _softmax_value(v)

    def _vjp(g):
        out = p.copy()
        out[rows, labels] -= 1.0
        return g[:, None] * out

    return make_node(lse - v[rows, labels], [(logits, _vjp)])
