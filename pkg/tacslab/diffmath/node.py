# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 tacslab contributors.
#
# tacslab is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Graph nodes and reverse-mode traversal."""

import contextlib
import threading

import numpy as np

_state = threading.local()


@contextlib.contextmanager
def no_grad():
    """Context manager under which operations record no parents.

    The switch is per thread, so untracked evaluation can run in worker
    threads while another thread builds a graph.
    """
    previous = is_grad_enabled()
    _state.enabled = False
    try:
        yield
    finally:
        _state.enabled = previous


def is_grad_enabled():
    """Return whether new operations are being recorded."""
    return getattr(_state, "enabled", True)


class Node(object):
    """A value in the computation graph.

    ``parents`` holds ``(parent, vjp)`` pairs, where ``vjp`` maps the
    upstream gradient of this node to the contribution for ``parent``.
    """

    __slots__ = ("value", "grad", "parents", "requires_grad", "name")

    def __init__(self, value, parents=(), requires_grad=False, name=None):
        """Constructor."""
        self.value = np.asarray(value, dtype=np.float64)
        self.grad = None
        self.parents = tuple(parents)
        self.requires_grad = bool(requires_grad)
        self.name = name

    @property
    def shape(self):
        """Shape of the value."""
        return self.value.shape

    def __repr__(self):
        """Short representation."""
        label = f" {self.name}" if self.name else ""
        return f"<Node{label} shape={self.shape} requires_grad={self.requires_grad}>"

    def accumulate(self, grad):
        """Add ``grad`` into the gradient accumulator."""
        if not self.requires_grad:
            return
        grad = np.asarray(grad, dtype=np.float64)
        if grad.shape != self.value.shape:
            raise ValueError(
                f"gradient shape {grad.shape} does not match value {self.value.shape}"
            )
        if self.grad is None:
            self.grad = grad.copy()
        else:
            self.grad += grad

    def zero_grad(self):
        """Reset the gradient accumulator."""
        self.grad = None

    def backward(self):
        """Backpropagate from this scalar node."""
        backward(self)


def make_node(value, parents):
    """Create an operation output, recording only parents that need gradients."""
    if not is_grad_enabled():
        return Node(value)
    tracked = [(p, fn) for p, fn in parents if p.requires_grad]
    return Node(value, parents=tracked, requires_grad=bool(tracked))


def topological_order(root):
    """Return the nodes reachable from ``root``, parents before children.

    Iterative post-order DFS; parent order is preserved, so the order is
    deterministic for a given graph.
    """
    order = []
    visited = set()
    stack = [(root, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            order.append(node)
            continue
        if id(node) in visited:
            continue
        visited.add(id(node))
        stack.append((node, True))
        for parent, _ in reversed(node.parents):
            if id(parent) not in visited:
                stack.append((parent, False))
    return order


def backward(root):
    """Accumulate d(root)/d(node) into every reachable node requiring grad."""
    if root.value.size != 1:
        raise ValueError(f"backward needs a scalar root, got shape {root.shape}")
    if not root.requires_grad:
        return
    order = topological_order(root)
    # intermediate accumulators are rebuilt on every call
    for node in order:
        if node.parents:
            node.grad = None
    root.accumulate(np.ones_like(root.value))
    for node in reversed(order):
        if node.grad is None or not node.parents:
            continue
        for parent, vjp in node.parents:
            parent.accumulate(vjp(node.grad))


class Parameter(object):
    """A named trainable array."""

    def __init__(self, name, value, trainable=True):
        """Constructor."""
        self.name = name
        self.node = Node(value, requires_grad=trainable, name=name)

    @property
    def shape(self):
        """Dimension list."""
        return list(self.node.value.shape)

    @property
    def value(self):
        """Current array."""
        return self.node.value

    @property
    def grad(self):
        """Accumulated gradient, zeros when nothing was accumulated."""
        if self.node.grad is None:
            return np.zeros_like(self.node.value)
        return self.node.grad

    @property
    def trainable(self):
        """Whether the parameter accumulates gradients."""
        return self.node.requires_grad

    def zero_grad(self):
        """Reset the gradient accumulator."""
        self.node.zero_grad()

    def __repr__(self):
        """Short representation."""
        return f"<Parameter {self.name} shape={self.shape}>"
