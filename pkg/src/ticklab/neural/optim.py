"""Gradient-descent optimizers operating in place on parameter arrays."""

from __future__ import annotations

import numpy as np

from ..errors import InvalidConfig, ShapeMismatch

Params = list[tuple[str, np.ndarray, np.ndarray]]


def _check(value, grad, name):
    if value.shape != grad.shape:
        raise ShapeMismatch(f"{name}: value {value.shape} vs grad {grad.shape}")


class Sgd:
    """theta <- theta - lr * grad"""

    def __init__(self, lr: float):
        self.lr = lr

    def step(self, params: Params) -> None:
        for name, value, grad in params:
            _check(value, grad, name)
            value -= self.lr * grad


class Adam:
    """Adam with bias-corrected moment estimates.

    m <- b1*m + (1-b1)*g;  v <- b2*v + (1-b2)*g^2
    theta <- theta - lr * (m / (1-b1^t)) / (sqrt(v / (1-b2^t)) + eps)
    """

    def __init__(self, lr: float, beta1: float = 0.9, beta2: float = 0.999, eps: float = 1e-8):
        self.lr = lr
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.t = 0
        self._m: dict[str, np.ndarray] = {}
        self._v: dict[str, np.ndarray] = {}

    def step(self, params: Params) -> None:
        self.t += 1
        b1t = 1.0 - self.beta1 ** self.t
        b2t = 1.0 - self.beta2 ** self.t
        for name, value, grad in params:
            _check(value, grad, name)
            m = self._m.setdefault(name, np.zeros_like(value))
            v = self._v.setdefault(name, np.zeros_like(value))
            m *= self.beta1
            m += (1.0 - self.beta1) * grad
            v *= self.beta2
            v += (1.0 - self.beta2) * grad * grad
            value -= self.lr * (m / b1t) / (np.sqrt(v / b2t) + self.eps)


def make_optimizer(name: str, lr: float):
    key = name.lower()
    if key == "sgd":
        return Sgd(lr)
    if key == "adam":
        return Adam(lr)
    raise InvalidConfig(f"unknown optimizer {name!r}")
