"""Scalar losses and their gradients with respect to the prediction.

MSE is the mean of squared residuals. Huber applies the quadratic branch
0.5*a^2 for |a| <= delta and the linear branch delta*(|a| - 0.5*delta)
elsewhere, elementwise on the residual, then averages.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InvalidConfig, ShapeMismatch

MSE = "mse"
HUBER = "huber"


@dataclass(frozen=True)
class LossSpec:
    kind: str = HUBER
    delta: float = 1.0

    def __post_init__(self):
        if self.kind not in (MSE, HUBER):
            raise InvalidConfig(f"unknown loss kind {self.kind!r}")
        if self.delta <= 0:
            raise InvalidConfig("huber delta must be positive")


def _check_shapes(predicted, target):
    predicted = np.asarray(predicted, dtype=np.float64)
    target = np.asarray(target, dtype=np.float64)
    if predicted.shape != target.shape:
        raise ShapeMismatch(f"predicted {predicted.shape} vs target {target.shape}")
    return predicted, target


def loss(spec: LossSpec, predicted, target) -> float:
    predicted, target = _check_shapes(predicted, target)
    a = predicted - target
    if spec.kind == MSE:
        return float(np.mean(a * a))
    quad = 0.5 * a * a
    lin = spec.delta * (np.abs(a) - 0.5 * spec.delta)
    return float(np.mean(np.where(np.abs(a) <= spec.delta, quad, lin)))


def loss_grad(spec: LossSpec, predicted, target) -> np.ndarray:
    """d loss / d predicted, same shape as the inputs."""
    predicted, target = _check_shapes(predicted, target)
    a = predicted - target
    n = a.size
    if spec.kind == MSE:
        return 2.0 * a / n
    return np.where(np.abs(a) <= spec.delta, a, spec.delta * np.sign(a)) / n
