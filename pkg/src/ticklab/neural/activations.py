"""Activation table: tanh, softmax, sigmoid, relu, leaky_relu, binary.

All functions accept scalars or numpy arrays and are applied elementwise,
except softmax which normalizes along the last axis. ``binary`` outputs 1
only for strictly positive pre-activations (0 at exactly z = 0) and is
non-differentiable; its subgradient here is 0 everywhere.
"""

from __future__ import annotations

import numpy as np

from ..errors import UnknownActivation


def tanh(z):
    # equivalent closed form: 2 / (1 + exp(-2z)) - 1
    return np.tanh(z)


def tanh_grad(z):
    t = np.tanh(z)
    return 1.0 - t * t


def sigmoid(z):
    z = np.asarray(z, dtype=np.float64)
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def sigmoid_grad(z):
    s = sigmoid(z)
    return s * (1.0 - s)


def relu(z):
    return np.maximum(z, 0.0)


def relu_grad(z):
    return (np.asarray(z) > 0).astype(np.float64)


LEAKY_SLOPE = 0.01


def leaky_relu(z):
    z = np.asarray(z, dtype=np.float64)
    return np.where(z > 0, z, LEAKY_SLOPE * z)


def leaky_relu_grad(z):
    return np.where(np.asarray(z) > 0, 1.0, LEAKY_SLOPE)


def binary(z):
    return (np.asarray(z, dtype=np.float64) > 0).astype(np.float64)


def binary_grad(z):
    return np.zeros_like(np.asarray(z, dtype=np.float64))


def softmax(z):
    """Probability simplex along the last axis (shift-stabilized)."""
    z = np.asarray(z, dtype=np.float64)
    shifted = z - z.max(axis=-1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=-1, keepdims=True)


_TABLE = {
    "tanh": (tanh, tanh_grad),
    "sigmoid": (sigmoid, sigmoid_grad),
    "relu": (relu, relu_grad),
    "leakyrelu": (leaky_relu, leaky_relu_grad),
    "binary": (binary, binary_grad),
}

ELEMENTWISE_NAMES = ("tanh", "sigmoid", "relu", "leaky_relu", "binary")


def _canonical(name: str) -> str:
    return name.lower().replace("_", "").replace("-", "").replace(" ", "")


def activation_pair(name: str):
    """(function, derivative) for an elementwise activation name."""
    key = _canonical(name)
    if key == "softmax":
        raise UnknownActivation("softmax is a vector op; use the Softmax layer")
    try:
        return _TABLE[key]
    except KeyError:
        raise UnknownActivation(name) from None


def activation(name: str, z):
    """Dispatch by name; softmax is applied along the last axis."""
    if _canonical(name) == "softmax":
        return softmax(z)
    fn, _ = activation_pair(name)
    return fn(z)
