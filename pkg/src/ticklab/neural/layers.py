"""Network layers: dense, valid convolution, max/avg pooling, activations.

All layers are batch-first and channel-last: dense inputs are (B, n),
spatial inputs are (B, H, W, C). Convolutions and pools use no padding, so
the output side length is floor((in - kernel) / stride) + 1.

Parameters are float64 and initialized uniformly in
[-1/sqrt(fan_in), +1/sqrt(fan_in)] from a seeded stream; biases start at
zero. backward() overwrites (never accumulates) parameter gradients.
"""

from __future__ import annotations

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from ..errors import InvalidConfig, NoForwardCache, ShapeMismatch
from ..rng import bulk_u64
from .activations import activation_pair, softmax


def uniform_array(seed: int, shape: tuple[int, ...], limit: float) -> np.ndarray:
    """Deterministic uniform values in [-limit, limit) from SplitMix64."""
    n = int(np.prod(shape))
    u01 = (bulk_u64(seed, n) >> np.uint64(11)).astype(np.float64) * (2.0 ** -53)
    return ((u01 * 2.0 - 1.0) * limit).reshape(shape)


class Layer:
    name = "layer"

    def forward(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def backward(self, dy: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def params(self) -> list[tuple[str, np.ndarray, np.ndarray]]:
        """(name, value, gradient) triples; empty for parameter-free layers."""
        return []

    @property
    def param_count(self) -> int:
        return sum(int(v.size) for _, v, _ in self.params())

    def _require_cache(self, cache):
        if cache is None:
            raise NoForwardCache(f"{self.name}: forward() must run before backward()")
        return cache


class Dense(Layer):
    name = "dense"

    def __init__(self, n_in: int, n_out: int, seed: int = 0):
        self.n_in = n_in
        self.n_out = n_out
        self.w = uniform_array(seed, (n_in, n_out), 1.0 / np.sqrt(n_in))
        self.b = np.zeros(n_out, dtype=np.float64)
        self.dw = np.zeros_like(self.w)
        self.db = np.zeros_like(self.b)
        self._x = None

    @staticmethod
    def count(n_in: int, n_out: int) -> int:
        return n_in * n_out + n_out

    def forward(self, x):
        if x.ndim != 2 or x.shape[1] != self.n_in:
            raise ShapeMismatch(f"dense expects (B, {self.n_in}), got {x.shape}")
        self._x = x
        return x @ self.w + self.b

    def backward(self, dy):
        x = self._require_cache(self._x)
        self.dw = x.T @ dy
        self.db = dy.sum(axis=0)
        return dy @ self.w.T

    def params(self):
        return [("w", self.w, self.dw), ("b", self.b, self.db)]


def conv_output_size(size: int, kernel: int, stride: int) -> int:
    if size < kernel:
        raise ShapeMismatch(f"input side {size} smaller than kernel {kernel}")
    return (size - kernel) // stride + 1


class Conv2d(Layer):
    name = "conv2d"

    def __init__(self, in_channels: int, out_channels: int, kernel: int, stride: int = 1, seed: int = 0):
        if kernel < 1 or stride < 1:
            raise InvalidConfig("kernel and stride must be >= 1")
        self.in_channels = in_channels
        self.out_channels = out_channels
        self.kernel = kernel
        self.stride = stride
        fan_in = kernel * kernel * in_channels
        self.w = uniform_array(seed, (kernel, kernel, in_channels, out_channels), 1.0 / np.sqrt(fan_in))
        self.b = np.zeros(out_channels, dtype=np.float64)
        self.dw = np.zeros_like(self.w)
        self.db = np.zeros_like(self.b)
        self._x = None

    @staticmethod
    def count(in_channels: int, out_channels: int, kernel: int) -> int:
        return kernel * kernel * in_channels * out_channels + out_channels

    def _windows(self, x):
        # (B, Ho, Wo, C, k, k) view over the input
        win = sliding_window_view(x, (self.kernel, self.kernel), axis=(1, 2))
        return win[:, :: self.stride, :: self.stride]

    def forward(self, x):
        if x.ndim != 4 or x.shape[3] != self.in_channels:
            raise ShapeMismatch(f"conv expects (B, H, W, {self.in_channels}), got {x.shape}")
        conv_output_size(x.shape[1], self.kernel, self.stride)
        conv_output_size(x.shape[2], self.kernel, self.stride)
        self._x = x
        return np.einsum("bhwcij,ijco->bhwo", self._windows(x), self.w, optimize=True) + self.b

    def backward(self, dy):
        x = self._require_cache(self._x)
        win = self._windows(x)
        self.dw = np.einsum("bhwcij,bhwo->ijco", win, dy, optimize=True)
        self.db = dy.sum(axis=(0, 1, 2))
        dx = np.zeros_like(x)
        h_out, w_out = dy.shape[1], dy.shape[2]
        s = self.stride
        for i in range(self.kernel):
            for j in range(self.kernel):
                patch = np.einsum("bhwo,co->bhwc", dy, self.w[i, j], optimize=True)
                dx[:, i : i + s * h_out : s, j : j + s * w_out : s, :] += patch
        return dx

    def params(self):
        return [("w", self.w, self.dw), ("b", self.b, self.db)]


class _Pool(Layer):
    def __init__(self, kernel: int, stride: int | None = None):
        if kernel < 1:
            raise InvalidConfig("pool kernel must be >= 1")
        self.kernel = kernel
        self.stride = kernel if stride is None else stride
        if self.stride < 1:
            raise InvalidConfig("pool stride must be >= 1")

    def _windows(self, x):
        if x.ndim != 4:
            raise ShapeMismatch(f"pool expects (B, H, W, C), got {x.shape}")
        conv_output_size(x.shape[1], self.kernel, self.stride)
        conv_output_size(x.shape[2], self.kernel, self.stride)
        win = sliding_window_view(x, (self.kernel, self.kernel), axis=(1, 2))
        return win[:, :: self.stride, :: self.stride]


class MaxPool(_Pool):
    name = "maxpool"

    def __init__(self, kernel: int, stride: int | None = None):
        super().__init__(kernel, stride)
        self._cache = None

    def forward(self, x):
        win = self._windows(x)
        flat = win.reshape(*win.shape[:4], -1)
        arg = flat.argmax(axis=-1)
        self._cache = (x.shape, arg)
        return flat.max(axis=-1)

    def backward(self, dy):
        x_shape, arg = self._require_cache(self._cache)
        b, h_out, w_out, c = dy.shape
        bi, hi, wi, ci = np.indices((b, h_out, w_out, c))
        off_i, off_j = np.divmod(arg, self.kernel)
        dx = np.zeros(x_shape, dtype=np.float64)
        np.add.at(dx, (bi, hi * self.stride + off_i, wi * self.stride + off_j, ci), dy)
        return dx


class AvgPool(_Pool):
    name = "avgpool"

    def __init__(self, kernel: int, stride: int | None = None):
        super().__init__(kernel, stride)
        self._x_shape = None

    def forward(self, x):
        win = self._windows(x)
        self._x_shape = x.shape
        return win.mean(axis=(-2, -1))

    def backward(self, dy):
        x_shape = self._require_cache(self._x_shape)
        dx = np.zeros(x_shape, dtype=np.float64)
        h_out, w_out = dy.shape[1], dy.shape[2]
        s = self.stride
        share = dy / (self.kernel * self.kernel)
        for i in range(self.kernel):
            for j in range(self.kernel):
                dx[:, i : i + s * h_out : s, j : j + s * w_out : s, :] += share
        return dx


class Activation(Layer):
    """Elementwise activation; softmax is deliberately not dispatchable here."""

    def __init__(self, fn_name: str):
        self.fn_name = fn_name
        self.fn, self.grad_fn = activation_pair(fn_name)
        self.name = f"activation[{fn_name}]"
        self._z = None

    def forward(self, z):
        self._z = z
        return self.fn(z)

    def backward(self, dy):
        z = self._require_cache(self._z)
        return dy * self.grad_fn(z)


class Softmax(Layer):
    """Vector softmax over the last axis (output layers only)."""

    name = "softmax"

    def __init__(self):
        self._y = None

    def forward(self, z):
        self._y = softmax(z)
        return self._y

    def backward(self, dy):
        y = self._require_cache(self._y)
        return y * (dy - (dy * y).sum(axis=-1, keepdims=True))


class Flatten(Layer):
    name = "flatten"

    def __init__(self):
        self._shape = None

    def forward(self, x):
        self._shape = x.shape
        return x.reshape(x.shape[0], -1)

    def backward(self, dy):
        shape = self._require_cache(self._shape)
        return dy.reshape(shape)
