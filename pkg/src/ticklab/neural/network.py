"""Sequential network container with checkpoint serialization.

Weight files are a flat little-endian binary blob with a shape-header
manifest:

    magic   4 bytes  b"TLW1"
    count   u32      number of tensors
    per tensor:
        name_len u16, name utf-8 bytes
        ndim     u8,  ndim x u32 dims
        data     float64 little-endian, C order

Tensor names are "<layer index>.<param name>" in forward order, so a file
restores only into a network with the identical architecture.
"""

from __future__ import annotations

import struct

import numpy as np

from ..errors import InvalidConfig, NoForwardCache
from .layers import Layer

_MAGIC = b"TLW1"


class Network:
    def __init__(self, layers: list[Layer]):
        self.layers = list(layers)
        self._forwarded = False

    def forward(self, x: np.ndarray) -> np.ndarray:
        for layer in self.layers:
            x = layer.forward(x)
        self._forwarded = True
        return x

    def backward(self, dy: np.ndarray) -> np.ndarray:
        """Backpropagate an output gradient; returns the input gradient."""
        if not self._forwarded:
            raise NoForwardCache("network: forward() must run before backward()")
        for layer in reversed(self.layers):
            dy = layer.backward(dy)
        return dy

    def parameters(self) -> list[tuple[str, np.ndarray, np.ndarray]]:
        out = []
        for i, layer in enumerate(self.layers):
            for name, value, grad in layer.params():
                out.append((f"{i}.{name}", value, grad))
        return out

    @property
    def param_count(self) -> int:
        return sum(layer.param_count for layer in self.layers)

    # -- checkpointing -------------------------------------------------------

    def save_weights(self, path: str) -> None:
        tensors = [(name, value) for name, value, _ in self.parameters()]
        with open(path, "wb") as fh:
            fh.write(_MAGIC)
            fh.write(struct.pack("<I", len(tensors)))
            for name, value in tensors:
                raw = name.encode("utf-8")
                fh.write(struct.pack("<H", len(raw)))
                fh.write(raw)
                fh.write(struct.pack("<B", value.ndim))
                fh.write(struct.pack(f"<{value.ndim}I", *value.shape))
                fh.write(np.ascontiguousarray(value, dtype="<f8").tobytes())

    def load_weights(self, path: str) -> None:
        with open(path, "rb") as fh:
            blob = fh.read()
        if blob[:4] != _MAGIC:
            raise InvalidConfig("not a ticklab weight file")
        offset = 4
        (count,) = struct.unpack_from("<I", blob, offset)
        offset += 4
        loaded: dict[str, np.ndarray] = {}
        for _ in range(count):
            (name_len,) = struct.unpack_from("<H", blob, offset)
            offset += 2
            name = blob[offset : offset + name_len].decode("utf-8")
            offset += name_len
            (ndim,) = struct.unpack_from("<B", blob, offset)
            offset += 1
            shape = struct.unpack_from(f"<{ndim}I", blob, offset)
            offset += 4 * ndim
            n = int(np.prod(shape)) if ndim else 1
            data = np.frombuffer(blob, dtype="<f8", count=n, offset=offset).reshape(shape)
            offset += 8 * n
            loaded[name] = data
        params = {name: value for name, value, _ in self.parameters()}
        if set(loaded) != set(params):
            raise InvalidConfig("weight file does not match network architecture")
        for name, value in params.items():
            if loaded[name].shape != value.shape:
                raise InvalidConfig(f"tensor {name}: shape {loaded[name].shape} != {value.shape}")
            value[...] = loaded[name]


def param_count(layers: list[Layer] | Network) -> int:
    """Total trainable parameter count, zero for an empty network."""
    if isinstance(layers, Network):
        return layers.param_count
    return sum(layer.param_count for layer in layers)
