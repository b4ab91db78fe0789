"""Agent hyperparameter schema with the suite-wide defaults.

Defaults: learning rate 1e-4, discount 0.99, Huber loss, Adam, batch 32,
memory 1,000,000, eps_min 0.10, eps_max 1.0, eps_start 1.0, eps decay
0.005 per episode. The decay *law* (linear vs exponential per episode) is
a config choice; linear is the default.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from ..errors import InvalidConfig
from ..neural.losses import LossSpec

LINEAR = "linear"
EXPONENTIAL = "exponential"


@dataclass(frozen=True)
class Hyperparams:
    alpha: float = 1e-4
    gamma: float = 0.99
    loss: LossSpec = field(default_factory=LossSpec)
    optimizer: str = "adam"
    batch_size: int = 32
    memory_size: int = 1_000_000
    eps_min: float = 0.10
    eps_max: float = 1.0
    eps_start: float = 1.0
    eps_decay: float = 0.005
    decay_law: str = LINEAR

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise InvalidConfig("alpha must be within [0, 1]")
        if not 0.0 <= self.gamma <= 1.0:
            raise InvalidConfig("gamma must be within [0, 1]")
        for name in ("eps_min", "eps_max", "eps_start"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise InvalidConfig(f"{name} must be within [0, 1]")
        if not self.eps_min <= self.eps_start <= self.eps_max:
            raise InvalidConfig("need eps_min <= eps_start <= eps_max")
        if self.batch_size < 1:
            raise InvalidConfig("batch_size must be >= 1")
        if self.memory_size < 1:
            raise InvalidConfig("memory_size must be >= 1")
        if self.eps_decay < 0:
            raise InvalidConfig("eps_decay must be >= 0")
        if self.decay_law not in (LINEAR, EXPONENTIAL):
            raise InvalidConfig(f"unknown decay law {self.decay_law!r}")
        if self.optimizer.lower() not in ("sgd", "adam"):
            raise InvalidConfig(f"unknown optimizer {self.optimizer!r}")

    @classmethod
    def from_dict(cls, data: dict) -> "Hyperparams":
        data = dict(data)
        loss_kind = data.pop("loss", None)
        huber_delta = data.pop("huber_delta", None)
        base = cls()
        if loss_kind is not None or huber_delta is not None:
            spec = LossSpec(
                kind=(loss_kind or base.loss.kind).lower(),
                delta=float(huber_delta) if huber_delta is not None else base.loss.delta,
            )
            data["loss"] = spec
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise InvalidConfig(f"unknown hyperparameter(s): {', '.join(sorted(unknown))}")
        return replace(base, **data)


def epsilon_at(params: Hyperparams, episode: int) -> float:
    """Exploration rate for an episode index under the configured decay law."""
    if episode < 0:
        raise ValueError("episode index must be >= 0")
    if params.decay_law == LINEAR:
        eps = params.eps_start - params.eps_decay * episode
    else:
        eps = params.eps_start * (1.0 - params.eps_decay) ** episode
    return min(params.eps_max, max(params.eps_min, eps))
