"""Uniform environment contract: spaces, step results, the episode loop.

Every game in the suite implements :class:`Environment` (reset / step /
render over a flat discrete action space), so agents, the benchmark harness
and the HTTP service can drive any of them interchangeably. Observations
are row-major, channel-last float64 tensors with values in [0, 1].
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Protocol, runtime_checkable

import numpy as np

from .errors import InvalidAction, InvalidConfig, SteppedTerminalEnv
from .rng import Prng


class ObsMode(str, Enum):
    RAW_IMAGE = "raw_image"
    MATRIX = "matrix"
    HEATMAP_RGB = "heatmap_rgb"
    HEATMAP_GRAY = "heatmap_gray"


@dataclass(frozen=True)
class ObservationSpec:
    """Shape contract for the tensors an environment emits."""

    mode: ObsMode
    width: int
    height: int
    channels: int

    def __post_init__(self):
        if self.width < 1 or self.height < 1 or self.channels < 1:
            raise InvalidConfig("observation dimensions must be positive")
        if self.mode in (ObsMode.RAW_IMAGE, ObsMode.HEATMAP_RGB) and self.channels != 3:
            raise InvalidConfig(f"{self.mode.value} requires 3 channels")
        if self.mode is ObsMode.HEATMAP_GRAY and self.channels != 1:
            raise InvalidConfig("heatmap_gray requires 1 channel")

    @property
    def shape(self) -> tuple[int, int, int]:
        # row-major: (height, width, channels)
        return (self.height, self.width, self.channels)

    @property
    def data_size(self) -> int:
        return self.width * self.height * self.channels


@dataclass(frozen=True)
class ActionSpace:
    """Flat discrete action set with human-readable labels."""

    labels: tuple[str, ...]

    def __post_init__(self):
        if len(self.labels) < 1:
            raise InvalidConfig("action space needs at least one action")
        if len(set(self.labels)) != len(self.labels):
            raise InvalidConfig("action labels must be unique")

    @property
    def count(self) -> int:
        return len(self.labels)

    def sample(self, rng: Prng) -> int:
        return rng.randrange(self.count)

    def check(self, action: int) -> int:
        if not 0 <= int(action) < self.count:
            raise InvalidAction(f"action {action} outside [0, {self.count})")
        return int(action)


@dataclass
class StepResult:
    observation: Optional[np.ndarray]
    reward: float
    terminal: bool
    info: dict


@dataclass
class Transition:
    """(s, a, r, s', terminal) record: the unit of replay memory and logs."""

    state: np.ndarray
    action: int
    reward: float
    next_state: np.ndarray
    terminal: bool


class Environment:
    """Base class for all environments in the suite.

    Instances are single-threaded: callers must not interleave step/reset
    from multiple threads. Parallelism happens across instances.

    Subclasses set ``action_space`` and ``observation_spec`` in __init__ and
    implement ``_reset_impl``/``_step_impl``. The base class owns the
    terminal-state machine so the "no step after terminal" rule is uniform.
    ``encode_observations`` can be switched off by the benchmark harness to
    measure raw simulation throughput; observations then come back as None.
    """

    action_space: ActionSpace
    observation_spec: ObservationSpec
    encode_observations: bool = True

    def __init__(self):
        self._terminal = True  # must reset() before stepping

    @property
    def terminal(self) -> bool:
        return self._terminal

    def reset(self, seed: Optional[int] = None) -> Optional[np.ndarray]:
        obs = self._reset_impl(seed)
        self._terminal = False
        return obs

    def step(self, action: int) -> StepResult:
        if self._terminal:
            raise SteppedTerminalEnv("episode is over; call reset()")
        action = self.action_space.check(action)
        result = self._step_impl(action)
        self._terminal = result.terminal
        return result

    def render(self) -> str:
        raise NotImplementedError

    def sample_action(self, rng: Prng) -> int:
        return self.action_space.sample(rng)

    # -- subclass hooks ----------------------------------------------------

    def _reset_impl(self, seed: Optional[int]) -> Optional[np.ndarray]:
        raise NotImplementedError

    def _step_impl(self, action: int) -> StepResult:
        raise NotImplementedError


@runtime_checkable
class Agent(Protocol):
    def act(self, observation: np.ndarray) -> int: ...

    def observe(self, transition: Transition) -> None: ...


class RandomAgent:
    """Uniform random policy; the baseline everywhere."""

    def __init__(self, action_count: int, seed: int = 0):
        self.action_count = action_count
        self.rng = Prng(seed)

    def act(self, observation) -> int:
        return self.rng.randrange(self.action_count)

    def observe(self, transition: Transition) -> None:
        pass


@dataclass
class EpisodeLog:
    total_reward: float
    steps: int
    terminal: bool
    transitions: list = field(default_factory=list)


def run_episode(
    env: Environment,
    agent: Agent,
    max_steps: int,
    reset_seed: Optional[int] = None,
    record_transitions: bool = True,
) -> EpisodeLog:
    """Reset, then loop act/step/observe until terminal or ``max_steps``.

    Every transition is fed to the agent's observe hook; recording them in
    the returned log is optional so long training runs stay lean.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    obs = env.reset(seed=reset_seed)
    total = 0.0
    steps = 0
    transitions: list[Transition] = []
    terminal = False
    while steps < max_steps and not terminal:
        action = agent.act(obs)
        result = env.step(action)
        transition = Transition(obs, action, result.reward, result.observation, result.terminal)
        agent.observe(transition)
        if record_transitions:
            transitions.append(transition)
        total += result.reward
        steps += 1
        obs = result.observation
        terminal = result.terminal
    return EpisodeLog(total_reward=total, steps=steps, terminal=terminal, transitions=transitions)
