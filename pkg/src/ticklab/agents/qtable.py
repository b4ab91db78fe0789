"""Tabular Q-learning: table, value-iteration update rule, epsilon-greedy policy.

States are keyed by the raw bytes of the observation tensor. Environment
observations here are deterministic and discrete-valued at cell
resolution, so the byte string is an exact (collision-free) key. Missing
entries read as all-zero action values.
"""

from __future__ import annotations

import numpy as np

from ..core import Transition
from ..rng import Prng
from .hyper import Hyperparams, epsilon_at


def state_key(observation: np.ndarray) -> bytes:
    return observation.tobytes()


class QTable:
    def __init__(self, action_count: int):
        self.action_count = action_count
        self._table: dict[bytes, np.ndarray] = {}

    def __len__(self) -> int:
        return len(self._table)

    def q_values(self, key: bytes) -> np.ndarray:
        """Read-only view semantics: unknown states are all zeros."""
        values = self._table.get(key)
        if values is None:
            return np.zeros(self.action_count, dtype=np.float64)
        return values

    def ensure(self, key: bytes) -> np.ndarray:
        values = self._table.get(key)
        if values is None:
            values = np.zeros(self.action_count, dtype=np.float64)
            self._table[key] = values
        return values


def q_update(
    table: QTable,
    s: bytes,
    action: int,
    reward: float,
    s_next: bytes,
    terminal: bool,
    alpha: float,
    gamma: float,
) -> float:
    """Q(s,a) <- Q(s,a) + alpha * (r + gamma * max_a' Q(s',a') - Q(s,a)).

    Terminal transitions use 0 for the max term. Returns the new Q(s,a).
    """
    values = table.ensure(s)
    future = 0.0 if terminal else float(table.q_values(s_next).max())
    values[action] += alpha * (reward + gamma * future - values[action])
    return float(values[action])


def select_action(q_values: np.ndarray, epsilon: float, rng: Prng) -> int:
    """Epsilon-greedy over a Q-value vector, ties broken by lowest index."""
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError("epsilon must be within [0, 1]")
    if epsilon > 0.0 and rng.uniform() < epsilon:
        return rng.randrange(len(q_values))
    return int(np.argmax(q_values))


class TabularQAgent:
    """Q-table agent with a per-episode epsilon schedule."""

    def __init__(self, action_count: int, params: Hyperparams | None = None, seed: int = 0):
        self.params = params or Hyperparams()
        self.table = QTable(action_count)
        self.rng = Prng(seed)
        self.episode = 0

    @property
    def epsilon(self) -> float:
        return epsilon_at(self.params, self.episode)

    def start_episode(self, episode: int) -> None:
        self.episode = episode

    def act(self, observation) -> int:
        return select_action(self.table.q_values(state_key(observation)), self.epsilon, self.rng)

    def greedy_action(self, observation) -> int:
        return int(np.argmax(self.table.q_values(state_key(observation))))

    def observe(self, t: Transition) -> None:
        q_update(
            self.table,
            state_key(t.state),
            t.action,
            t.reward,
            state_key(t.next_state),
            t.terminal,
            self.params.alpha,
            self.params.gamma,
        )
