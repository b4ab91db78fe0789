"""Vanilla deep Q-learning: Bellman-target training over replayed batches.

The temporal-difference loss is computed only on the taken-action output
of each transition; all other outputs receive zero error. There is no
target network by default, matching the plain variant; an optional
frozen-copy refresh every N steps can be enabled for stability
experiments.
"""

from __future__ import annotations

import copy
from typing import Optional

import numpy as np

from ..core import Transition
from ..errors import EmptyBatch
from ..neural.layers import Activation, Dense, Flatten
from ..neural.losses import loss, loss_grad
from ..neural.network import Network
from ..neural.optim import make_optimizer
from ..rng import Prng, derive
from .hyper import Hyperparams, epsilon_at
from .replay import ReplayBuffer


def build_dense_qnet(input_size: int, action_count: int, hidden: int = 64, seed: int = 0) -> Network:
    """Flatten -> Dense(hidden) -> ReLU -> Dense(action_count), linear output."""
    return Network(
        [
            Flatten(),
            Dense(input_size, hidden, seed=derive(seed, "qnet-hidden")),
            Activation("relu"),
            Dense(hidden, action_count, seed=derive(seed, "qnet-out")),
        ]
    )


def dqn_train_step(
    network: Network,
    target_network: Optional[Network],
    batch: list[Transition],
    params: Hyperparams,
    optimizer,
) -> float:
    """One Bellman-loss gradient step on a transition batch; returns the loss.

    Targets are y = r + gamma * max_a' Q(s', a') (terminal: y = r), with
    the maximum taken from ``target_network`` when given, else from the
    online network.
    """
    if not batch:
        raise EmptyBatch("dqn_train_step needs at least one transition")
    states = np.stack([np.asarray(t.state, dtype=np.float64) for t in batch])
    next_states = np.stack([np.asarray(t.next_state, dtype=np.float64) for t in batch])
    actions = np.array([t.action for t in batch], dtype=np.int64)
    rewards = np.array([t.reward for t in batch], dtype=np.float64)
    terminal = np.array([t.terminal for t in batch], dtype=np.float64)

    # evaluate bootstrap targets first: the online network's forward cache
    # must hold `states` when backward() runs
    source = target_network if target_network is not None else network
    q_next = source.forward(next_states).max(axis=1)
    targets = rewards + params.gamma * q_next * (1.0 - terminal)

    q = network.forward(states)
    rows = np.arange(len(batch))
    taken = q[rows, actions]
    batch_loss = loss(params.loss, taken, targets)
    d_taken = loss_grad(params.loss, taken, targets)
    dq = np.zeros_like(q)
    dq[rows, actions] = d_taken
    network.backward(dq)
    optimizer.step(network.parameters())
    return batch_loss


class DqnAgent:
    """Epsilon-greedy policy over a Q-network trained from experience replay."""

    def __init__(
        self,
        network: Network,
        params: Hyperparams | None = None,
        seed: int = 0,
        train_every: int = 1,
        warmup: Optional[int] = None,
        target_refresh: Optional[int] = None,
    ):
        self.network = network
        self.params = params or Hyperparams()
        self.rng = Prng(derive(seed, "dqn-policy"))
        self.buffer = ReplayBuffer(self.params.memory_size, seed=derive(seed, "dqn-replay"))
        self.optimizer = make_optimizer(self.params.optimizer, self.params.alpha)
        self.train_every = train_every
        self.warmup = self.params.batch_size if warmup is None else warmup
        self.target_refresh = target_refresh
        self._target: Optional[Network] = None
        self.episode = 0
        self.steps = 0
        self._losses: list[float] = []

    @property
    def epsilon(self) -> float:
        return epsilon_at(self.params, self.episode)

    def start_episode(self, episode: int) -> None:
        self.episode = episode

    def q_values(self, observation) -> np.ndarray:
        x = np.asarray(observation, dtype=np.float64)[None, ...]
        return self.network.forward(x)[0]

    def act(self, observation) -> int:
        if self.rng.uniform() < self.epsilon:
            return self.rng.randrange(self._action_count())
        return int(np.argmax(self.q_values(observation)))

    def greedy_action(self, observation) -> int:
        return int(np.argmax(self.q_values(observation)))

    def observe(self, t: Transition) -> None:
        self.buffer.store(t)
        self.steps += 1
        if self.target_refresh and self.steps % self.target_refresh == 0:
            self._target = copy.deepcopy(self.network)
        if len(self.buffer) < max(self.warmup, self.params.batch_size):
            return
        if self.steps % self.train_every != 0:
            return
        batch = self.buffer.sample(self.params.batch_size)
        self._losses.append(dqn_train_step(self.network, self._target, batch, self.params, self.optimizer))

    def pop_episode_loss(self) -> Optional[float]:
        """Mean training loss since the last call (None if no step ran)."""
        if not self._losses:
            return None
        mean = float(np.mean(self._losses))
        self._losses.clear()
        return mean

    def _action_count(self) -> int:
        last = self.network.layers[-1]
        return last.n_out  # output layer is Dense
