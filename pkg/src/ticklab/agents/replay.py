"""Experience replay: bounded FIFO ring with uniform random sampling."""

from __future__ import annotations

import threading
from typing import Optional

from ..core import Transition
from ..errors import EmptyBuffer, InvalidConfig
from ..rng import Prng


class ReplayBuffer:
    """Stores the most recent ``capacity`` transitions.

    Eviction is strictly FIFO; sampling is uniform with replacement over
    the current contents. With ``thread_safe=True`` store/sample take an
    internal lock so parallel environment workers can feed one learner.
    """

    def __init__(self, capacity: int, seed: int = 0, thread_safe: bool = False):
        if capacity < 1:
            raise InvalidConfig("replay capacity must be >= 1")
        self.capacity = capacity
        self.rng = Prng(seed)
        self._items: list[Transition] = []
        self._next = 0
        self._lock: Optional[threading.Lock] = threading.Lock() if thread_safe else None

    def __len__(self) -> int:
        return len(self._items)

    def store(self, transition: Transition) -> None:
        if self._lock:
            with self._lock:
                self._store(transition)
        else:
            self._store(transition)

    def _store(self, transition: Transition) -> None:
        if len(self._items) < self.capacity:
            self._items.append(transition)
        else:
            self._items[self._next] = transition
            self._next = (self._next + 1) % self.capacity

    def sample(self, n: int) -> list[Transition]:
        if n < 1:
            raise ValueError("sample size must be >= 1")
        if self._lock:
            with self._lock:
                return self._sample(n)
        return self._sample(n)

    def _sample(self, n: int) -> list[Transition]:
        if not self._items:
            raise EmptyBuffer("replay buffer is empty")
        size = len(self._items)
        return [self._items[self.rng.randrange(size)] for _ in range(n)]
