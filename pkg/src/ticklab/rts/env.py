"""Single-agent wrapper for the RTS core.

The per-tick reward is the agent's deposited-resource delta divided by
100, so the accumulated episode reward equals the final score
(resource_count / 100). The action-distribution histogram can be dumped to
CSV when the episode terminates.
"""

from __future__ import annotations

import csv
import os
from typing import Callable, Optional

from ..core import Environment, ObservationSpec, ObsMode, StepResult
from ..errors import InvalidConfig
from ..rng import Prng, derive
from .game import DeepRtsGame, HARVEST, IDLE, RETURN
from .map import RtsMap, default_map

Policy = Callable[[DeepRtsGame, int, Prng], int]


def idle_policy(game: DeepRtsGame, player: int, rng: Prng) -> int:
    return 0


def random_policy(game: DeepRtsGame, player: int, rng: Prng) -> int:
    return rng.randrange(game.action_space.count)


def harvest_policy(game: DeepRtsGame, player: int, rng: Prng) -> int:
    """Keep the selected worker on the gather loop."""
    workers = game.workers[player]
    if not workers:
        return 0
    worker = workers[game.selected[player] % len(workers)]
    if worker.state in (HARVEST, RETURN):
        return 0
    return 6  # harvest_nearest


POLICIES: dict[str, Policy] = {
    "idle": idle_policy,
    "random": random_policy,
    "harvest": harvest_policy,
}


def make_policy(name: str) -> Policy:
    try:
        return POLICIES[name]
    except KeyError:
        raise InvalidConfig(f"unknown opponent policy {name!r}") from None


def write_histogram(path: str, rows: list[dict]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=("action", "count_p0", "count_p1"))
        writer.writeheader()
        writer.writerows(rows)


class DeepRtsLiteEnv(Environment):
    def __init__(
        self,
        width: int = 10,
        height: int = 10,
        tick_limit: int = 600,
        opponent: str = "harvest",
        seed: int = 0,
        rts_map: Optional[RtsMap] = None,
        histogram_path: Optional[str] = None,
    ):
        super().__init__()
        self._map_template = rts_map
        self.width = width
        self.height = height
        self.tick_limit = tick_limit
        self.opponent_name = opponent
        self._policy = make_policy(opponent)
        self.histogram_path = histogram_path
        self._base_seed = seed
        self._episode = -1
        template = rts_map or default_map(width, height)
        self.observation_spec = ObservationSpec(
            ObsMode.MATRIX, template.width, template.height, DeepRtsGame.N_PLANES
        )
        self.game: Optional[DeepRtsGame] = None
        self._opp_rng: Optional[Prng] = None
        self.action_space = DeepRtsGame(default_map(width, height), tick_limit=1).action_space

    def _fresh_map(self) -> RtsMap:
        if self._map_template is not None:
            # stocks mutate during play: always deep-copy the template
            return RtsMap(
                tiles=self._map_template.tiles.copy(),
                stocks=self._map_template.stocks.copy(),
                spawns=list(self._map_template.spawns),
            )
        return default_map(self.width, self.height)

    def _reset_impl(self, seed: Optional[int]):
        if seed is not None:
            self._base_seed = seed
            self._episode = 0
        else:
            self._episode += 1
        self.game = DeepRtsGame(self._fresh_map(), tick_limit=self.tick_limit)
        self._opp_rng = Prng(derive(self._base_seed, "opponent", self._episode))
        return self._observe()

    def _step_impl(self, action: int) -> StepResult:
        opp_action = self._policy(self.game, 1, self._opp_rng)
        own, _ = self.game.step_pair(action, opp_action)
        if self.game.terminal and self.histogram_path:
            write_histogram(self.histogram_path, self.game.histogram_rows())
        info = dict(own.info)
        for i, value in enumerate(self.game.aux_vector(perspective=0)):
            info[f"aux_{i}"] = float(value)
        return StepResult(self._observe(), own.reward, own.terminal, info)

    def _observe(self):
        if not self.encode_observations:
            return None
        return self.game.observe(ObsMode.MATRIX, perspective=0)

    def render(self) -> str:
        return self.game.render()

    def aux_vector(self):
        return self.game.aux_vector(perspective=0)
