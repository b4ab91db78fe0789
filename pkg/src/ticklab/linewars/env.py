"""Single-agent wrapper: the agent plays side 0 against a built-in policy.

Observations are always rendered from the agent's perspective (the lane
axis is mirrored for player 1 inside the game, so a symmetric position
looks identical from both sides). Per-episode match statistics can be
appended to a CSV file.
"""

from __future__ import annotations

import csv
import os
from typing import Callable, Optional

from ..core import ActionSpace, Environment, ObservationSpec, ObsMode, StepResult
from ..errors import InvalidConfig
from ..rng import Prng, derive
from .catalog import DlwConfig, default_config
from .game import DeepLineWarsGame

RAW_WIDTH = 800
RAW_HEIGHT = 600

Policy = Callable[[DeepLineWarsGame, int, Prng], int]


def idle_policy(game: DeepLineWarsGame, player: int, rng: Prng) -> int:
    return 0


def random_policy(game: DeepLineWarsGame, player: int, rng: Prng) -> int:
    return rng.randrange(game.action_space.count)


def always_send_policy(game: DeepLineWarsGame, player: int, rng: Prng) -> int:
    kind = game.cheapest_unit_kind()
    if game.players[player].gold >= game.config.units[kind].gold_cost:
        return game.buy_action_index(kind)
    return 0


POLICIES: dict[str, Policy] = {
    "idle": idle_policy,
    "random": random_policy,
    "always_send": always_send_policy,
}


def make_policy(name: str) -> Policy:
    try:
        return POLICIES[name]
    except KeyError:
        raise InvalidConfig(f"unknown opponent policy {name!r}") from None


STATS_FIELDS = ("winner", "ticks", "units_bought_p0", "units_bought_p1", "leaks_p0", "leaks_p1")


def append_stats(path: str, row: dict) -> None:
    """Append one per-episode stats row, writing the header on first use."""
    new_file = not os.path.exists(path)
    with open(path, "a", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=STATS_FIELDS)
        if new_file:
            writer.writeheader()
        writer.writerow(row)


class DeepLineWarsEnv(Environment):
    def __init__(
        self,
        obs_mode: ObsMode = ObsMode.HEATMAP_RGB,
        opponent: str = "random",
        seed: int = 0,
        config: Optional[DlwConfig] = None,
        tick_limit: Optional[int] = None,
        stats_path: Optional[str] = None,
    ):
        super().__init__()
        self.config = config or default_config()
        self.obs_mode = obs_mode
        if obs_mode is ObsMode.RAW_IMAGE:
            self.observation_spec = ObservationSpec(obs_mode, RAW_WIDTH, RAW_HEIGHT, 3)
        elif obs_mode is ObsMode.MATRIX:
            self.observation_spec = ObservationSpec(obs_mode, self.config.width, self.config.height, 5)
        else:
            channels = 3 if obs_mode is ObsMode.HEATMAP_RGB else 1
            self.observation_spec = ObservationSpec(obs_mode, self.config.width, self.config.height, channels)
        self.opponent_name = opponent
        self._policy = make_policy(opponent)
        self.tick_limit = tick_limit
        self.stats_path = stats_path
        self._base_seed = seed
        self._episode = -1
        self.game: Optional[DeepLineWarsGame] = None
        self._opp_rng: Optional[Prng] = None
        # the action space is catalog-dependent but fixed across episodes
        self.action_space = DeepLineWarsGame(self.config, seed=0).action_space

    def _reset_impl(self, seed: Optional[int]):
        if seed is not None:
            self._base_seed = seed
            self._episode = 0
        else:
            self._episode += 1
        self.game = DeepLineWarsGame(
            self.config,
            seed=derive(self._base_seed, "match", self._episode),
            tick_limit=self.tick_limit,
        )
        self._opp_rng = Prng(derive(self._base_seed, "opponent", self._episode))
        return self._observe()

    def _step_impl(self, action: int) -> StepResult:
        opp_action = self._policy(self.game, 1, self._opp_rng)
        own, _ = self.game.step_pair(action, opp_action)
        if self.game.terminal and self.stats_path:
            append_stats(self.stats_path, self.game.stats_row())
        return StepResult(self._observe(), own.reward, own.terminal, own.info)

    def _observe(self):
        if not self.encode_observations:
            return None
        return self.game.observe(self.obs_mode, perspective=0)

    def render(self) -> str:
        return self.game.render()

    def aux_vector(self):
        return self.game.aux_vector(perspective=0)
