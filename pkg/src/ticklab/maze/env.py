"""Shortest-path grid-world with deterministic and per-episode random mazes.

Reward convention: moving costs nothing while the step count is within the
BFS-optimal budget, and -1 per step after exceeding it, with no bonus at
the goal. A perfectly played episode therefore scores exactly 0 and any
negative total reads directly as "extra steps beyond optimal".
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..core import ActionSpace, Environment, ObservationSpec, ObsMode, StepResult
from ..errors import InvalidConfig, UnsupportedMode
from ..rng import Prng, derive
from .generate import CORRIDOR, WALL, MazeGrid, bfs_distance_grid, generate_walls, serialize_grid

ACTION_LABELS = ("up", "down", "left", "right")
DELTAS = ((-1, 0), (1, 0), (0, -1), (0, 1))

MODE_DETERMINISTIC = "deterministic"
MODE_STOCHASTIC = "stochastic"
MODE_FIXED = "fixed"  # hand-built grid, layout never changes

# grayscale intensities for the single-channel heatmap
GRAY_WALL = 1.0
GRAY_PLAYER = 0.6
GRAY_GOAL = 0.3

_CHANNELS = {ObsMode.MATRIX: 3, ObsMode.HEATMAP_RGB: 3, ObsMode.HEATMAP_GRAY: 1}


def maze_state_space(width: int, height: int) -> int:
    """Count of (player, goal) placements over the open grid: C(w*h, 2).

    Exact arbitrary-precision integer; 55x55 yields 4 573 800.
    """
    cells = width * height
    if cells < 2:
        raise ValueError("state space needs at least two cells")
    return math.comb(cells, 2)


def _check_obs_mode(obs_mode: ObsMode) -> ObsMode:
    if obs_mode not in _CHANNELS:
        raise UnsupportedMode("maze observations: matrix or heatmap modes only")
    return obs_mode


@dataclass(frozen=True)
class MazeConfig:
    width: int = 7
    height: int = 7
    mode: str = MODE_DETERMINISTIC
    obs_mode: ObsMode = ObsMode.HEATMAP_GRAY

    def __post_init__(self):
        for name, v in (("width", self.width), ("height", self.height)):
            if v % 2 == 0 or not 7 <= v <= 55:
                raise InvalidConfig(f"maze {name} must be odd and within [7, 55], got {v}")
        if self.mode not in (MODE_DETERMINISTIC, MODE_STOCHASTIC):
            raise InvalidConfig(f"unknown maze mode {self.mode!r}")
        _check_obs_mode(self.obs_mode)


class DeepMazeEnv(Environment):
    """Four-action maze navigation over a perfect maze.

    Deterministic mode derives the layout purely from the scenario seed;
    stochastic mode mixes the seed with the episode index, so every reset
    gets a fresh maze and fresh start/goal placement.
    """

    def __init__(self, config: MazeConfig, seed: int = 0):
        super().__init__()
        self.width = config.width
        self.height = config.height
        self.mode = config.mode
        self.obs_mode = config.obs_mode
        self.action_space = ActionSpace(ACTION_LABELS)
        self.observation_spec = ObservationSpec(
            self.obs_mode, self.width, self.height, _CHANNELS[self.obs_mode]
        )
        self._base_seed = seed
        self._episode = -1
        self._fixed_grid: Optional[MazeGrid] = None
        self.grid: Optional[MazeGrid] = None
        self.player: tuple[int, int] = (0, 0)
        self.steps_taken = 0
        self.optimal_length = 0

    @classmethod
    def from_grid(cls, grid: MazeGrid, obs_mode: ObsMode = ObsMode.HEATMAP_GRAY) -> "DeepMazeEnv":
        """Environment over a hand-built layout (no size restrictions)."""
        env = object.__new__(cls)
        Environment.__init__(env)
        env.width = grid.width
        env.height = grid.height
        env.mode = MODE_FIXED
        env.obs_mode = _check_obs_mode(obs_mode)
        env.action_space = ActionSpace(ACTION_LABELS)
        env.observation_spec = ObservationSpec(obs_mode, grid.width, grid.height, _CHANNELS[obs_mode])
        env._base_seed = 0
        env._episode = -1
        env._fixed_grid = grid
        env.grid = None
        env.player = (0, 0)
        env.steps_taken = 0
        env.optimal_length = 0
        return env

    # -- episode setup -------------------------------------------------------

    def _build_grid(self) -> MazeGrid:
        if self._fixed_grid is not None:
            return self._fixed_grid
        episode = 0 if self.mode == MODE_DETERMINISTIC else self._episode
        layout_rng = Prng(derive(self._base_seed, "maze-layout", episode))
        walls = generate_walls(self.width, self.height, layout_rng)
        if self.mode == MODE_DETERMINISTIC:
            start = (1, 1)
            goal = (self.height - 2, self.width - 2)
        else:
            cells = [(int(r), int(c)) for r, c in np.argwhere(walls == CORRIDOR)]
            place_rng = Prng(derive(self._base_seed, "maze-placement", episode))
            start = cells[place_rng.randrange(len(cells))]
            goal = start
            while goal == start:
                goal = cells[place_rng.randrange(len(cells))]
        return MazeGrid(walls=walls, start=start, goal=goal)

    def _reset_impl(self, seed: Optional[int]):
        if seed is not None:
            self._base_seed = seed
            self._episode = 0
        else:
            self._episode += 1
        self.grid = self._build_grid()
        self.player = self.grid.start
        self.steps_taken = 0
        dist = bfs_distance_grid(self.grid.walls, self.grid.start)
        self.optimal_length = int(dist[self.grid.goal])
        return self._observe()

    # -- dynamics --------------------------------------------------------------

    def _step_impl(self, action: int) -> StepResult:
        dr, dc = DELTAS[action]
        r, c = self.player
        nr, nc = r + dr, c + dc
        blocked = not (
            0 <= nr < self.grid.height
            and 0 <= nc < self.grid.width
            and self.grid.walls[nr, nc] == CORRIDOR
        )
        if not blocked:
            self.player = (nr, nc)
        self.steps_taken += 1
        reward = 0.0 if self.steps_taken <= self.optimal_length else -1.0
        terminal = self.player == self.grid.goal
        info = {
            "steps": self.steps_taken,
            "optimal": self.optimal_length,
            "blocked": int(blocked),
        }
        return StepResult(self._observe(), reward, terminal, info)

    # -- encoding ----------------------------------------------------------------

    def _observe(self) -> Optional[np.ndarray]:
        if not self.encode_observations:
            return None
        g = self.grid
        if self.obs_mode is ObsMode.HEATMAP_GRAY:
            obs = g.walls.astype(np.float64).reshape(g.height, g.width, 1) * GRAY_WALL
            obs[g.goal[0], g.goal[1], 0] = GRAY_GOAL
            obs[self.player[0], self.player[1], 0] = GRAY_PLAYER
            return obs
        if self.obs_mode is ObsMode.HEATMAP_RGB:
            obs = np.zeros((g.height, g.width, 3), dtype=np.float64)
            obs[g.walls == WALL] = 1.0
            obs[g.goal[0], g.goal[1], :] = (0.0, 1.0, 0.0)
            obs[self.player[0], self.player[1], :] = (1.0, 0.0, 0.0)
            return obs
        obs = np.zeros((g.height, g.width, 3), dtype=np.float64)
        obs[:, :, 0] = g.walls
        obs[self.player[0], self.player[1], 1] = 1.0
        obs[g.goal[0], g.goal[1], 2] = 1.0
        return obs

    def render(self) -> str:
        """Layout text with the player marked 'P' (overrides S/G markers)."""
        lines = serialize_grid(self.grid).splitlines()
        r, c = self.player
        lines[r] = lines[r][:c] + "P" + lines[r][c + 1 :]
        return "\n".join(lines) + "\n"
