"""JIT-compiled maze stepping for the throughput benchmark.

The kernel replays the exact transition rule of
:class:`~ticklab.maze.env.DeepMazeEnv` (move unless wall or boundary
blocks, reset to start when the goal is reached) over a pre-generated
action stream, skipping observation encoding and Python call overhead.
``tests/test_bench.py`` cross-checks the kernel against the reference
``env.step`` trajectory so the two paths cannot drift apart silently.

Compiled with ``nogil`` so benchmark worker threads run in parallel.
Falls back to a pure-Python loop when numba is unavailable.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        if len(args) == 1 and callable(args[0]):
            return args[0]
        return wrap


@njit(cache=True, nogil=True)
def maze_tick_kernel(walls, start_r, start_c, goal_r, goal_c, player_r, player_c, steps, episodes, actions):
    """Advance one tick per action; returns (player_r, player_c, steps, episodes).

    ``steps`` counts steps taken in the current episode and resets with the
    player on terminal, mirroring the environment's counter.
    """
    height, width = walls.shape
    for i in range(actions.shape[0]):
        a = actions[i]
        nr = player_r
        nc = player_c
        if a == 0:
            nr -= 1
        elif a == 1:
            nr += 1
        elif a == 2:
            nc -= 1
        else:
            nc += 1
        if 0 <= nr < height and 0 <= nc < width and walls[nr, nc] == 0:
            player_r = nr
            player_c = nc
        steps += 1
        if player_r == goal_r and player_c == goal_c:
            episodes += 1
            player_r = start_r
            player_c = start_c
            steps = 0
    return player_r, player_c, steps, episodes


class MazeFastStepper:
    """Resumable wrapper around the kernel for one deterministic maze."""

    def __init__(self, env):
        env.reset()
        self.walls = np.ascontiguousarray(env.grid.walls)
        self.start = env.grid.start
        self.goal = env.grid.goal
        self.player = env.grid.start
        self.steps = 0
        self.episodes = 0

    def run(self, actions: np.ndarray) -> int:
        """Consume an action chunk; returns the number of ticks executed."""
        pr, pc, steps, episodes = maze_tick_kernel(
            self.walls,
            self.start[0],
            self.start[1],
            self.goal[0],
            self.goal[1],
            self.player[0],
            self.player[1],
            self.steps,
            self.episodes,
            actions,
        )
        self.player = (int(pr), int(pc))
        self.steps = int(steps)
        self.episodes = int(episodes)
        return int(actions.shape[0])
