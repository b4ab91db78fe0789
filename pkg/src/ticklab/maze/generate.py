"""Maze generation, the BFS shortest-path oracle, and text serialization.

Mazes are *perfect*: the corridor graph is a spanning tree, so any two
corridor cells are connected by exactly one path. The generator is a
randomized depth-first search (recursive backtracker, iterative form) over
a lattice of rooms at odd coordinates, which is why maze dimensions must be
odd: walls and corridors then tile cleanly with a solid outer border.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from ..errors import InvalidConfig, Unreachable
from ..rng import Prng

WALL = 1
CORRIDOR = 0

Cell = tuple[int, int]


def generate_walls(width: int, height: int, rng: Prng) -> np.ndarray:
    """Carve a perfect maze into a (height, width) uint8 grid, 1 = wall.

    Rooms sit at odd (row, col) pairs; the DFS knocks out the wall between
    a room and each newly visited neighbor, producing a spanning tree.
    """
    if width % 2 == 0 or height % 2 == 0 or width < 3 or height < 3:
        raise InvalidConfig("maze dimensions must be odd and >= 3")
    walls = np.ones((height, width), dtype=np.uint8)
    start = (1, 1)
    walls[start] = CORRIDOR
    stack = [start]
    visited = {start}
    while stack:
        r, c = stack[-1]
        candidates = [
            (r + dr, c + dc)
            for dr, dc in ((-2, 0), (2, 0), (0, -2), (0, 2))
            if 0 < r + dr < height - 1 and 0 < c + dc < width - 1 and (r + dr, c + dc) not in visited
        ]
        rng.shuffle(candidates)
        for nxt in candidates:
            if nxt not in visited:
                nr, nc = nxt
                walls[(r + nr) // 2, (c + nc) // 2] = CORRIDOR
                walls[nr, nc] = CORRIDOR
                visited.add(nxt)
                stack.append(nxt)
                break
        else:
            stack.pop()
    return walls


@dataclass(frozen=True)
class MazeGrid:
    """Wall matrix plus start/goal placement. Validated on construction."""

    walls: np.ndarray
    start: Cell
    goal: Cell

    def __post_init__(self):
        if self.start == self.goal:
            raise InvalidConfig("start and goal must differ")
        for name, cell in (("start", self.start), ("goal", self.goal)):
            r, c = cell
            if not (0 <= r < self.height and 0 <= c < self.width):
                raise InvalidConfig(f"{name} {cell} outside the grid")
            if self.walls[r, c] == WALL:
                raise InvalidConfig(f"{name} {cell} is a wall cell")
        # connectivity is part of the type's contract
        bfs_shortest_path(self.walls, self.start, self.goal)

    @property
    def height(self) -> int:
        return int(self.walls.shape[0])

    @property
    def width(self) -> int:
        return int(self.walls.shape[1])


def bfs_distance_grid(walls: np.ndarray, src: Cell) -> np.ndarray:
    """All-cells BFS distances from ``src`` (int32; -1 where unreachable)."""
    height, width = walls.shape
    dist = np.full((height, width), -1, dtype=np.int32)
    if walls[src] == WALL:
        raise InvalidConfig(f"source {src} is a wall cell")
    dist[src] = 0
    queue = deque([src])
    while queue:
        r, c = queue.popleft()
        d = dist[r, c] + 1
        for nr, nc in ((r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)):
            if 0 <= nr < height and 0 <= nc < width and walls[nr, nc] == CORRIDOR and dist[nr, nc] < 0:
                dist[nr, nc] = d
                queue.append((nr, nc))
    return dist


def bfs_shortest_path(walls: np.ndarray, src: Cell, dst: Cell) -> int:
    """Exact minimal step count between two corridor cells (4-neighborhood).

    Raises :class:`Unreachable` when the cells lie in different components;
    that cannot happen for generated (perfect) mazes but can for hand-built
    grids.
    """
    for name, cell in (("source", src), ("target", dst)):
        if walls[cell] == WALL:
            raise InvalidConfig(f"{name} {cell} is a wall cell")
    if src == dst:
        return 0
    dist = bfs_distance_grid(walls, src)
    d = int(dist[dst])
    if d < 0:
        raise Unreachable(f"no corridor path from {src} to {dst}")
    return d


# -- plain-text layout format ('#' wall, '.' corridor, 'S' start, 'G' goal) --


def serialize_grid(grid: MazeGrid) -> str:
    rows = []
    for r in range(grid.height):
        row = []
        for c in range(grid.width):
            if (r, c) == grid.start:
                row.append("S")
            elif (r, c) == grid.goal:
                row.append("G")
            else:
                row.append("#" if grid.walls[r, c] == WALL else ".")
        rows.append("".join(row))
    return "\n".join(rows) + "\n"


def parse_grid(text: str) -> MazeGrid:
    lines = [line for line in text.splitlines() if line]
    if not lines:
        raise InvalidConfig("empty maze text")
    width = len(lines[0])
    if any(len(line) != width for line in lines):
        raise InvalidConfig("maze rows must have equal length")
    walls = np.zeros((len(lines), width), dtype=np.uint8)
    start = goal = None
    for r, line in enumerate(lines):
        for c, ch in enumerate(line):
            if ch == "#":
                walls[r, c] = WALL
            elif ch == "S":
                if start is not None:
                    raise InvalidConfig("multiple start cells")
                start = (r, c)
            elif ch == "G":
                if goal is not None:
                    raise InvalidConfig("multiple goal cells")
                goal = (r, c)
            elif ch != ".":
                raise InvalidConfig(f"unknown maze char {ch!r}")
    if start is None or goal is None:
        raise InvalidConfig("maze text needs one S and one G")
    return MazeGrid(walls=walls, start=start, goal=goal)
