from .generate import (
    MazeGrid,
    bfs_distance_grid,
    bfs_shortest_path,
    generate_walls,
    parse_grid,
    serialize_grid,
)
from .env import DeepMazeEnv, MazeConfig, maze_state_space

__all__ = [
    "MazeGrid",
    "MazeConfig",
    "DeepMazeEnv",
    "bfs_distance_grid",
    "bfs_shortest_path",
    "generate_walls",
    "parse_grid",
    "serialize_grid",
    "maze_state_space",
]
