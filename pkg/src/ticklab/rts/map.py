"""Tile maps for the RTS core, with a plain-text file format.

Characters: '.' grass, 'F' forest (lumber), 'M' gold mine, 'O' oil patch,
'A' player-0 spawn, 'B' player-1 spawn. Resource tiles block movement and
convert to grass when their stock depletes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import InvalidConfig

GRASS = 0
FOREST = 1
GOLD_MINE = 2
OIL = 3
SPAWN = 4

RESOURCE_TILES = (FOREST, GOLD_MINE, OIL)
TILE_RESOURCE = {FOREST: "lumber", GOLD_MINE: "gold", OIL: "oil"}

_CHAR_TO_TILE = {".": GRASS, "F": FOREST, "M": GOLD_MINE, "O": OIL}
_TILE_TO_CHAR = {GRASS: ".", FOREST: "F", GOLD_MINE: "M", OIL: "O", SPAWN: "."}

DEFAULT_STOCKS = {FOREST: 100, GOLD_MINE: 500, OIL: 200}


@dataclass
class RtsMap:
    tiles: np.ndarray  # int8 (height, width)
    stocks: np.ndarray  # int64 remaining resource per tile
    spawns: list[tuple[int, int]] = field(default_factory=list)  # one per player

    def __post_init__(self):
        if len(self.spawns) < 2:
            raise InvalidConfig("map needs a spawn tile for each player ('A' and 'B')")
        if self.tiles.shape != self.stocks.shape:
            raise InvalidConfig("tiles and stocks must have the same shape")

    @property
    def height(self) -> int:
        return int(self.tiles.shape[0])

    @property
    def width(self) -> int:
        return int(self.tiles.shape[1])

    def initial_stock_total(self) -> int:
        return int(self.stocks.sum())


def parse_map(text: str) -> RtsMap:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise InvalidConfig("empty map text")
    width = len(lines[0])
    if any(len(line) != width for line in lines):
        raise InvalidConfig("map rows must have equal length")
    tiles = np.zeros((len(lines), width), dtype=np.int8)
    stocks = np.zeros((len(lines), width), dtype=np.int64)
    spawns: dict[str, tuple[int, int]] = {}
    for r, line in enumerate(lines):
        for c, ch in enumerate(line):
            if ch in ("A", "B"):
                if ch in spawns:
                    raise InvalidConfig(f"duplicate spawn {ch!r}")
                spawns[ch] = (r, c)
                tiles[r, c] = GRASS
            elif ch in _CHAR_TO_TILE:
                tiles[r, c] = _CHAR_TO_TILE[ch]
                if tiles[r, c] in DEFAULT_STOCKS:
                    stocks[r, c] = DEFAULT_STOCKS[tiles[r, c]]
            else:
                raise InvalidConfig(f"unknown map char {ch!r}")
    if "A" not in spawns or "B" not in spawns:
        raise InvalidConfig("map needs both 'A' and 'B' spawn tiles")
    return RtsMap(tiles=tiles, stocks=stocks, spawns=[spawns["A"], spawns["B"]])


def serialize_map(rts_map: RtsMap) -> str:
    rows = []
    for r in range(rts_map.height):
        row = []
        for c in range(rts_map.width):
            if (r, c) == rts_map.spawns[0]:
                row.append("A")
            elif (r, c) == rts_map.spawns[1]:
                row.append("B")
            else:
                row.append(_TILE_TO_CHAR[int(rts_map.tiles[r, c])])
        rows.append("".join(row))
    return "\n".join(rows) + "\n"


def default_map(width: int = 10, height: int = 10) -> RtsMap:
    """Mirror-symmetric map: spawns in opposite corners, a forest and a gold
    mine near each spawn, oil in the center. Deterministic by construction."""
    if width < 6 or height < 6:
        raise InvalidConfig("default map needs at least 6x6 tiles")
    tiles = np.zeros((height, width), dtype=np.int8)
    stocks = np.zeros((height, width), dtype=np.int64)

    def put(r, c, kind):
        tiles[r, c] = kind
        stocks[r, c] = DEFAULT_STOCKS[kind]

    spawn0 = (1, 1)
    spawn1 = (height - 2, width - 2)
    # forest cluster + mine for player 0, mirrored for player 1
    put(0, 3, FOREST)
    put(1, 3, FOREST)
    put(3, 0, GOLD_MINE)
    put(height - 1, width - 4, FOREST)
    put(height - 2, width - 4, FOREST)
    put(height - 4, width - 1, GOLD_MINE)
    put(height // 2, width // 2, OIL)
    return RtsMap(tiles=tiles, stocks=stocks, spawns=[spawn0, spawn1])
