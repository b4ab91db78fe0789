"""Tick-based RTS core: workers, harvesting, depots, a resource race.

Two players each start with a town hall on their spawn tile and one
worker. Workers gather from resource tiles (1 unit per tick while
adjacent, up to a carry cap of 10), automatically walk their load back to
the nearest town hall, deposit, and resume. The episode ends at a fixed
tick limit; the player with the higher deposited resource total wins.

There is no combat in this build: the kills / defensive / offensive
scoreboard fields exist but stay at zero, and the verifiable core is the
harvest-deposit loop with its conservation ledger.

Every action is legal in every state; actions that cannot apply resolve to
no-ops and are counted in the step info. The engine contains no randomness
at all, so identical action streams replay identical scoreboards.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from ..core import ActionSpace, ObsMode, StepResult
from ..errors import SteppedTerminalEnv, UnsupportedMode
from .map import GRASS, RESOURCE_TILES, TILE_RESOURCE, FOREST, GOLD_MINE, OIL, SPAWN, RtsMap, default_map

ACTION_LABELS = (
    "noop",
    "select_next_unit",
    "move_up",
    "move_down",
    "move_left",
    "move_right",
    "harvest_nearest",
    "return_to_depot",
    "build_town_hall",
)
_MOVE_DELTAS = {2: (-1, 0), 3: (1, 0), 4: (0, -1), 5: (0, 1)}

HARVEST_RATE = 1
CARRY_CAP = 10
BUILD_TIME = 10
HALL_FOOD = 10
HALL_COST = {"gold": 50, "lumber": 50}

RESOURCE_CAP = 1_000_000
FOOD_CAP = 200
UNIT_CAP = 200

IDLE = "idle"
HARVEST = "harvest"
RETURN = "return"
BUILD = "build"


class RtsResources:
    """Per-player resource ledger, clamped to its documented ranges."""

    __slots__ = ("lumber", "gold", "oil", "food", "units")

    def __init__(self):
        self.lumber = 0
        self.gold = 0
        self.oil = 0
        self.food = 0
        self.units = 0

    def add(self, name: str, amount: int) -> None:
        cap = FOOD_CAP if name == "food" else UNIT_CAP if name == "units" else RESOURCE_CAP
        setattr(self, name, min(cap, max(0, getattr(self, name) + amount)))

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.__slots__}


class Scoreboard:
    __slots__ = ("kills", "defensive_points", "offensive_points", "resource_count")

    def __init__(self):
        self.kills = 0
        self.defensive_points = 0
        self.offensive_points = 0
        self.resource_count = 0


class Worker:
    __slots__ = ("owner", "row", "col", "state", "target", "carry", "carry_type", "resume", "build_left")

    def __init__(self, owner: int, row: int, col: int):
        self.owner = owner
        self.row = row
        self.col = col
        self.state = IDLE
        self.target: Optional[tuple[int, int]] = None
        self.carry = 0
        self.carry_type: Optional[str] = None
        self.resume: Optional[tuple[int, int]] = None
        self.build_left = 0


class TownHall:
    __slots__ = ("owner", "row", "col")

    def __init__(self, owner: int, row: int, col: int):
        self.owner = owner
        self.row = row
        self.col = col


class DeepRtsGame:
    def __init__(self, rts_map: Optional[RtsMap] = None, tick_limit: int = 600, validate: bool = False):
        self.map = rts_map or default_map()
        self.tick_limit = tick_limit
        self.validate = validate
        self.tick = 0
        self.terminal = False
        self.winner: Optional[int] = None
        self.action_space = ActionSpace(ACTION_LABELS)
        self.resources = (RtsResources(), RtsResources())
        self.scoreboards = (Scoreboard(), Scoreboard())
        self.workers: list[list[Worker]] = [[], []]
        self.halls: list[list[TownHall]] = [[], []]
        self.selected = [0, 0]
        self.action_histogram = [np.zeros(len(ACTION_LABELS), dtype=np.int64) for _ in range(2)]
        self.deposited = [dict.fromkeys(("lumber", "gold", "oil"), 0) for _ in range(2)]
        self.spent = [dict.fromkeys(("lumber", "gold", "oil"), 0) for _ in range(2)]
        self._initial_stock = self.map.initial_stock_total()
        self._ignored = [0, 0]
        for player, spawn in enumerate(self.map.spawns[:2]):
            self._add_hall(player, spawn)
            wr, wc = self._free_neighbor(spawn, player) or spawn
            self.workers[player].append(Worker(player, wr, wc))
            self.resources[player].add("units", 1)

    # -- placement helpers -----------------------------------------------------

    def _neighbor_order(self, player: int):
        base = ((1, 0), (0, 1), (-1, 0), (0, -1))
        # mirrored for player 1 to keep the symmetric map fair
        return base if player == 0 else tuple((-dr, -dc) for dr, dc in base)

    def _free_neighbor(self, cell, player: int):
        r, c = cell
        for dr, dc in self._neighbor_order(player):
            nr, nc = r + dr, c + dc
            if self._walkable(nr, nc):
                return nr, nc
        return None

    def _add_hall(self, player: int, cell):
        self.halls[player].append(TownHall(player, cell[0], cell[1]))
        self.resources[player].add("food", HALL_FOOD)

    def _building_at(self, row: int, col: int) -> bool:
        return any(h.row == row and h.col == col for side in self.halls for h in side)

    def _walkable(self, row: int, col: int) -> bool:
        if not (0 <= row < self.map.height and 0 <= col < self.map.width):
            return False
        if int(self.map.tiles[row, col]) in RESOURCE_TILES:
            return False
        return not self._building_at(row, col)

    # -- per-tick resolution -----------------------------------------------------

    def step_pair(self, action_p0: int, action_p1: int) -> tuple[StepResult, StepResult]:
        if self.terminal:
            raise SteppedTerminalEnv("match is over")
        actions = (self.action_space.check(action_p0), self.action_space.check(action_p1))
        self.tick += 1
        self._ignored = [0, 0]
        before = [sb.resource_count for sb in self.scoreboards]
        for player, action in enumerate(actions):
            self.action_histogram[player][action] += 1
            self._apply_action(player, action)
        for player in (0, 1):
            for worker in self.workers[player]:
                self._advance_worker(worker)
        if self.tick >= self.tick_limit:
            self.terminal = True
            r0, r1 = self.scoreboards[0].resource_count, self.scoreboards[1].resource_count
            self.winner = None if r0 == r1 else (0 if r0 > r1 else 1)
        if self.validate:
            self.check_invariants()
        results = []
        for player in (0, 1):
            delta = self.scoreboards[player].resource_count - before[player]
            info = {
                "tick": self.tick,
                "resource_count": self.scoreboards[player].resource_count,
                "ignored": self._ignored[player],
                "selected": self.selected[player],
                "workers": len(self.workers[player]),
            }
            results.append(StepResult(None, delta / 100.0, self.terminal, info))
        return results[0], results[1]

    def _selected_worker(self, player: int) -> Optional[Worker]:
        workers = self.workers[player]
        if not workers:
            return None
        self.selected[player] %= len(workers)
        return workers[self.selected[player]]

    def _apply_action(self, player: int, action: int) -> None:
        if action == 0:
            return
        worker = self._selected_worker(player)
        if worker is None:
            self._ignored[player] += 1
            return
        if action == 1:
            self.selected[player] = (self.selected[player] + 1) % len(self.workers[player])
            return
        if worker.state == BUILD:  # busy constructing; orders are ignored
            self._ignored[player] += 1
            return
        if action in _MOVE_DELTAS:
            dr, dc = _MOVE_DELTAS[action]
            nr, nc = worker.row + dr, worker.col + dc
            if self._walkable(nr, nc):
                worker.row, worker.col = nr, nc
                worker.state = IDLE
                worker.resume = None
            else:
                self._ignored[player] += 1
            return
        if action == 6:  # harvest nearest stocked resource tile
            target = self._nearest_resource(worker)
            if target is None:
                self._ignored[player] += 1
                return
            self._order_harvest(worker, target)
            return
        if action == 7:  # return to depot
            if not self.halls[player]:
                self._ignored[player] += 1
                return
            worker.state = RETURN
            worker.resume = None
            return
        # build_town_hall on the worker's tile
        cost_ok = all(getattr(self.resources[player], res) >= amt for res, amt in HALL_COST.items())
        on_grass = int(self.map.tiles[worker.row, worker.col]) in (GRASS, SPAWN)
        if not cost_ok or not on_grass or self._building_at(worker.row, worker.col):
            self._ignored[player] += 1
            return
        for res, amt in HALL_COST.items():
            self.resources[player].add(res, -amt)
            self.spent[player][res] += amt
        worker.state = BUILD
        worker.build_left = BUILD_TIME
        worker.target = (worker.row, worker.col)

    def _order_harvest(self, worker: Worker, target: tuple[int, int]) -> None:
        if worker.carry > 0 and worker.carry_type != TILE_RESOURCE[int(self.map.tiles[target])]:
            # deposit the mismatched load first, then come back for the order
            worker.state = RETURN
            worker.resume = target
        else:
            worker.state = HARVEST
            worker.target = target
            worker.resume = None

    def _nearest_resource(self, worker: Worker) -> Optional[tuple[int, int]]:
        best = None
        best_key = None
        for r in range(self.map.height):
            for c in range(self.map.width):
                if int(self.map.tiles[r, c]) in RESOURCE_TILES and self.map.stocks[r, c] > 0:
                    key = (abs(r - worker.row) + abs(c - worker.col), r, c)
                    if best_key is None or key < best_key:
                        best, best_key = (r, c), key
        return best

    def _nearest_hall(self, worker: Worker) -> Optional[TownHall]:
        halls = self.halls[worker.owner]
        if not halls:
            return None
        return min(halls, key=lambda h: (abs(h.row - worker.row) + abs(h.col - worker.col)))

    # -- worker state machine --------------------------------------------------------

    def _advance_worker(self, worker: Worker) -> None:
        if worker.state == BUILD:
            worker.build_left -= 1
            if worker.build_left <= 0:
                site = worker.target
                self._add_hall(worker.owner, site)
                moved = self._free_neighbor(site, worker.owner)
                if moved is not None:  # displaced off the new building
                    worker.row, worker.col = moved
                worker.state = IDLE
                worker.target = None
            return
        if worker.state == HARVEST:
            target = worker.target
            if target is None or self.map.stocks[target] <= 0:
                worker.state = RETURN if worker.carry > 0 else IDLE
                worker.target = None
                return
            if abs(worker.row - target[0]) + abs(worker.col - target[1]) == 1:
                kind = TILE_RESOURCE[int(self.map.tiles[target])]
                take = int(min(HARVEST_RATE, self.map.stocks[target], CARRY_CAP - worker.carry))
                if take > 0:
                    self.map.stocks[target] -= take
                    worker.carry += take
                    worker.carry_type = kind
                if self.map.stocks[target] == 0:
                    self.map.tiles[target] = GRASS  # depleted tiles convert to grass
                if worker.carry >= CARRY_CAP or self.map.stocks[target] == 0:
                    worker.resume = target if self.map.stocks[target] > 0 else None
                    worker.state = RETURN if worker.carry > 0 else IDLE
            else:
                self._step_toward(worker, target)
            return
        if worker.state == RETURN:
            hall = self._nearest_hall(worker)
            if hall is None:
                worker.state = IDLE
                return
            if abs(worker.row - hall.row) + abs(worker.col - hall.col) == 1:
                if worker.carry > 0:
                    self._deposit(worker)
                if worker.resume is not None and self.map.stocks[worker.resume] > 0:
                    worker.state = HARVEST
                    worker.target = worker.resume
                    worker.resume = None
                else:
                    worker.state = IDLE
            else:
                self._step_toward(worker, (hall.row, hall.col))

    def _deposit(self, worker: Worker) -> None:
        player = worker.owner
        self.resources[player].add(worker.carry_type, worker.carry)
        self.deposited[player][worker.carry_type] += worker.carry
        self.scoreboards[player].resource_count += worker.carry
        worker.carry = 0
        worker.carry_type = None

    def _step_toward(self, worker: Worker, target: tuple[int, int]) -> None:
        """Greedy 4-neighborhood step with axis sliding; stays put if boxed in."""
        dr = target[0] - worker.row
        dc = target[1] - worker.col
        moves = []
        if abs(dr) >= abs(dc):
            if dr:
                moves.append((int(np.sign(dr)), 0))
            if dc:
                moves.append((0, int(np.sign(dc))))
        else:
            if dc:
                moves.append((0, int(np.sign(dc))))
            if dr:
                moves.append((int(np.sign(dr)), 0))
        for mr, mc in moves:
            nr, nc = worker.row + mr, worker.col + mc
            if (nr, nc) == target:  # resource/hall tiles are not walkable
                continue
            if self._walkable(nr, nc):
                worker.row, worker.col = nr, nc
                return

    # -- invariants ----------------------------------------------------------------

    def check_invariants(self) -> None:
        carried = sum(w.carry for side in self.workers for w in side)
        deposited = sum(sum(d.values()) for d in self.deposited)
        remaining = int(self.map.stocks.sum())
        if remaining + carried + deposited != self._initial_stock:
            raise AssertionError(
                f"resource conservation broken: {remaining}+{carried}+{deposited} != {self._initial_stock}"
            )
        for player in (0, 1):
            res = self.resources[player]
            for name, cap in (("lumber", RESOURCE_CAP), ("gold", RESOURCE_CAP), ("oil", RESOURCE_CAP)):
                value = getattr(res, name)
                if not 0 <= value <= cap:
                    raise AssertionError(f"{name} clamp violated for p{player}: {value}")
                expected = self.deposited[player][name] - self.spent[player][name]
                if value != min(cap, expected):
                    raise AssertionError(f"{name} ledger broken for p{player}: {value} != {expected}")
            if not 0 <= res.food <= FOOD_CAP or not 0 <= res.units <= UNIT_CAP:
                raise AssertionError(f"food/units clamp violated for p{player}")
            if res.units > res.food:
                raise AssertionError(f"units exceed food for p{player}")
            board = self.scoreboards[player]
            if board.resource_count != sum(self.deposited[player].values()):
                raise AssertionError(f"resource_count mismatch for p{player}")

    # -- observation ------------------------------------------------------------------

    N_PLANES = 9

    def observe(self, mode: ObsMode, perspective: int = 0) -> np.ndarray:
        if mode is not ObsMode.MATRIX:
            raise UnsupportedMode("this build supports matrix state representation only")
        h, w = self.map.height, self.map.width
        obs = np.zeros((h, w, self.N_PLANES), dtype=np.float64)
        obs[:, :, 0] = (self.map.tiles == FOREST) & (self.map.stocks > 0)
        obs[:, :, 1] = (self.map.tiles == GOLD_MINE) & (self.map.stocks > 0)
        obs[:, :, 2] = (self.map.tiles == OIL) & (self.map.stocks > 0)
        for spawn in self.map.spawns:
            obs[spawn[0], spawn[1], 3] = 1.0
        own, enemy = perspective, 1 - perspective
        for worker in self.workers[own]:
            obs[worker.row, worker.col, 4] = 1.0
        for worker in self.workers[enemy]:
            obs[worker.row, worker.col, 5] = 1.0
        for hall in self.halls[own]:
            obs[hall.row, hall.col, 6] = 1.0
        for hall in self.halls[enemy]:
            obs[hall.row, hall.col, 7] = 1.0
        selected = self._selected_worker(own)
        if selected is not None:
            obs[selected.row, selected.col, 8] = 1.0
        return obs

    def aux_vector(self, perspective: int = 0) -> np.ndarray:
        """Both players' resources normalized by their caps (own side first)."""

        def side(res: RtsResources):
            return [
                res.lumber / RESOURCE_CAP,
                res.gold / RESOURCE_CAP,
                res.oil / RESOURCE_CAP,
                res.food / FOOD_CAP,
                res.units / UNIT_CAP,
            ]

        own, enemy = self.resources[perspective], self.resources[1 - perspective]
        return np.array(side(own) + side(enemy), dtype=np.float64)

    def render(self) -> str:
        from .map import serialize_map

        canvas = [list(line) for line in serialize_map(self.map).splitlines()]
        for player, marker in ((0, "w"), (1, "x")):
            for hall in self.halls[player]:
                canvas[hall.row][hall.col] = "H" if player == 0 else "h"
            for worker in self.workers[player]:
                canvas[worker.row][worker.col] = marker
        header = (
            f"tick {self.tick}  score {self.scoreboards[0].resource_count}"
            f":{self.scoreboards[1].resource_count}"
        )
        return header + "\n" + "\n".join("".join(row) for row in canvas) + "\n"

    def histogram_rows(self) -> list[dict]:
        return [
            {
                "action": label,
                "count_p0": int(self.action_histogram[0][i]),
                "count_p1": int(self.action_histogram[1][i]),
            }
            for i, label in enumerate(ACTION_LABELS)
        ]
