"""Two-player lane-defense engine: mercenary waves, towers, economy.

Players occupy opposite edges of a height x width cell grid. Bought units
spawn at a random row of the owner's base column and march straight toward
the enemy base; each one that arrives removes one enemy health point.
Towers on the owner's half shoot the nearest enemy unit in range. Killing
a unit pays the tower's owner a bounty; sending one raises the sender's
recurring income.

Both players act simultaneously. A tick resolves in a fixed documented
order: purchases, tower construction (and cursor moves), unit movement,
tower fire, leak damage, income. Terminal when either health pool reaches
zero (simultaneous zero is a draw) or an optional tick limit runs out.

Per-player reward is 0 every tick and +1 / -1 / 0 (win / loss / draw) at
the terminal tick; win rate against a fixed opponent is then directly the
mean episode reward shifted to [0, 1].
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from ..core import ActionSpace, ObsMode, StepResult
from ..errors import InsufficientGold, SteppedTerminalEnv, UnsupportedMode
from ..rng import Prng, derive
from .catalog import DlwConfig, UnitKind, default_config

N_CURSOR_ACTIONS = 4  # up, down, left, right
_CURSOR_DELTAS = ((-1, 0), (1, 0), (0, -1), (0, 1))


def action_labels(config: DlwConfig) -> tuple[str, ...]:
    labels = ["noop", "cursor_up", "cursor_down", "cursor_left", "cursor_right"]
    labels += [f"build_{t.name}" for t in config.towers]
    labels += [f"send_{u.name}" for u in config.units]
    return tuple(labels)


class Unit:
    __slots__ = ("kind", "owner", "row", "col", "progress", "hp", "leaked")

    def __init__(self, kind: UnitKind, owner: int, row: int, col: int):
        self.kind = kind
        self.owner = owner
        self.row = row
        self.col = col
        self.progress = 0.0
        self.hp = kind.hp
        self.leaked = False


class Tower:
    __slots__ = ("kind", "owner", "row", "col", "cooldown_remaining")

    def __init__(self, kind, owner: int, row: int, col: int):
        self.kind = kind
        self.owner = owner
        self.row = row
        self.col = col
        self.cooldown_remaining = 0


class PlayerState:
    def __init__(self, config: DlwConfig, player: int):
        self.health = config.starting_health
        self.gold = config.starting_gold
        self.lumber = config.starting_lumber
        self.income = config.starting_income
        half = config.width // 2
        self.cursor_row = config.height // 2
        self.cursor_col = 1 if player == 0 else config.width - 2
        self.col_min = 0 if player == 0 else config.width - half
        self.col_max = half - 1 if player == 0 else config.width - 1
        # ledger (exact integer accounting)
        self.passive_total = 0
        self.bounty_total = 0
        self.spent_total = 0
        # episode stats
        self.units_bought = 0
        self.kills = 0
        self.leaks_dealt = 0
        self.leaks_taken = 0


class DeepLineWarsGame:
    """Lockstep two-player match. Not an Environment by itself; see
    DeepLineWarsEnv for the single-agent wrapper."""

    def __init__(
        self,
        config: Optional[DlwConfig] = None,
        seed: int = 0,
        tick_limit: Optional[int] = None,
        validate: bool = False,
    ):
        self.config = config or default_config()
        self.action_space = ActionSpace(action_labels(self.config))
        self.tick_limit = tick_limit
        self.validate = validate
        self.tick = 0
        self.terminal = False
        self.winner: Optional[int] = None
        self.players = (PlayerState(self.config, 0), PlayerState(self.config, 1))
        self.units: list[list[Unit]] = [[], []]
        self.towers: list[list[Tower]] = [[], []]
        self._spawn_rng = (Prng(derive(seed, "spawn", 0)), Prng(derive(seed, "spawn", 1)))
        self._rejected = [0, 0]

    # -- action index helpers ------------------------------------------------

    def build_action_index(self, tower_kind: int) -> int:
        return 1 + N_CURSOR_ACTIONS + tower_kind

    def buy_action_index(self, unit_kind: int) -> int:
        return 1 + N_CURSOR_ACTIONS + len(self.config.towers) + unit_kind

    def cheapest_unit_kind(self) -> int:
        return min(range(len(self.config.units)), key=lambda i: self.config.units[i].gold_cost)

    # -- public economy ops ----------------------------------------------------

    def buy_unit(self, player: int, unit_kind: int) -> Unit:
        """Deduct gold, raise income, spawn at a seeded-random base row."""
        state = self.players[player]
        kind = self.config.units[unit_kind]
        if state.gold < kind.gold_cost:
            raise InsufficientGold(f"player {player}: {state.gold} < {kind.gold_cost}")
        state.gold -= kind.gold_cost
        state.spent_total += kind.gold_cost
        state.income += round(kind.gold_cost * kind.income_bonus)
        row = self._spawn_rng[player].randrange(self.config.height)
        col = 0 if player == 0 else self.config.width - 1
        unit = Unit(kind, player, row, col)
        self.units[player].append(unit)
        state.units_bought += 1
        return unit

    def kill_bounty(self, kind: UnitKind) -> int:
        """Gold awarded to the opponent when a tower kills a unit of ``kind``."""
        return round(kind.gold_cost * self.config.bounty_percent)

    # -- tick ----------------------------------------------------------------

    def step_pair(self, action_p0: int, action_p1: int) -> tuple[StepResult, StepResult]:
        if self.terminal:
            raise SteppedTerminalEnv("match is over")
        actions = (self.action_space.check(action_p0), self.action_space.check(action_p1))
        self.tick += 1
        self._rejected = [0, 0]

        self._phase_purchases(actions)
        self._phase_construction(actions)
        self._phase_movement()
        self._phase_tower_fire()
        self._phase_leaks()
        self._phase_income()

        p0, p1 = self.players
        if p0.health <= 0 or p1.health <= 0:
            self.terminal = True
            if p0.health <= 0 and p1.health <= 0:
                self.winner = None  # simultaneous depletion: draw
            else:
                self.winner = 0 if p1.health <= 0 else 1
        elif self.tick_limit is not None and self.tick >= self.tick_limit:
            self.terminal = True
            self.winner = None
        if self.validate:
            self.check_invariants()
        return (self._result(0), self._result(1))

    def _reward(self, player: int) -> float:
        if not self.terminal or self.winner is None:
            return 0.0
        return 1.0 if self.winner == player else -1.0

    def _result(self, player: int) -> StepResult:
        own, enemy = self.players[player], self.players[1 - player]
        info = {
            "tick": self.tick,
            "health_own": own.health,
            "health_enemy": enemy.health,
            "gold_own": own.gold,
            "income_own": own.income,
            "units_own": len(self.units[player]),
            "units_enemy": len(self.units[1 - player]),
            "rejected_own": self._rejected[player],
        }
        return StepResult(None, self._reward(player), self.terminal, info)

    # -- phases ---------------------------------------------------------------

    def _phase_purchases(self, actions):
        first_buy = 1 + N_CURSOR_ACTIONS + len(self.config.towers)
        for player, action in enumerate(actions):
            if action >= first_buy:
                try:
                    self.buy_unit(player, action - first_buy)
                except InsufficientGold:
                    self._rejected[player] += 1

    def _phase_construction(self, actions):
        for player, action in enumerate(actions):
            if 1 <= action <= N_CURSOR_ACTIONS:
                self._move_cursor(player, action - 1)
            elif 1 + N_CURSOR_ACTIONS <= action < 1 + N_CURSOR_ACTIONS + len(self.config.towers):
                if not self._build_tower(player, action - 1 - N_CURSOR_ACTIONS):
                    self._rejected[player] += 1

    def _move_cursor(self, player: int, direction: int):
        state = self.players[player]
        dr, dc = _CURSOR_DELTAS[direction]
        state.cursor_row = min(self.config.height - 1, max(0, state.cursor_row + dr))
        state.cursor_col = min(state.col_max, max(state.col_min, state.cursor_col + dc))

    def _build_tower(self, player: int, tower_kind: int) -> bool:
        state = self.players[player]
        kind = self.config.towers[tower_kind]
        row, col = state.cursor_row, state.cursor_col
        if not state.col_min <= col <= state.col_max:
            return False
        if any(t.row == row and t.col == col for t in self.towers[player]):
            return False  # one tower per cell per owner
        if state.gold < kind.gold_cost:
            return False
        state.gold -= kind.gold_cost
        state.spent_total += kind.gold_cost
        self.towers[player].append(Tower(kind, player, row, col))
        return True

    def _phase_movement(self):
        for player in (0, 1):
            direction = 1 if player == 0 else -1
            target_col = self.config.width - 1 if player == 0 else 0
            for unit in self.units[player]:
                unit.progress += unit.kind.speed
                while unit.progress >= 1.0 and not unit.leaked:
                    unit.progress -= 1.0
                    unit.col += direction
                    if unit.col == target_col:
                        unit.leaked = True

    def _phase_tower_fire(self):
        for player in (0, 1):
            enemies = self.units[1 - player]
            for tower in self.towers[player]:
                if tower.cooldown_remaining > 0:
                    tower.cooldown_remaining -= 1
                if tower.cooldown_remaining > 0:
                    continue
                target = self._nearest_in_range(tower, enemies)
                if target is None:
                    continue
                target.hp -= tower.kind.damage
                tower.cooldown_remaining = tower.kind.cooldown
                if target.hp <= 0:
                    bounty = self.kill_bounty(target.kind)
                    self.players[player].gold += bounty
                    self.players[player].bounty_total += bounty
                    self.players[player].kills += 1
                    # dead units are removed the tick they die
                    enemies.remove(target)

    @staticmethod
    def _nearest_in_range(tower: Tower, enemies: list[Unit]) -> Optional[Unit]:
        best = None
        best_key = None
        for idx, unit in enumerate(enemies):
            if unit.leaked or unit.hp <= 0:
                continue
            d2 = (unit.row - tower.row) ** 2 + (unit.col - tower.col) ** 2
            if d2 <= tower.kind.range ** 2:
                key = (d2, idx)  # lowest index wins distance ties
                if best_key is None or key < best_key:
                    best, best_key = unit, key
        return best

    def _phase_leaks(self):
        for player in (0, 1):
            remaining = []
            for unit in self.units[player]:
                if unit.leaked:
                    enemy = self.players[1 - player]
                    enemy.health = max(0, enemy.health - unit.kind.leak_damage)
                    self.players[player].leaks_dealt += 1
                    enemy.leaks_taken += 1
                else:
                    remaining.append(unit)
            self.units[player] = remaining

    def _phase_income(self):
        if self.tick % self.config.income_interval == 0:
            for state in self.players:
                state.gold += state.income
                state.passive_total += state.income

    # -- invariants -------------------------------------------------------------

    def check_invariants(self):
        for player, state in enumerate(self.players):
            expected = (
                self.config.starting_gold + state.passive_total + state.bounty_total - state.spent_total
            )
            if state.gold != expected:
                raise AssertionError(
                    f"gold ledger broken for p{player}: have {state.gold}, expected {expected}"
                )
            if not 0 <= state.health <= self.config.starting_health:
                raise AssertionError(f"health out of range for p{player}: {state.health}")

    # -- observation encodings ---------------------------------------------------

    def _local_col(self, perspective: int, col: int) -> int:
        # mirror the lane axis for player 1 so "toward the enemy" is always +x
        return col if perspective == 0 else self.config.width - 1 - col

    def observe(self, mode: ObsMode, perspective: int = 0) -> np.ndarray:
        h, w = self.config.height, self.config.width
        if mode is ObsMode.MATRIX:
            obs = np.zeros((h, w, 5), dtype=np.float64)
            own, enemy = perspective, 1 - perspective
            for tower in self.towers[own]:
                obs[tower.row, self._local_col(perspective, tower.col), 0] = 1.0
            for unit in self.units[own]:
                obs[unit.row, self._local_col(perspective, unit.col), 1] = 1.0
            for tower in self.towers[enemy]:
                obs[tower.row, self._local_col(perspective, tower.col), 2] = 1.0
            for unit in self.units[enemy]:
                obs[unit.row, self._local_col(perspective, unit.col), 3] = 1.0
            state = self.players[own]
            obs[state.cursor_row, self._local_col(perspective, state.cursor_col), 4] = 1.0
            return obs
        if mode in (ObsMode.HEATMAP_RGB, ObsMode.HEATMAP_GRAY):
            rgb = np.zeros((h, w, 3), dtype=np.float64)
            own, enemy = perspective, 1 - perspective
            for tower in self.towers[own]:  # red: friendly buildings
                rgb[tower.row, self._local_col(perspective, tower.col), 0] = 1.0
            for unit in self.units[enemy]:  # green: enemy units
                rgb[unit.row, self._local_col(perspective, unit.col), 1] = 1.0
            state = self.players[own]  # teal: cursor
            cursor_col = self._local_col(perspective, state.cursor_col)
            rgb[state.cursor_row, cursor_col, 1] = 1.0
            rgb[state.cursor_row, cursor_col, 2] = 1.0
            if mode is ObsMode.HEATMAP_RGB:
                return rgb
            return rgb.mean(axis=2, keepdims=True)  # squash channels to [0, 1]
        if mode is ObsMode.RAW_IMAGE:
            return self.render_rgb(perspective=perspective)
        raise UnsupportedMode(str(mode))

    def render_rgb(self, px_width: int = 800, px_height: int = 600, perspective: int = 0) -> np.ndarray:
        """Upscaled RGB frame of the full game state."""
        h, w = self.config.height, self.config.width
        cells = np.zeros((h, w, 3), dtype=np.float64)
        cells[:, 0, :] = 0.15  # base zones shaded
        cells[:, w - 1, :] = 0.15
        own, enemy = perspective, 1 - perspective
        for tower in self.towers[own]:
            cells[tower.row, self._local_col(perspective, tower.col)] = (1.0, 0.0, 0.0)
        for tower in self.towers[enemy]:
            cells[tower.row, self._local_col(perspective, tower.col)] = (1.0, 0.5, 0.0)
        for unit in self.units[own]:
            cells[unit.row, self._local_col(perspective, unit.col)] = (0.0, 0.0, 1.0)
        for unit in self.units[enemy]:
            cells[unit.row, self._local_col(perspective, unit.col)] = (0.0, 1.0, 0.0)
        state = self.players[own]
        cells[state.cursor_row, self._local_col(perspective, state.cursor_col)] = (0.0, 1.0, 1.0)
        rows = (np.arange(px_height) * h) // px_height
        cols = (np.arange(px_width) * w) // px_width
        return cells[rows][:, cols]

    def aux_vector(self, perspective: int = 0) -> np.ndarray:
        """[own health, gold, lumber, income, enemy health, gold, lumber,
        income], each normalized by its cap and clipped to [0, 1]."""
        cfg = self.config

        def side(state: PlayerState):
            return [
                state.health / cfg.starting_health,
                state.gold / cfg.gold_cap,
                state.lumber / cfg.lumber_cap if cfg.lumber_cap else 0.0,
                state.income / cfg.income_cap,
            ]

        own, enemy = self.players[perspective], self.players[1 - perspective]
        return np.clip(np.array(side(own) + side(enemy), dtype=np.float64), 0.0, 1.0)

    def render(self) -> str:
        h, w = self.config.height, self.config.width
        canvas = [["."] * w for _ in range(h)]
        for player, marker in ((0, "T"), (1, "t")):
            for tower in self.towers[player]:
                canvas[tower.row][tower.col] = marker
        for player, marker in ((0, "u"), (1, "v")):
            for unit in self.units[player]:
                canvas[unit.row][unit.col] = marker
        for player, marker in ((0, "+"), (1, "x")):
            state = self.players[player]
            canvas[state.cursor_row][state.cursor_col] = marker
        header = f"tick {self.tick}  hp {self.players[0].health}:{self.players[1].health}"
        return header + "\n" + "\n".join("".join(row) for row in canvas) + "\n"

    def stats_row(self) -> dict:
        return {
            "winner": "" if self.winner is None else str(self.winner),
            "ticks": self.tick,
            "units_bought_p0": self.players[0].units_bought,
            "units_bought_p1": self.players[1].units_bought,
            "leaks_p0": self.players[0].leaks_dealt,
            "leaks_p1": self.players[1].leaks_dealt,
        }
