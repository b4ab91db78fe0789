"""Unit/tower catalog and match configuration for the lane-defense game.

Every number here (costs, hit points, speeds, the 10% income bonus, the
50% kill bounty, the 10-tick income interval, starting gold/health/income)
is a non-canonical default chosen so that hand-simulated example games end
within a couple of thousand ticks. All of them can be overridden from a
YAML config file; the game mechanics do not depend on the specific values.
"""

from __future__ import annotations

from dataclasses import dataclass

import yaml

from ..errors import InvalidConfig


@dataclass(frozen=True)
class UnitKind:
    name: str
    gold_cost: int
    hp: int
    speed: float  # cells advanced per tick (fractional accumulates)
    income_bonus: float = 0.10
    leak_damage: int = 1  # health points dealt when reaching the enemy base

    def __post_init__(self):
        if self.gold_cost < 0 or self.hp <= 0 or self.speed <= 0:
            raise InvalidConfig(f"unit {self.name!r}: cost/hp/speed out of range")
        if not 0.0 <= self.income_bonus <= 1.0:
            raise InvalidConfig(f"unit {self.name!r}: income_bonus must be within [0, 1]")


@dataclass(frozen=True)
class TowerKind:
    name: str
    gold_cost: int
    damage: int
    range: float  # Euclidean reach in cells
    cooldown: int  # ticks between shots

    def __post_init__(self):
        if self.gold_cost < 0 or self.damage <= 0 or self.range <= 0 or self.cooldown < 1:
            raise InvalidConfig(f"tower {self.name!r}: field out of range")


@dataclass(frozen=True)
class DlwConfig:
    width: int = 15
    height: int = 10
    starting_gold: int = 50
    starting_health: int = 50
    starting_income: int = 10
    starting_lumber: int = 0
    income_interval: int = 10  # ticks between passive gold grants
    bounty_percent: float = 0.50  # fraction of unit cost paid to the killer's owner
    units: tuple[UnitKind, ...] = ()
    towers: tuple[TowerKind, ...] = ()
    # caps used only to normalize the auxiliary economy vector
    gold_cap: int = 1000
    lumber_cap: int = 500
    income_cap: int = 100

    def __post_init__(self):
        if self.width < 3 or self.height < 1:
            raise InvalidConfig("grid must be at least 3 columns by 1 row")
        if not self.units or not self.towers:
            raise InvalidConfig("catalog needs at least one unit and one tower kind")
        if self.income_interval < 1:
            raise InvalidConfig("income_interval must be >= 1")
        if not 0.0 <= self.bounty_percent <= 1.0:
            raise InvalidConfig("bounty_percent must be within [0, 1]")
        if self.starting_health < 1:
            raise InvalidConfig("starting_health must be >= 1")


DEFAULT_UNITS = (
    UnitKind("grunt", gold_cost=10, hp=10, speed=0.5),
    UnitKind("runner", gold_cost=20, hp=6, speed=1.0),
    UnitKind("tank", gold_cost=50, hp=40, speed=0.25),
)

# tower throughput is deliberately low relative to unit influx so that a
# defense carpet can slow an invasion but never fully stall it; with stronger
# towers, two random players freeze each other and matches never end
DEFAULT_TOWERS = (
    TowerKind("arrow", gold_cost=40, damage=2, range=1.5, cooldown=6),
    TowerKind("cannon", gold_cost=80, damage=5, range=2.0, cooldown=10),
    TowerKind("sniper", gold_cost=120, damage=3, range=3.0, cooldown=8),
)


def default_config() -> DlwConfig:
    return DlwConfig(units=DEFAULT_UNITS, towers=DEFAULT_TOWERS)


def load_config(text: str) -> DlwConfig:
    """Parse a YAML match config; unspecified keys keep their defaults."""
    try:
        data = yaml.safe_load(text) or {}
    except yaml.YAMLError as exc:
        raise InvalidConfig(f"catalog config is not valid YAML: {exc}") from exc
    if not isinstance(data, dict):
        raise InvalidConfig("catalog config must be a mapping")
    base = default_config()
    grid = data.pop("grid", {})
    starting = data.pop("starting", {})
    units = data.pop("units", None)
    towers = data.pop("towers", None)
    known = {"income_interval", "bounty_percent", "gold_cap", "lumber_cap", "income_cap"}
    unknown = set(data) - known
    if unknown:
        raise InvalidConfig(f"unknown catalog key(s): {', '.join(sorted(unknown))}")
    try:
        unit_kinds = tuple(UnitKind(**u) for u in units) if units is not None else base.units
        tower_kinds = tuple(TowerKind(**t) for t in towers) if towers is not None else base.towers
    except TypeError as exc:
        raise InvalidConfig(f"bad unit/tower entry: {exc}") from exc
    return DlwConfig(
        width=int(grid.get("width", base.width)),
        height=int(grid.get("height", base.height)),
        starting_gold=int(starting.get("gold", base.starting_gold)),
        starting_health=int(starting.get("health", base.starting_health)),
        starting_income=int(starting.get("income", base.starting_income)),
        starting_lumber=int(starting.get("lumber", base.starting_lumber)),
        income_interval=int(data.get("income_interval", base.income_interval)),
        bounty_percent=float(data.get("bounty_percent", base.bounty_percent)),
        units=unit_kinds,
        towers=tower_kinds,
        gold_cap=int(data.get("gold_cap", base.gold_cap)),
        lumber_cap=int(data.get("lumber_cap", base.lumber_cap)),
        income_cap=int(data.get("income_cap", base.income_cap)),
    )
