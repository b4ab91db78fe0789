from .env import DeepRtsLiteEnv, make_policy, write_histogram
from .game import CARRY_CAP, HARVEST_RATE, DeepRtsGame, RtsResources, Scoreboard, Worker
from .map import RtsMap, default_map, parse_map, serialize_map

__all__ = [
    "CARRY_CAP",
    "DeepRtsGame",
    "DeepRtsLiteEnv",
    "HARVEST_RATE",
    "RtsMap",
    "RtsResources",
    "Scoreboard",
    "Worker",
    "default_map",
    "make_policy",
    "parse_map",
    "serialize_map",
    "write_histogram",
]
