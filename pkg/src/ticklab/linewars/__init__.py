from .catalog import DlwConfig, TowerKind, UnitKind, default_config, load_config
from .env import DeepLineWarsEnv, append_stats, make_policy
from .game import DeepLineWarsGame, action_labels

__all__ = [
    "DeepLineWarsEnv",
    "DeepLineWarsGame",
    "DlwConfig",
    "TowerKind",
    "UnitKind",
    "action_labels",
    "append_stats",
    "default_config",
    "load_config",
    "make_policy",
]
