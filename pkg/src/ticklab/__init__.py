"""ticklab: tick-based RL game environments, agents and benchmarks."""

from .core import (
    ActionSpace,
    Agent,
    Environment,
    EpisodeLog,
    ObservationSpec,
    ObsMode,
    RandomAgent,
    StepResult,
    Transition,
    run_episode,
)
from .registry import Scenario, ScenarioRegistry, default_registry

__version__ = "0.1.0"

__all__ = [
    "ActionSpace",
    "Agent",
    "Environment",
    "EpisodeLog",
    "ObservationSpec",
    "ObsMode",
    "RandomAgent",
    "Scenario",
    "ScenarioRegistry",
    "StepResult",
    "Transition",
    "default_registry",
    "run_episode",
    "__version__",
]
