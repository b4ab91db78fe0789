"""Exception hierarchy shared by all ticklab subsystems."""


class TickLabError(Exception):
    """Base class for every error raised by this package."""


class InvalidConfig(TickLabError):
    """A scenario, environment or experiment configuration is malformed."""


class DuplicateScenarioId(TickLabError):
    """Scenario id already present in the registry."""


class UnknownScenario(TickLabError):
    """Scenario id not present in the registry."""


class InvalidAction(TickLabError):
    """Action index outside the environment's action space."""


class SteppedTerminalEnv(TickLabError):
    """step() called after the episode reached a terminal state."""


class UnsupportedMode(TickLabError):
    """Observation mode not available for this environment."""


class Unreachable(TickLabError):
    """No path exists between the requested grid cells."""


class InsufficientGold(TickLabError):
    """Purchase attempted without enough gold."""


class ShapeMismatch(TickLabError):
    """Tensor shapes incompatible for the requested operation."""


class UnknownActivation(TickLabError):
    """Activation name not present in the activation table."""


class NoForwardCache(TickLabError):
    """backward() called before forward() cached intermediates."""


class EmptyBuffer(TickLabError):
    """sample() called on an empty replay buffer."""


class EmptyBatch(TickLabError):
    """Training step invoked with an empty transition batch."""
