from ..core import RandomAgent
from .dqn import DqnAgent, build_dense_qnet, dqn_train_step
from .hyper import Hyperparams, epsilon_at
from .qtable import QTable, TabularQAgent, q_update, select_action, state_key
from .replay import ReplayBuffer

__all__ = [
    "DqnAgent",
    "Hyperparams",
    "QTable",
    "RandomAgent",
    "ReplayBuffer",
    "TabularQAgent",
    "build_dense_qnet",
    "dqn_train_step",
    "epsilon_at",
    "q_update",
    "select_action",
    "state_key",
]
