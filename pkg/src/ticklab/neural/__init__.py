from .activations import activation, activation_pair, softmax
from .gradcheck import finite_difference_grad, max_relative_error
from .layers import Activation, AvgPool, Conv2d, Dense, Flatten, Layer, MaxPool, Softmax, conv_output_size
from .losses import HUBER, MSE, LossSpec, loss, loss_grad
from .network import Network, param_count
from .optim import Adam, Sgd, make_optimizer

__all__ = [
    "Activation",
    "Adam",
    "AvgPool",
    "Conv2d",
    "Dense",
    "Flatten",
    "HUBER",
    "Layer",
    "LossSpec",
    "MSE",
    "MaxPool",
    "Network",
    "Sgd",
    "Softmax",
    "activation",
    "activation_pair",
    "conv_output_size",
    "finite_difference_grad",
    "loss",
    "loss_grad",
    "make_optimizer",
    "max_relative_error",
    "param_count",
    "softmax",
]
