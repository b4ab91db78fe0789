"""Analytic backprop vs central finite differences for every layer kind.

The numeric side only ever calls forward(), so it is independent of the
backward implementations under test. The acceptance suite repeats this at
20 seeds per case; here a handful per layer keeps the unit run fast.
"""

import numpy as np
import pytest

from ticklab.neural import (
    Activation,
    AvgPool,
    Conv2d,
    Dense,
    LossSpec,
    MaxPool,
    Network,
    Softmax,
    finite_difference_grad,
    loss,
    loss_grad,
    max_relative_error,
)

TOL = 1e-4


def check_network_grads(net, x_shape, seed, loss_spec=None):
    """Compare input and parameter gradients against the numeric oracle."""
    rng = np.random.default_rng(seed)
    x = rng.normal(size=x_shape)
    loss_spec = loss_spec or LossSpec("mse")
    y0 = net.forward(x)
    target = rng.normal(size=y0.shape)

    def scalar_loss_of_input(xv):
        return loss(loss_spec, net.forward(xv), target)

    net.forward(x)
    dx = net.backward(loss_grad(loss_spec, net.forward(x), target))
    numeric_dx = finite_difference_grad(scalar_loss_of_input, x.copy())
    assert max_relative_error(dx, numeric_dx) < TOL

    # parameter gradients, one tensor at a time
    net.forward(x)
    net.backward(loss_grad(loss_spec, net.forward(x), target))
    analytic = {name: grad.copy() for name, _, grad in net.parameters()}
    for name, value, _ in net.parameters():
        def scalar_loss_of_param(pv, _value=value):
            _value[...] = pv
            return loss(loss_spec, net.forward(x), target)

        original = value.copy()
        numeric = finite_difference_grad(scalar_loss_of_param, value.copy())
        value[...] = original  # the closure leaves the live tensor perturbed
        assert max_relative_error(analytic[name], numeric) < TOL, name


@pytest.mark.parametrize("seed", range(4))
def test_dense_gradients(seed):
    check_network_grads(Network([Dense(6, 4, seed=seed)]), (3, 6), seed)


@pytest.mark.parametrize("seed", range(4))
@pytest.mark.parametrize("stride", [1, 2])
def test_conv_gradients(seed, stride):
    net = Network([Conv2d(2, 3, kernel=3, stride=stride, seed=seed)])
    check_network_grads(net, (2, 6, 6, 2), seed)


@pytest.mark.parametrize("seed", range(3))
def test_maxpool_gradients(seed):
    check_network_grads(Network([MaxPool(2, 2)]), (2, 4, 4, 2), seed)


@pytest.mark.parametrize("seed", range(3))
def test_maxpool_overlapping_window_gradients(seed):
    check_network_grads(Network([MaxPool(2, 1)]), (2, 4, 4, 1), seed + 50)


@pytest.mark.parametrize("seed", range(3))
def test_avgpool_gradients(seed):
    check_network_grads(Network([AvgPool(2, 2)]), (2, 4, 4, 2), seed)


@pytest.mark.parametrize("name", ["tanh", "sigmoid", "relu", "leaky_relu"])
def test_activation_gradients(name):
    for seed in range(3):
        net = Network([Dense(5, 5, seed=seed), Activation(name)])
        check_network_grads(net, (2, 5), seed)


def test_softmax_gradients():
    for seed in range(3):
        net = Network([Dense(4, 4, seed=seed), Softmax()])
        check_network_grads(net, (2, 4), seed)


@pytest.mark.parametrize("kind,delta", [("mse", 1.0), ("huber", 0.7)])
def test_losses_through_stacked_network(kind, delta):
    net = Network(
        [
            Conv2d(1, 2, kernel=3, stride=1, seed=11),
            Activation("relu"),
            MaxPool(2, 2),
        ]
    )
    check_network_grads(net, (2, 7, 7, 1), 11, loss_spec=LossSpec(kind, delta))
