import numpy as np
import pytest

from ticklab.errors import NoForwardCache, ShapeMismatch, UnknownActivation
from ticklab.neural import (
    Activation,
    AvgPool,
    Conv2d,
    Dense,
    Flatten,
    LossSpec,
    MaxPool,
    Network,
    Softmax,
    activation,
    conv_output_size,
    loss,
    loss_grad,
    param_count,
    softmax,
)
from ticklab.neural.layers import uniform_array
from ticklab.rng import Prng


def test_activation_table_values():
    assert activation("sigmoid", 0.0) == pytest.approx(0.5)
    assert activation("tanh", 0.0) == 0.0
    assert activation("relu", -3.0) == 0.0
    assert activation("leaky_relu", -1.0) == pytest.approx(-0.01)
    assert np.allclose(activation("softmax", np.array([2.0, 2.0, 2.0])), [1 / 3] * 3)


def test_tanh_matches_closed_form():
    z = np.linspace(-4, 4, 41)
    assert np.allclose(activation("tanh", z), 2.0 / (1.0 + np.exp(-2.0 * z)) - 1.0)


def test_binary_is_strictly_positive_gate():
    # the threshold form: 1 only when the pre-activation exceeds 0
    assert activation("binary", 0.0) == 0.0
    assert activation("binary", -2.0) == 0.0
    assert activation("binary", 1e-12) == 1.0


def test_activation_dispatch_names_and_errors():
    assert activation("TanH", 0.3) == activation("tanh", 0.3)
    assert activation("LeakyReLU", -2.0) == pytest.approx(-0.02)
    with pytest.raises(UnknownActivation):
        activation("swish", 1.0)
    with pytest.raises(UnknownActivation):
        Activation("softmax")  # vector op, not elementwise


def test_softmax_simplex_properties():
    rng = np.random.default_rng(0)
    z = rng.normal(size=(50, 9)) * 20
    s = softmax(z)
    assert np.all(s >= 0)
    assert np.max(np.abs(s.sum(axis=-1) - 1.0)) < 1e-12


def test_loss_examples():
    spec = LossSpec("mse")
    assert loss(spec, np.array([1.0, 2.0]), np.array([1.0, 2.0])) == 0.0
    assert loss(spec, np.array([1.0, 2.0]), np.array([3.0, 4.0])) == pytest.approx(4.0)
    huber = LossSpec("huber", delta=1.0)
    # quadratic branch: 0.5 * 0.5^2 ; linear branch: 1 * (2 - 0.5)
    assert loss(huber, np.array([0.5]), np.array([0.0])) == pytest.approx(0.125)
    assert loss(huber, np.array([2.0]), np.array([0.0])) == pytest.approx(1.5)
    with pytest.raises(ShapeMismatch):
        loss(spec, np.zeros(3), np.zeros(4))


def _numeric_loss_grad(spec, predicted, target, eps=1e-7):
    grad = np.zeros_like(predicted)
    flat = predicted.reshape(-1)
    g = grad.reshape(-1)
    for i in range(flat.size):
        orig = flat[i]
        flat[i] = orig + eps
        up = loss(spec, predicted, target)
        flat[i] = orig - eps
        down = loss(spec, predicted, target)
        flat[i] = orig
        g[i] = (up - down) / (2 * eps)
    return grad


@pytest.mark.parametrize("kind,delta", [("mse", 1.0), ("huber", 1.0), ("huber", 0.3)])
def test_loss_grad_matches_finite_differences(kind, delta):
    spec = LossSpec(kind, delta)
    rng = np.random.default_rng(17)
    for _ in range(5):
        predicted = rng.normal(size=(4, 3))
        target = rng.normal(size=(4, 3))
        analytic = loss_grad(spec, predicted, target)
        numeric = _numeric_loss_grad(spec, predicted.copy(), target)
        assert np.max(np.abs(analytic - numeric)) < 1e-6


def test_dense_binary_perceptron_example():
    layer = Dense(2, 1)
    layer.w[:] = np.array([[1.0], [1.0]])
    layer.b[:] = 0.0
    net = Network([layer, Activation("binary")])
    out = net.forward(np.array([[1.0, -2.0]]))
    assert out[0, 0] == 0.0  # z = -1 gates to 0


def test_conv_output_sizes():
    assert conv_output_size(6, 4, 1) == 3
    assert conv_output_size(28, 9, 1) == 20
    assert conv_output_size(20, 9, 2) == 6
    assert conv_output_size(76, 9, 2) == 34
    with pytest.raises(ShapeMismatch):
        conv_output_size(5, 9, 1)


def test_conv_forward_shape_6x6():
    conv = Conv2d(1, 2, kernel=4, stride=1, seed=1)
    y = conv.forward(np.ones((1, 6, 6, 1)))
    assert y.shape == (1, 3, 3, 2)


def test_pooling_examples():
    x = np.array([[1.0, 3.0], [2.0, 4.0]]).reshape(1, 2, 2, 1)
    assert MaxPool(2, 2).forward(x)[0, 0, 0, 0] == 4.0
    assert AvgPool(2, 2).forward(x)[0, 0, 0, 0] == 2.5


def test_param_counts():
    assert Conv2d.count(1, 256, 9) == 20_992
    assert Conv2d.count(256, 256, 9) == 5_308_672
    assert Dense.count(49, 64) == 3_200
    assert param_count([]) == 0
    net = Network([Flatten(), Dense(49, 64, seed=0), Activation("relu"), Dense(64, 4, seed=1)])
    assert net.param_count == 49 * 64 + 64 + 64 * 4 + 4


def test_seeded_init_is_bit_identical():
    a = Dense(10, 5, seed=42)
    b = Dense(10, 5, seed=42)
    assert a.w.tobytes() == b.w.tobytes()
    assert uniform_array(9, (100,), 0.5).tobytes() == uniform_array(9, (100,), 0.5).tobytes()
    assert np.abs(uniform_array(9, (1000,), 0.5)).max() <= 0.5


def test_backward_requires_forward():
    layer = Dense(3, 2)
    with pytest.raises(NoForwardCache):
        layer.backward(np.zeros((1, 2)))
    net = Network([Dense(3, 2)])
    with pytest.raises(NoForwardCache):
        net.backward(np.zeros((1, 2)))


def test_dense_single_sample_gradient_is_outer_product():
    layer = Dense(3, 2, seed=5)
    x = np.array([[0.5, -1.0, 2.0]])
    delta = np.array([[0.25, -0.75]])
    layer.forward(x)
    layer.backward(delta)
    assert np.allclose(layer.dw, np.outer(x[0], delta[0]))
    assert np.allclose(layer.db, delta[0])


def test_zero_output_gradient_gives_zero_param_gradients():
    net = Network([Flatten(), Dense(8, 6, seed=2), Activation("tanh"), Dense(6, 3, seed=3)])
    net.forward(np.ones((2, 2, 2, 2)))
    net.backward(np.zeros((2, 3)))
    for _, _, grad in net.parameters():
        assert np.all(grad == 0)


def test_network_weight_roundtrip(tmp_path):
    net = Network([Flatten(), Dense(12, 7, seed=4), Activation("relu"), Dense(7, 3, seed=5)])
    x = np.linspace(0, 1, 24).reshape(2, 3, 4, 1)
    before = net.forward(x).copy()
    path = tmp_path / "weights.bin"
    net.save_weights(str(path))
    other = Network([Flatten(), Dense(12, 7, seed=9), Activation("relu"), Dense(7, 3, seed=10)])
    assert not np.allclose(other.forward(x), before)
    other.load_weights(str(path))
    assert np.array_equal(other.forward(x), before)


def test_weight_file_rejects_architecture_mismatch(tmp_path):
    net = Network([Dense(4, 2, seed=1)])
    path = tmp_path / "w.bin"
    net.save_weights(str(path))
    bigger = Network([Dense(4, 3, seed=1)])
    with pytest.raises(Exception):
        bigger.load_weights(str(path))
