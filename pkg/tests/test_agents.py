import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ticklab.agents import (
    DqnAgent,
    Hyperparams,
    QTable,
    ReplayBuffer,
    build_dense_qnet,
    dqn_train_step,
    epsilon_at,
    q_update,
    select_action,
    state_key,
)
from ticklab.core import Transition
from ticklab.errors import EmptyBatch, EmptyBuffer, InvalidConfig
from ticklab.neural import Dense, LossSpec, Network, Sgd
from ticklab.rng import Prng


def test_hyperparam_defaults_match_schema():
    p = Hyperparams()
    assert p.alpha == 1e-4
    assert p.gamma == 0.99
    assert p.loss.kind == "huber"
    assert p.optimizer == "adam"
    assert p.batch_size == 32
    assert p.memory_size == 1_000_000
    assert (p.eps_min, p.eps_max, p.eps_start) == (0.10, 1.0, 1.0)


def test_hyperparam_validation():
    with pytest.raises(InvalidConfig):
        Hyperparams(alpha=1.5)
    with pytest.raises(InvalidConfig):
        Hyperparams(eps_min=0.5, eps_start=0.2)
    with pytest.raises(InvalidConfig):
        Hyperparams(batch_size=0)
    with pytest.raises(InvalidConfig):
        Hyperparams.from_dict({"bogus_field": 1})
    p = Hyperparams.from_dict({"alpha": 0.2, "loss": "mse", "eps_min": 0.0})
    assert p.alpha == 0.2 and p.loss.kind == "mse" and p.eps_min == 0.0


def test_epsilon_schedule_examples():
    p = Hyperparams(eps_start=1.0, eps_min=0.1, eps_decay=0.005)
    assert epsilon_at(p, 0) == 1.0
    assert epsilon_at(p, 180) == pytest.approx(0.1)
    assert epsilon_at(p, 10_000) == 0.1
    exp = Hyperparams(eps_decay=0.01, decay_law="exponential")
    assert epsilon_at(exp, 0) == 1.0
    assert epsilon_at(exp, 1) == pytest.approx(0.99)
    with pytest.raises(ValueError):
        epsilon_at(p, -1)


@given(st.integers(min_value=0, max_value=100_000), st.floats(min_value=0.0, max_value=0.1))
@settings(max_examples=100, deadline=None)
def test_epsilon_always_within_bounds(episode, decay):
    p = Hyperparams(eps_min=0.05, eps_max=1.0, eps_start=0.9, eps_decay=decay)
    eps = epsilon_at(p, episode)
    assert p.eps_min <= eps <= p.eps_max


def test_q_update_examples():
    table = QTable(2)
    new_q = q_update(table, b"s", 0, 1.0, b"t", True, alpha=0.1, gamma=0.99)
    assert new_q == pytest.approx(0.1)
    frozen = QTable(2)
    frozen.ensure(b"s")[0] = 0.7
    assert q_update(frozen, b"s", 0, 5.0, b"t", False, alpha=0.0, gamma=0.9) == pytest.approx(0.7)


def test_q_update_two_state_chain_converges_to_value_iteration():
    # s0 -> s1 (reward 0), s1 -> goal (reward 1, terminal); gamma = 0.9
    # fixed point: Q(s1) = 1.0, Q(s0) = 0.9
    table = QTable(1)
    for _ in range(400):
        q_update(table, b"s0", 0, 0.0, b"s1", False, alpha=0.5, gamma=0.9)
        q_update(table, b"s1", 0, 1.0, b"goal", True, alpha=0.5, gamma=0.9)
    assert table.q_values(b"s1")[0] == pytest.approx(1.0, abs=1e-6)
    assert table.q_values(b"s0")[0] == pytest.approx(0.9, abs=1e-6)


def test_select_action_argmax_and_tie_break():
    rng = Prng(0)
    assert select_action(np.array([1.0, 3.0, 2.0]), 0.0, rng) == 1
    assert select_action(np.array([2.0, 2.0, 1.0]), 0.0, rng) == 0
    with pytest.raises(ValueError):
        select_action(np.array([1.0]), 1.5, rng)


def test_select_action_full_exploration_is_uniform():
    rng = Prng(99)
    q = np.array([5.0, 0.0, 0.0, 0.0])  # argmax must not matter at eps=1
    counts = np.zeros(4, dtype=np.int64)
    for _ in range(100_000):
        counts[select_action(q, 1.0, rng)] += 1
    freqs = counts / 100_000
    assert freqs.min() >= 0.24 and freqs.max() <= 0.26


@given(
    st.lists(st.integers(min_value=-6400, max_value=6400), min_size=2, max_size=8),
    st.integers(min_value=-3200, max_value=3200),
)
@settings(max_examples=200, deadline=None)
def test_greedy_choice_invariant_under_constant_shift(qs64, shift64):
    # dyadic grid (multiples of 1/64) keeps the float addition exact, so the
    # real-arithmetic argmax invariance holds bit-for-bit
    qs = np.array(qs64, dtype=np.float64) / 64.0
    shift = shift64 / 64.0
    rng = Prng(1)
    assert select_action(qs, 0.0, rng) == select_action(qs + shift, 0.0, rng)


def _t(tag: int) -> Transition:
    obs = np.full(2, float(tag))
    return Transition(obs, 0, float(tag), obs, False)


def test_replay_fifo_eviction():
    buf = ReplayBuffer(capacity=2)
    buf.store(_t(1))
    buf.store(_t(2))
    buf.store(_t(3))
    rewards = sorted(t.reward for t in buf._items)
    assert rewards == [2.0, 3.0]
    assert len(buf) == 2


@given(st.lists(st.integers(min_value=0, max_value=1000), min_size=1, max_size=60), st.integers(1, 10))
@settings(max_examples=100, deadline=None)
def test_replay_keeps_exactly_the_most_recent_items(tags, capacity):
    buf = ReplayBuffer(capacity=capacity)
    for tag in tags:
        buf.store(_t(tag))
    kept = sorted(t.reward for t in buf._items)
    assert kept == sorted(float(t) for t in tags[-capacity:])


def test_replay_sampling_uniform_and_errors():
    buf = ReplayBuffer(capacity=10, seed=4)
    with pytest.raises(EmptyBuffer):
        buf.sample(1)
    buf.store(_t(7))
    assert buf.sample(1)[0].reward == 7.0
    with pytest.raises(ValueError):
        buf.sample(0)
    for tag in (8, 9):
        buf.store(_t(tag))
    counts = {7.0: 0, 8.0: 0, 9.0: 0}
    for t in buf.sample(30_000):
        counts[t.reward] += 1
    for count in counts.values():
        assert 0.31 <= count / 30_000 <= 0.36


def test_state_key_is_exact_bytes():
    a = np.array([0.0, 0.6, 1.0])
    b = np.array([0.0, 0.6, 1.0])
    assert state_key(a) == state_key(b)
    assert state_key(a) != state_key(np.array([0.0, 0.6, 1.0 + 1e-12]))


def _fixed_point_net():
    # 1-input, 2-action linear net with hand-set weights
    layer = Dense(1, 2, seed=0)
    layer.w[:] = np.array([[0.5, -0.25]])
    layer.b[:] = np.array([0.1, 0.2])
    return Network([layer]), layer


def test_dqn_train_step_fixed_point_leaves_weights_unchanged():
    net, layer = _fixed_point_net()
    params = Hyperparams(loss=LossSpec("mse"), gamma=0.9, batch_size=1, optimizer="sgd", alpha=0.1)
    s = np.array([1.0])
    q_sa = float(net.forward(s[None])[0, 0])
    batch = [Transition(s, 0, q_sa, s, True)]  # terminal: target y = r = Q(s,a)
    w_before = layer.w.copy()
    loss_value = dqn_train_step(net, None, batch, params, Sgd(0.1))
    assert loss_value == 0.0
    assert np.array_equal(layer.w, w_before)


def test_dqn_train_step_gamma_zero_targets_are_rewards():
    net, _ = _fixed_point_net()
    params = Hyperparams(loss=LossSpec("mse"), gamma=0.0, batch_size=2)
    s = np.array([1.0])
    taken = net.forward(np.stack([s, s]))[np.arange(2), [0, 1]]
    rewards = [0.3, -0.4]
    batch = [Transition(s, a, r, s, False) for a, r in zip([0, 1], rewards)]
    loss_value = dqn_train_step(net, None, batch, params, Sgd(0.0))
    expected = float(np.mean((taken - np.array(rewards)) ** 2))
    assert loss_value == pytest.approx(expected)


def test_dqn_train_step_rejects_empty_batch():
    net, _ = _fixed_point_net()
    with pytest.raises(EmptyBatch):
        dqn_train_step(net, None, [], Hyperparams(), Sgd(0.1))


def _chain_mdp():
    """3-state chain; action 1 advances toward a terminal reward of 1,
    action 0 retreats. Returns (transitions, optimal Q from value iteration)."""
    gamma = 0.9
    # (state, action) -> (next_state, reward, terminal)
    model = {
        (0, 0): (0, 0.0, False),
        (0, 1): (1, 0.0, False),
        (1, 0): (0, 0.0, False),
        (1, 1): (2, 0.0, False),
        (2, 0): (1, 0.0, False),
        (2, 1): (2, 1.0, True),
    }
    q = np.zeros((3, 2))
    for _ in range(500):
        new_q = q.copy()
        for (s, a), (s2, r, term) in model.items():
            new_q[s, a] = r + (0.0 if term else gamma * q[s2].max())
        q = new_q
    return model, q, gamma


def test_dqn_learns_tiny_mdp_policy():
    model, q_star, gamma = _chain_mdp()
    eye = np.eye(3)
    transitions = [
        Transition(eye[s], a, r, eye[s2], term) for (s, a), (s2, r, term) in model.items()
    ]
    net = build_dense_qnet(3, 2, hidden=16, seed=3)
    params = Hyperparams(alpha=0.01, gamma=gamma, loss=LossSpec("mse"), batch_size=6)
    buf = ReplayBuffer(capacity=16, seed=2)
    for t in transitions:
        buf.store(t)
    from ticklab.neural import Adam

    opt = Adam(0.01)
    for _ in range(5000):
        dqn_train_step(net, None, buf.sample(6), params, opt)
    learned = net.forward(eye)
    assert np.array_equal(np.argmax(learned, axis=1), np.argmax(q_star, axis=1))


def test_dqn_agent_trains_and_reports_loss():
    net = build_dense_qnet(4, 2, hidden=8, seed=1)
    params = Hyperparams(batch_size=4, memory_size=100, eps_decay=0.2)
    agent = DqnAgent(net, params, seed=0)
    agent.start_episode(0)
    obs = np.ones(4)
    for i in range(20):
        agent.observe(Transition(obs, i % 2, 0.5, obs, False))
    assert agent.pop_episode_loss() is not None
    assert agent.pop_episode_loss() is None
    assert agent.greedy_action(obs) in (0, 1)
