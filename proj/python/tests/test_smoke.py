import math

import numpy as np
import pytest

import activemix as am


def test_reset_and_step_shapes():
    env = am.MixingEnv()
    obs = env.reset(0)
    assert obs.shape == (2, 4, 4)
    assert obs.sum() == 96
    assert obs[0, 2:, :].sum() == 0 and obs[1, :2, :].sum() == 0
    obs2, reward, done, info = env.step([1] * 16)
    assert obs2.shape == (2, 4, 4)
    assert obs2.sum() == 96
    assert info["t"] == 1 and not done
    assert reward == pytest.approx(info["r_m"])


def test_no_op_episode_is_frozen():
    env = am.MixingEnv()
    obs0 = env.reset(11)
    pos0 = env.positions().copy()
    rm0 = am.mixing_reward(obs0)
    done = False
    steps = 0
    while not done:
        obs, reward, done, _ = env.step([0] * 16)
        steps += 1
        assert reward == rm0
    assert steps == 100
    np.testing.assert_array_equal(env.positions(), pos0)
    with pytest.raises(RuntimeError):
        env.step([0] * 16)


def test_reward_anchors():
    one_bin = np.zeros((2, 4, 4), dtype=int)
    one_bin[:, 1, 1] = 48
    assert am.homogeneity_reward(one_bin) == -0.01
    uniform = np.full((2, 4, 4), 3)
    assert am.mixing_reward(uniform) == 0.0
    assert am.homogeneity_reward(uniform) == 0.0
    assert am.combined_reward(-0.2, -0.4, 0.5) == pytest.approx(-0.3)
    with pytest.raises(ValueError):
        am.combined_reward(0.0, 0.0, 1.5)


def test_invalid_actions_raise():
    params = am.SimParams()
    params.interactions = am.InteractionSet.ATTRACTIVE_ONLY
    env = am.MixingEnv(params)
    env.reset(0)
    with pytest.raises(ValueError):
        env.step([2] * 16)
    with pytest.raises(ValueError):
        env.step([0] * 15)


def test_action_codec():
    assert am.encode_action(0) == [0] * 16
    assert am.encode_action(3**16 - 1) == [2] * 16
    assert am.decode_action(am.encode_action(12345)) == 12345


def test_spectral_helpers():
    c = am.pair_coefficient(1.0, True)
    assert c == pytest.approx(0.0075)
    m = np.array([[1 - c, c], [c, 1 - c]])
    eig = am.symmetric_eigenvalues(m)
    assert eig[0] == pytest.approx(1 - 2 * c, abs=1e-12)
    assert eig[1] == pytest.approx(1.0, abs=1e-12)
    lo, hi = am.gershgorin_bounds(m)
    assert lo == pytest.approx(0.985) and hi == pytest.approx(1.0)
    value, finite = am.log_determinant(eig)
    assert finite and value == pytest.approx(math.log(0.985))
    dx, dy = am.minimum_image_displacement((1.9, 0.0), (-1.9, 0.0))
    assert dx == pytest.approx(-0.2) and dy == 0.0


def test_update_matrix_rows_sum_to_one():
    env = am.MixingEnv()
    env.reset(2)
    env.step([1] * 16)
    m = env.update_matrix()
    assert m.shape[0] == m.shape[1] > 0
    np.testing.assert_allclose(m.sum(axis=1), 1.0, atol=1e-12)
    np.testing.assert_array_equal(m, m.T)


def test_policy_action():
    obs = np.zeros((2, 4, 4), dtype=int)
    assert am.policy_action("oscillation", obs, 0) == [1] * 16
    assert am.policy_action("oscillation", obs, 7) == [2] * 16
    with pytest.raises(ValueError):
        am.policy_action("spin", obs, 0)
