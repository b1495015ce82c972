import numpy as np
import pytest

from motorgym import rng as rng_mod
from motorgym.nn import (
    Adam,
    Mlp,
    ReplayBuffer,
    TwoBranchCritic,
    load_arrays,
    load_networks,
    save_arrays,
    save_networks,
    soft_update,
)


def central_difference_grads(params, loss_fn, h=1e-5):
    """Finite-difference gradient of loss_fn() w.r.t. each parameter array."""
    grads = []
    for p in params:
        g = np.zeros_like(p)
        flat = p.ravel()
        gflat = g.ravel()
        for k in range(flat.size):
            orig = flat[k]
            flat[k] = orig + h
            up = loss_fn()
            flat[k] = orig - h
            down = loss_fn()
            flat[k] = orig
            gflat[k] = (up - down) / (2.0 * h)
        grads.append(g)
    return grads


def max_rel_error(analytic, numeric):
    worst = 0.0
    for a, n in zip(analytic, numeric):
        denom = np.maximum(np.abs(a) + np.abs(n), 1e-8)
        worst = max(worst, float(np.max(np.abs(a - n) / denom)))
    return worst


# architectures the agents actually use
MLP_ARCHS = [
    ((3, 64, 64, 1), ("relu", "relu", "tanh"), 2.0),  # pendulum actor
    ((2, 64, 64, 1), ("relu", "relu", "tanh"), 1.0),  # mountain-car actor
    ((6, 64, 128, 3), ("relu", "relu", "linear"), 1.0),  # acrobot q-network
    ((4, 64, 64, 2), ("tanh", "tanh", "linear"), 1.0),  # cartpole policy
    ((4, 64, 64, 1), ("tanh", "tanh", "linear"), 1.0),  # cartpole value
]

CRITIC_ARCHS = [
    (3, (16, 32), (32,), (256, 256)),  # pendulum critic
    (2, (64,), (), (64,)),  # mountain-car critic (raw action concat)
]


class TestForward:
    def test_bias_only_with_zero_weights(self):
        net = Mlp((3, 2), ("linear",), rng=rng_mod.stream(0, "t"))
        net.weights[0][:] = 0.0
        net.biases[0][:] = [1.5, -2.0]
        out = net.forward(np.ones((4, 3)))
        assert np.allclose(out, [[1.5, -2.0]] * 4)

    def test_identity_layer(self):
        net = Mlp((3, 3), ("linear",), rng=rng_mod.stream(0, "t"))
        net.weights[0][:] = np.eye(3)
        net.biases[0][:] = 0.0
        x = np.array([[0.3, -1.2, 4.0]])
        assert np.allclose(net.forward(x), x)

    def test_activation_values(self):
        relu = Mlp((1, 1), ("relu",), rng=rng_mod.stream(0, "t"))
        relu.weights[0][:] = 1.0
        relu.biases[0][:] = 0.0
        assert relu.forward([[-1.0]])[0, 0] == 0.0
        tanh = Mlp((1, 1), ("tanh",), rng=rng_mod.stream(0, "t"))
        tanh.weights[0][:] = 1.0
        tanh.biases[0][:] = 0.0
        assert tanh.forward([[0.0]])[0, 0] == 0.0

    def test_forward_is_pure(self):
        net = Mlp((4, 8, 2), ("tanh", "linear"), rng=rng_mod.stream(1, "t"))
        x = rng_mod.stream(2, "x").normal(size=(5, 4))
        out1 = net.forward(x)
        out2 = net.forward(x)
        assert np.array_equal(out1, out2)

    def test_shape_mismatch(self):
        net = Mlp((4, 2), ("linear",), rng=rng_mod.stream(0, "t"))
        with pytest.raises(ValueError):
            net.forward(np.ones((3, 5)))

    def test_output_shape(self):
        net = Mlp((4, 8, 3), ("relu", "linear"), rng=rng_mod.stream(0, "t"))
        assert net.forward(np.ones((7, 4))).shape == (7, 3)


class TestBackward:
    def test_backward_before_forward(self):
        net = Mlp((2, 2), ("linear",), rng=rng_mod.stream(0, "t"))
        with pytest.raises(RuntimeError):
            net.backward(np.ones((1, 2)))

    def test_zero_grad_in_zero_grads_out(self):
        net = Mlp((3, 5, 2), ("tanh", "linear"), rng=rng_mod.stream(3, "t"))
        net.forward(np.ones((4, 3)))
        grads, gin = net.backward(np.zeros((4, 2)))
        assert all(np.all(g == 0.0) for g in grads)
        assert np.all(gin == 0.0)

    def test_linear_layer_grad_is_outer_product(self):
        net = Mlp((3, 2), ("linear",), rng=rng_mod.stream(0, "t"))
        x = np.array([[1.0, -2.0, 0.5]])
        g = np.array([[0.7, -0.3]])
        net.forward(x)
        grads, _ = net.backward(g)
        assert np.allclose(grads[0], np.outer(x[0], g[0]))
        assert np.allclose(grads[1], g[0])

    @pytest.mark.parametrize("sizes,acts,scale", MLP_ARCHS)
    def test_gradcheck_small_variants(self, sizes, acts, scale):
        # shrink the hidden layers so central differences stay fast;
        # the full-size architectures run in the acceptance suite
        small = tuple(min(s, 6) for s in sizes)
        rng = rng_mod.stream(7, f"gradcheck/{small}")
        net = Mlp(small, acts, out_scale=scale, rng=rng)
        x = rng.normal(size=(4, small[0]))
        c = rng.normal(size=(4, small[-1]))

        def loss():
            return float(np.sum(net.forward(x) * c))

        loss()
        analytic, _ = net.backward(c)
        numeric = central_difference_grads(net.params(), loss)
        assert max_rel_error(analytic, numeric) < 1e-4

    def test_input_gradient(self):
        rng = rng_mod.stream(8, "gradcheck/input")
        net = Mlp((3, 5, 2), ("tanh", "linear"), rng=rng)
        x = rng.normal(size=(2, 3))
        c = rng.normal(size=(2, 2))

        def loss(xv):
            return float(np.sum(net.forward(xv) * c))

        loss(x)
        _, grad_in = net.backward(c)
        numeric = np.zeros_like(x)
        h = 1e-6
        for idx in np.ndindex(*x.shape):
            xp = x.copy()
            xm = x.copy()
            xp[idx] += h
            xm[idx] -= h
            numeric[idx] = (loss(xp) - loss(xm)) / (2 * h)
        assert np.allclose(grad_in, numeric, rtol=1e-5, atol=1e-7)


class TestTwoBranchCritic:
    @pytest.mark.parametrize("obs_dim,state_layers,action_layers,trunk", CRITIC_ARCHS)
    def test_gradcheck_small_variants(self, obs_dim, state_layers, action_layers, trunk):
        small = lambda layers: tuple(min(v, 6) for v in layers)
        rng = rng_mod.stream(9, f"gradcheck/critic{obs_dim}")
        net = TwoBranchCritic(obs_dim, 1, small(state_layers), small(action_layers), small(trunk), rng=rng)
        obs = rng.normal(size=(3, obs_dim))
        act = rng.normal(size=(3, 1))

        def loss():
            return float(np.sum(net.forward(obs, act)))

        loss()
        analytic, _, grad_act = net.backward(np.ones((3, 1)))
        numeric = central_difference_grads(net.params(), loss)
        assert max_rel_error(analytic, numeric) < 1e-4

        # action gradient against finite differences too (the actor
        # update depends on it)
        h = 1e-6
        num_act = np.zeros_like(act)
        for idx in np.ndindex(*act.shape):
            ap, am = act.copy(), act.copy()
            ap[idx] += h
            am[idx] -= h
            num_act[idx] = (
                float(np.sum(net.forward(obs, ap))) - float(np.sum(net.forward(obs, am)))
            ) / (2 * h)
        assert np.allclose(grad_act, num_act, rtol=1e-5, atol=1e-7)

    def test_raw_action_concat(self):
        rng = rng_mod.stream(1, "critic")
        net = TwoBranchCritic(2, 1, (4,), (), (4,), rng=rng)
        assert net.action_branch is None
        out = net.forward(np.zeros((2, 2)), np.ones((2, 1)))
        assert out.shape == (2, 1)


class TestAdam:
    def test_first_step_is_signed_lr(self):
        lr = 1e-3
        p = np.array([1.0, -2.0, 3.0])
        g = np.array([0.5, -1.5, 2.0])
        opt = Adam([p], lr=lr)
        before = p.copy()
        opt.step([p], [g])
        delta = p - before
        assert np.allclose(delta, -lr * np.sign(g), atol=1e-6)

    def test_zero_gradient_no_change(self):
        p = np.array([1.0, 2.0])
        opt = Adam([p], lr=0.1)
        before = p.copy()
        opt.step([p], [np.zeros(2)])
        assert np.array_equal(p, before)

    def test_second_step_closed_form(self):
        # with the same gradient twice, bias correction makes the two
        # steps identical; derive step 2 from the moment recursions
        lr, b1, b2, eps = 1e-3, 0.9, 0.999, 1e-8
        g = 0.37
        p = np.array([0.0])
        opt = Adam([p], lr=lr)
        opt.step([p], [np.array([g])])
        first = p[0]
        m2 = (b1 * (1 - b1) * g + (1 - b1) * g) / (1 - b1**2)
        v2 = (b2 * (1 - b2) * g * g + (1 - b2) * g * g) / (1 - b2**2)
        expected_second = -lr * m2 / (np.sqrt(v2) + eps)
        opt.step([p], [np.array([g])])
        second = p[0] - first
        assert second == pytest.approx(expected_second, rel=1e-12)
        assert abs(second) <= abs(first) + 1e-12

    def test_shape_mismatch(self):
        p = np.zeros(3)
        opt = Adam([p], lr=0.1)
        with pytest.raises(ValueError):
            opt.step([p], [np.zeros(4)])


class TestSoftUpdate:
    def _pair(self):
        rng = rng_mod.stream(5, "soft")
        a = Mlp((3, 4, 2), ("relu", "linear"), rng=rng)
        b = Mlp((3, 4, 2), ("relu", "linear"), rng=rng)
        return a, b

    def test_tau_one_copies(self):
        target, online = self._pair()
        soft_update(target, online, 1.0)
        for tp, op in zip(target.params(), online.params()):
            assert np.array_equal(tp, op)

    def test_tau_zero_is_noop(self):
        target, online = self._pair()
        before = [p.copy() for p in target.params()]
        soft_update(target, online, 0.0)
        for tp, b in zip(target.params(), before):
            assert np.array_equal(tp, b)

    def test_midpoint(self):
        target, online = self._pair()
        for tp in target.params():
            tp[:] = 0.0
        for op in online.params():
            op[:] = 2.0
        soft_update(target, online, 0.5)
        for tp in target.params():
            assert np.allclose(tp, 1.0)

    def test_composition_is_affine(self):
        # tau=a then tau=b equals a single update with a + b - ab
        a, b = 0.3, 0.45
        t1, online = self._pair()
        t2 = t1.copy()
        soft_update(t1, online, a)
        soft_update(t1, online, b)
        soft_update(t2, online, a + b - a * b)
        for p1, p2 in zip(t1.params(), t2.params()):
            assert np.allclose(p1, p2, atol=1e-12)

    def test_architecture_mismatch(self):
        rng = rng_mod.stream(5, "soft")
        target = Mlp((3, 4, 2), ("relu", "linear"), rng=rng)
        online = Mlp((3, 5, 2), ("relu", "linear"), rng=rng)
        with pytest.raises(ValueError):
            soft_update(target, online, 0.5)


class TestReplayBuffer:
    def test_single_item_batch(self):
        buf = ReplayBuffer(8, obs_dim=2)
        buf.add([1.0, 2.0], 0, 0.5, [3.0, 4.0], False)
        obs, act, rew, nxt, done = buf.sample(4, rng_mod.stream(0, "r"))
        assert obs.shape == (4, 2)
        assert np.all(obs == [1.0, 2.0])

    def test_empty_buffer_raises(self):
        buf = ReplayBuffer(8, obs_dim=2)
        with pytest.raises(ValueError):
            buf.sample(1, rng_mod.stream(0, "r"))

    def test_seeded_sampling_reproducible(self):
        buf = ReplayBuffer(16, obs_dim=1)
        for k in range(10):
            buf.add([float(k)], 0, 0.0, [0.0], False)
        s1 = buf.sample(6, rng_mod.stream(3, "r"))[0]
        s2 = buf.sample(6, rng_mod.stream(3, "r"))[0]
        assert np.array_equal(s1, s2)

    def test_ring_overwrites_oldest(self):
        buf = ReplayBuffer(4, obs_dim=1)
        for k in range(6):
            buf.add([float(k)], 0, 0.0, [0.0], False)
        assert len(buf) == 4
        assert set(buf.obs[:, 0]) == {2.0, 3.0, 4.0, 5.0}

    def test_sampling_is_uniform(self):
        buf = ReplayBuffer(16, obs_dim=1)
        for k in range(10):
            buf.add([float(k)], 0, 0.0, [0.0], False)
        obs = buf.sample(100_000, rng_mod.stream(7, "r"))[0][:, 0]
        freq = np.bincount(obs.astype(int), minlength=10) / obs.size
        assert np.all(np.abs(freq - 0.1) < 0.01)

    def test_done_flag_roundtrip(self):
        buf = ReplayBuffer(4, obs_dim=1)
        buf.add([0.0], 0, 0.0, [0.0], True)
        buf.add([1.0], 0, 0.0, [0.0], False)
        assert buf.dones[0] == 1.0 and buf.dones[1] == 0.0


class TestFileio:
    def test_mlp_roundtrip(self, tmp_path):
        rng = rng_mod.stream(11, "io")
        net = Mlp((3, 8, 2), ("relu", "tanh"), out_scale=2.0, rng=rng)
        path = tmp_path / "net.txt"
        save_networks(path, {"actor": net}, meta={"agent": "test", "env": "pendulum"})
        loaded, meta = load_networks(path)
        clone = loaded["actor"]
        assert meta["agent"] == "test"
        assert clone.sizes == net.sizes
        assert clone.out_scale == 2.0
        x = rng.normal(size=(5, 3))
        assert np.array_equal(clone.forward(x), net.forward(x))

    def test_critic_roundtrip(self, tmp_path):
        rng = rng_mod.stream(12, "io")
        net = TwoBranchCritic(3, 1, (4, 6), (6,), (8,), rng=rng)
        path = tmp_path / "critic.txt"
        save_networks(path, {"q": net}, meta={})
        clone = load_networks(path)[0]["q"]
        obs = rng.normal(size=(4, 3))
        act = rng.normal(size=(4, 1))
        assert np.array_equal(clone.forward(obs, act), net.forward(obs, act))

    def test_array_roundtrip(self, tmp_path):
        w = rng_mod.stream(13, "io").normal(size=1944)
        path = tmp_path / "w.txt"
        save_arrays(path, {"weights": w}, meta={"agent": "sarsa"})
        arrays, meta = load_arrays(path)
        assert np.array_equal(arrays["weights"], w)
        assert meta["agent"] == "sarsa"

    def test_rejects_garbage(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("not a parameter file\n")
        with pytest.raises(ValueError):
            load_networks(path)
