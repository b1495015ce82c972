"""Small dense networks with hand-written backprop.

Everything here is sized for the agents in this package: a handful of
layers, tens to hundreds of units, batches of a few thousand at most.
Parameters live in plain float64 numpy arrays; `params()` returns them
in a stable order ([W0, b0, W1, b1, ...]) that the optimizer, the soft
target update, and the file format all share.
"""

import numpy as np

from .. import rng as rng_mod

ACTIVATIONS = ("relu", "tanh", "linear")


def _apply_activation(name, z):
    if name == "relu":
        return np.maximum(z, 0.0)
    if name == "tanh":
        return np.tanh(z)
    return z


def _activation_grad(name, z, a):
    if name == "relu":
        return (z > 0.0).astype(z.dtype)
    if name == "tanh":
        return 1.0 - a * a
    return np.ones_like(z)


class Mlp:
    """Fully connected net with one activation tag per layer.

    `sizes` lists the layer widths including input, e.g. (3, 64, 64, 1);
    `activations` has one entry per weight layer. The output can be
    scaled by a constant (`out_scale`), used by actors whose tanh output
    must span the action range. Weights and biases start uniform in
    +/- 1/sqrt(fan_in).
    """

    def __init__(self, sizes, activations, out_scale=1.0, rng=None, dtype=np.float64):
        sizes = tuple(int(s) for s in sizes)
        activations = tuple(activations)
        if len(sizes) < 2:
            raise ValueError("need at least input and output sizes")
        if len(activations) != len(sizes) - 1:
            raise ValueError(f"need {len(sizes) - 1} activation tags, got {len(activations)}")
        for act in activations:
            if act not in ACTIVATIONS:
                raise ValueError(f"unknown activation {act!r}")
        if rng is None:
            rng = rng_mod.stream(0, "nn/init")
        self.sizes = sizes
        self.activations = activations
        self.out_scale = float(out_scale)
        self.dtype = np.dtype(dtype)
        self.weights = []
        self.biases = []
        for fan_in, fan_out in zip(sizes[:-1], sizes[1:]):
            bound = 1.0 / np.sqrt(fan_in)
            self.weights.append(rng.uniform(-bound, bound, size=(fan_in, fan_out)).astype(self.dtype))
            self.biases.append(rng.uniform(-bound, bound, size=fan_out).astype(self.dtype))
        self._cache = None

    @property
    def in_dim(self):
        return self.sizes[0]

    @property
    def out_dim(self):
        return self.sizes[-1]

    def params(self):
        out = []
        for w, b in zip(self.weights, self.biases):
            out.append(w)
            out.append(b)
        return out

    def forward(self, x):
        x = np.atleast_2d(np.asarray(x, dtype=self.dtype))
        if x.shape[1] != self.in_dim:
            raise ValueError(f"expected input width {self.in_dim}, got {x.shape[1]}")
        a = x
        pre = []
        acts = [a]
        for w, b, act in zip(self.weights, self.biases, self.activations):
            z = a @ w + b
            a = _apply_activation(act, z)
            pre.append(z)
            acts.append(a)
        self._cache = (pre, acts)
        return a * self.out_scale

    def backward(self, grad_out):
        """Backprop `grad_out` (d loss / d output, batch-shaped).

        Returns (param_grads, grad_input) with param_grads aligned to
        `params()`. Gradients are summed over the batch; divide the
        upstream gradient by the batch size for means.
        """
        if self._cache is None:
            raise RuntimeError("backward() before forward()")
        pre, acts = self._cache
        grad_out = np.atleast_2d(np.asarray(grad_out, dtype=self.dtype))
        if grad_out.shape != (acts[0].shape[0], self.out_dim):
            raise ValueError(f"gradient shape {grad_out.shape} does not match output")
        delta = grad_out * self.out_scale
        w_grads = [None] * len(self.weights)
        b_grads = [None] * len(self.biases)
        for k in range(len(self.weights) - 1, -1, -1):
            delta = delta * _activation_grad(self.activations[k], pre[k], acts[k + 1])
            w_grads[k] = acts[k].T @ delta
            b_grads[k] = delta.sum(axis=0)
            delta = delta @ self.weights[k].T
        grads = []
        for wg, bg in zip(w_grads, b_grads):
            grads.append(wg)
            grads.append(bg)
        return grads, delta

    def copy(self):
        clone = Mlp.__new__(Mlp)
        clone.sizes = self.sizes
        clone.activations = self.activations
        clone.out_scale = self.out_scale
        clone.dtype = self.dtype
        clone.weights = [w.copy() for w in self.weights]
        clone.biases = [b.copy() for b in self.biases]
        clone._cache = None
        return clone

    def arch(self):
        return {
            "kind": "mlp",
            "sizes": list(self.sizes),
            "activations": list(self.activations),
            "out_scale": self.out_scale,
        }


class TwoBranchCritic:
    """Q(s, a) with separate state and action branches joined by a trunk.

    The state branch and (optionally empty) action branch are ReLU
    stacks; their outputs are concatenated and fed to a ReLU trunk with
    a linear scalar head. An empty `action_layers` feeds the raw action
    straight into the concatenation.
    """

    def __init__(
        self, obs_dim, act_dim, state_layers, action_layers, trunk_layers, rng=None, dtype=np.float64
    ):
        if rng is None:
            rng = rng_mod.stream(0, "nn/init")
        self.dtype = np.dtype(dtype)
        self.obs_dim = int(obs_dim)
        self.act_dim = int(act_dim)
        self.state_layers = tuple(int(v) for v in state_layers)
        self.action_layers = tuple(int(v) for v in action_layers)
        self.trunk_layers = tuple(int(v) for v in trunk_layers)
        if not self.state_layers:
            raise ValueError("state branch needs at least one layer")
        self.state_branch = Mlp(
            (self.obs_dim, *self.state_layers),
            ("relu",) * len(self.state_layers),
            rng=rng,
            dtype=dtype,
        )
        if self.action_layers:
            self.action_branch = Mlp(
                (self.act_dim, *self.action_layers),
                ("relu",) * len(self.action_layers),
                rng=rng,
                dtype=dtype,
            )
            joint = self.state_layers[-1] + self.action_layers[-1]
        else:
            self.action_branch = None
            joint = self.state_layers[-1] + self.act_dim
        self.trunk = Mlp(
            (joint, *self.trunk_layers, 1),
            ("relu",) * len(self.trunk_layers) + ("linear",),
            rng=rng,
            dtype=dtype,
        )
        self._split = self.state_layers[-1]

    def params(self):
        out = self.state_branch.params()
        if self.action_branch is not None:
            out += self.action_branch.params()
        return out + self.trunk.params()

    def forward(self, obs, act):
        obs = np.atleast_2d(np.asarray(obs, dtype=self.dtype))
        act = np.atleast_2d(np.asarray(act, dtype=self.dtype))
        hs = self.state_branch.forward(obs)
        ha = self.action_branch.forward(act) if self.action_branch is not None else act
        self._last_act = act
        joint = np.concatenate([hs, ha], axis=1)
        return self.trunk.forward(joint)

    def backward(self, grad_out):
        """Returns (param_grads, grad_obs, grad_act)."""
        trunk_grads, grad_joint = self.trunk.backward(grad_out)
        grad_hs = grad_joint[:, : self._split]
        grad_ha = grad_joint[:, self._split :]
        state_grads, grad_obs = self.state_branch.backward(grad_hs)
        if self.action_branch is not None:
            action_grads, grad_act = self.action_branch.backward(grad_ha)
        else:
            action_grads, grad_act = [], grad_ha
        return state_grads + action_grads + trunk_grads, grad_obs, grad_act

    def copy(self):
        clone = TwoBranchCritic.__new__(TwoBranchCritic)
        clone.dtype = self.dtype
        clone.obs_dim = self.obs_dim
        clone.act_dim = self.act_dim
        clone.state_layers = self.state_layers
        clone.action_layers = self.action_layers
        clone.trunk_layers = self.trunk_layers
        clone.state_branch = self.state_branch.copy()
        clone.action_branch = self.action_branch.copy() if self.action_branch else None
        clone.trunk = self.trunk.copy()
        clone._split = self._split
        return clone

    def arch(self):
        return {
            "kind": "two_branch_critic",
            "obs_dim": self.obs_dim,
            "act_dim": self.act_dim,
            "state_layers": list(self.state_layers),
            "action_layers": list(self.action_layers),
            "trunk_layers": list(self.trunk_layers),
        }
