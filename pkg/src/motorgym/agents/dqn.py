"""DQN with uniform replay and a periodically copied target network."""

import numpy as np

from .. import rng as rng_mod
from ..envs import Discrete
from ..errors import ConfigError
from ..nn import Adam, Mlp, ReplayBuffer, fileio
from .common import epsilon_greedy, linear_schedule


class DqnAgent:
    agent_id = "dqn"

    def __init__(
        self,
        obs_dim: int,
        n_actions: int,
        hidden=(64, 128),
        lr: float = 1e-3,
        gamma: float = 0.99,
        buffer_capacity: int = 100_000,
        batch_size: int = 64,
        target_copy_every: int = 200,
        epsilon_start: float = 1.0,
        epsilon_final: float = 0.05,
        epsilon_decay_fraction: float = 0.5,
        seed: int = 0,
    ):
        sizes = (obs_dim, *hidden, n_actions)
        activations = ("relu",) * len(hidden) + ("linear",)
        init_rng = rng_mod.stream(seed, "dqn/init")
        self.net = Mlp(sizes, activations, rng=init_rng)
        self.target = self.net.copy()
        self.opt = Adam(self.net.params(), lr=lr)
        self.gamma = gamma
        self.n_actions = n_actions
        self.batch_size = batch_size
        self.target_copy_every = target_copy_every
        self.epsilon_start = epsilon_start
        self.epsilon_final = epsilon_final
        self.epsilon_decay_fraction = epsilon_decay_fraction
        self.buffer = ReplayBuffer(buffer_capacity, obs_dim, act_dim=1)
        self._explore = rng_mod.stream(seed, "dqn/explore")
        self._replay_rng = rng_mod.stream(seed, "dqn/replay")
        self._train_steps = 0

    def act(self, obs, greedy: bool = True, epsilon: float = 0.0) -> int:
        q = self.net.forward(np.asarray(obs).reshape(1, -1))[0]
        return epsilon_greedy(q, 0.0 if greedy else epsilon, self._explore)

    def train_step(self, batch) -> float:
        """One gradient step on a replay batch; returns the MSE loss."""
        obs, actions, rewards, next_obs, dones = batch
        n = obs.shape[0]
        q_next = self.target.forward(next_obs).max(axis=1)
        y = rewards + self.gamma * (1.0 - dones) * q_next
        q_all = self.net.forward(obs)
        idx = actions[:, 0].astype(int)
        q_taken = q_all[np.arange(n), idx]
        err = q_taken - y
        loss = float(np.mean(err**2))
        grad = np.zeros_like(q_all)
        grad[np.arange(n), idx] = 2.0 * err / n
        grads, _ = self.net.backward(grad)
        self.opt.step(self.net.params(), grads)
        self._train_steps += 1
        if self._train_steps % self.target_copy_every == 0:
            self.target = self.net.copy()
        return loss

    def train(self, env, episodes: int, on_episode=None) -> None:
        if not isinstance(env.action_space, Discrete):
            raise ConfigError(f"dqn needs a discrete action space, not {env.action_space}")
        decay_episodes = max(1, int(episodes * self.epsilon_decay_fraction))
        for ep in range(episodes):
            epsilon = linear_schedule(self.epsilon_start, self.epsilon_final, ep / decay_episodes)
            obs = env.reset()
            ep_return = 0.0
            length = 0
            while True:
                action = self.act(obs, greedy=False, epsilon=epsilon)
                result = env.step(action)
                # truncation is a bookkeeping cutoff, not a real terminal
                self.buffer.add(obs, action, result.reward, result.obs, result.terminated)
                ep_return += result.reward
                length += 1
                if len(self.buffer) >= self.batch_size:
                    self.train_step(self.buffer.sample(self.batch_size, self._replay_rng))
                obs = result.obs
                if result.terminated or result.truncated:
                    break
            if on_episode is not None:
                on_episode(ep_return, length)

    def save(self, path, meta: dict | None = None) -> None:
        header = {"agent": self.agent_id, "gamma": self.gamma}
        header.update(meta or {})
        fileio.save_networks(path, {"net": self.net}, header)

    @classmethod
    def load(cls, path):
        networks, meta = fileio.load_networks(path)
        net = networks["net"]
        agent = cls(net.in_dim, net.out_dim, hidden=net.sizes[1:-1], gamma=meta.get("gamma", 0.99))
        agent.net = net
        agent.target = net.copy()
        return agent
