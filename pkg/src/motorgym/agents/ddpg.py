"""DDPG for the continuous-action environments.

The critic is a two-branch network (state and action meet in a joint
trunk); the actor ends in tanh scaled to the action range. Exploration
adds Gaussian noise to the actor output with a standard deviation that
decays linearly over training. Both target networks track the online
ones with the same soft-update rate.
"""

import numpy as np

from .. import rng as rng_mod
from ..envs import Continuous
from ..errors import ConfigError
from ..nn import Adam, Mlp, ReplayBuffer, TwoBranchCritic, fileio, soft_update
from .common import linear_schedule


class DdpgAgent:
    agent_id = "ddpg"

    def __init__(
        self,
        obs_dim: int,
        act_low: float,
        act_high: float,
        actor_hidden=(64, 64),
        critic_state_layers=(16, 32),
        critic_action_layers=(32,),
        critic_trunk_layers=(256, 256),
        lr_actor: float = 1e-3,
        lr_critic: float = 2e-3,
        gamma: float = 0.99,
        tau: float = 0.005,
        buffer_capacity: int = 100_000,
        batch_size: int = 64,
        noise_sigma: float = 0.2,
        noise_sigma_final: float = 0.0,
        warmup_steps: int = 0,
        update_every: int = 1,
        dtype="float64",
        seed: int = 0,
    ):
        if not act_low < act_high:
            raise ConfigError(f"invalid action range [{act_low}, {act_high}]")
        self.act_low = float(act_low)
        self.act_high = float(act_high)
        scale = max(abs(self.act_low), abs(self.act_high))
        init_rng = rng_mod.stream(seed, "ddpg/init")
        dtype = np.dtype(dtype)
        self.actor = Mlp(
            (obs_dim, *actor_hidden, 1),
            ("relu",) * len(actor_hidden) + ("tanh",),
            out_scale=scale,
            rng=init_rng,
            dtype=dtype,
        )
        self.critic = TwoBranchCritic(
            obs_dim,
            1,
            critic_state_layers,
            critic_action_layers,
            critic_trunk_layers,
            rng=init_rng,
            dtype=dtype,
        )
        self.target_actor = self.actor.copy()
        self.target_critic = self.critic.copy()
        self.opt_actor = Adam(self.actor.params(), lr=lr_actor)
        self.opt_critic = Adam(self.critic.params(), lr=lr_critic)
        self.gamma = gamma
        self.tau = tau
        self.batch_size = batch_size
        self.noise_sigma = noise_sigma
        self.noise_sigma_final = noise_sigma_final
        self.warmup_steps = warmup_steps
        self.update_every = max(1, int(update_every))
        self.buffer = ReplayBuffer(buffer_capacity, obs_dim, act_dim=1)
        self._explore = rng_mod.stream(seed, "ddpg/explore")
        self._replay_rng = rng_mod.stream(seed, "ddpg/replay")

    def act(self, obs, greedy: bool = True, sigma: float = 0.0) -> float:
        a = float(self.actor.forward(np.asarray(obs).reshape(1, -1))[0, 0])
        if not greedy and sigma > 0.0:
            a += sigma * self._explore.standard_normal()
        return min(max(a, self.act_low), self.act_high)

    def update(self, batch) -> tuple[float, float]:
        """One critic and one actor step; returns (critic_loss, actor_objective)."""
        obs, actions, rewards, next_obs, dones = batch
        n = obs.shape[0]
        a_next = self.target_actor.forward(next_obs)
        q_next = self.target_critic.forward(next_obs, a_next)[:, 0]
        y = rewards + self.gamma * (1.0 - dones) * q_next
        q = self.critic.forward(obs, actions)[:, 0]
        err = q - y
        critic_loss = float(np.mean(err**2))
        critic_grads, _, _ = self.critic.backward((2.0 * err / n).reshape(-1, 1))
        self.opt_critic.step(self.critic.params(), critic_grads)

        a_pi = self.actor.forward(obs)
        q_pi = self.critic.forward(obs, a_pi)
        actor_objective = float(np.mean(q_pi))
        # ascend mean Q: the critic only supplies dQ/da, its own
        # parameters are left untouched here
        _, _, grad_a = self.critic.backward(np.full((n, 1), -1.0 / n))
        actor_grads, _ = self.actor.backward(grad_a)
        self.opt_actor.step(self.actor.params(), actor_grads)

        soft_update(self.target_actor, self.actor, self.tau)
        soft_update(self.target_critic, self.critic, self.tau)
        return critic_loss, actor_objective

    def train(self, env, episodes: int, on_episode=None) -> None:
        if not isinstance(env.action_space, Continuous):
            raise ConfigError(f"ddpg needs a continuous action space, not {env.action_space}")
        total_steps = 0
        for ep in range(episodes):
            sigma = linear_schedule(
                self.noise_sigma, self.noise_sigma_final, ep / max(1, episodes - 1)
            )
            obs = env.reset()
            ep_return = 0.0
            length = 0
            while True:
                if total_steps < self.warmup_steps:
                    action = self._explore.uniform(self.act_low, self.act_high)
                else:
                    action = self.act(obs, greedy=False, sigma=sigma)
                result = env.step(action)
                self.buffer.add(obs, action, result.reward, result.obs, result.terminated)
                ep_return += result.reward
                length += 1
                total_steps += 1
                if (
                    len(self.buffer) >= self.batch_size
                    and total_steps % self.update_every == 0
                ):
                    self.update(self.buffer.sample(self.batch_size, self._replay_rng))
                obs = result.obs
                if result.terminated or result.truncated:
                    break
            if on_episode is not None:
                on_episode(ep_return, length)

    def save(self, path, meta: dict | None = None) -> None:
        header = {
            "agent": self.agent_id,
            "act_low": self.act_low,
            "act_high": self.act_high,
            "gamma": self.gamma,
            "tau": self.tau,
        }
        header.update(meta or {})
        nets = {
            "actor": self.actor,
            "critic": self.critic,
            "target_actor": self.target_actor,
            "target_critic": self.target_critic,
        }
        fileio.save_networks(path, nets, header)

    @classmethod
    def load(cls, path):
        networks, meta = fileio.load_networks(path)
        actor = networks["actor"]
        critic = networks["critic"]
        agent = cls(
            actor.in_dim,
            meta["act_low"],
            meta["act_high"],
            actor_hidden=actor.sizes[1:-1],
            critic_state_layers=critic.state_layers,
            critic_action_layers=critic.action_layers,
            critic_trunk_layers=critic.trunk_layers,
            gamma=meta.get("gamma", 0.99),
            tau=meta.get("tau", 0.005),
        )
        agent.actor = actor
        agent.critic = critic
        agent.target_actor = networks.get("target_actor", actor.copy())
        agent.target_critic = networks.get("target_critic", critic.copy())
        return agent
