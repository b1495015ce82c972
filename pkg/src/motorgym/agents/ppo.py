"""PPO-clip with generalized advantage estimation and a KL stop.

Training proceeds in epochs of a fixed number of environment steps.
Trajectories are cut at terminals, time limits, and epoch boundaries;
non-terminal cuts bootstrap from the value estimate of the last
observation. Each update makes repeated full-batch passes over the
epoch's data, abandoning the policy passes once the approximate KL
divergence from the pre-update policy exceeds the target.
"""

import numpy as np

from .. import rng as rng_mod
from ..envs import Discrete
from ..errors import ConfigError
from ..nn import Adam, Mlp, fileio


def ppo_gae(rewards, values, last_value, gamma: float, lam: float):
    """GAE advantages and returns for one trajectory segment.

    delta_t = r_t + gamma * v_{t+1} - v_t, with v after the segment end
    replaced by `last_value` (0 for true terminals). Advantages are the
    (gamma * lam)-discounted tails of the deltas; returns are
    advantages plus values.
    """
    rewards = np.asarray(rewards, dtype=np.float64)
    values = np.asarray(values, dtype=np.float64)
    if rewards.shape != values.shape:
        raise ValueError("rewards and values must have equal length")
    n = rewards.size
    next_values = np.append(values[1:], last_value)
    deltas = rewards + gamma * next_values - values
    advantages = np.empty(n)
    acc = 0.0
    for t in range(n - 1, -1, -1):
        acc = deltas[t] + gamma * lam * acc
        advantages[t] = acc
    return advantages, advantages + values


def log_softmax(logits):
    z = logits - logits.max(axis=1, keepdims=True)
    return z - np.log(np.exp(z).sum(axis=1, keepdims=True))


def clipped_objective(ratio, advantage, clip_ratio: float):
    """Per-sample PPO-clip objective and the gradient mask w.r.t. ratio.

    objective = min(ratio * A, clip(ratio, 1-eps, 1+eps) * A); gradient
    flows through ratio only where the unclipped branch attains the min.
    """
    ratio = np.asarray(ratio, dtype=np.float64)
    advantage = np.asarray(advantage, dtype=np.float64)
    clipped = np.clip(ratio, 1.0 - clip_ratio, 1.0 + clip_ratio)
    objective = np.minimum(ratio * advantage, clipped * advantage)
    active = (ratio * advantage <= clipped * advantage).astype(np.float64)
    return objective, active


class PpoAgent:
    agent_id = "ppo"

    def __init__(
        self,
        obs_dim: int,
        n_actions: int,
        hidden=(64, 64),
        lr_actor: float = 3e-4,
        lr_critic: float = 1e-3,
        gamma: float = 0.99,
        lam: float = 0.97,
        clip_ratio: float = 0.2,
        target_kl: float = 0.01,
        steps_per_epoch: int = 4000,
        train_pi_iters: int = 80,
        train_v_iters: int = 80,
        seed: int = 0,
    ):
        acts = ("tanh",) * len(hidden)
        init_rng = rng_mod.stream(seed, "ppo/init")
        self.actor = Mlp((obs_dim, *hidden, n_actions), acts + ("linear",), rng=init_rng)
        self.critic = Mlp((obs_dim, *hidden, 1), acts + ("linear",), rng=init_rng)
        self.opt_actor = Adam(self.actor.params(), lr=lr_actor)
        self.opt_critic = Adam(self.critic.params(), lr=lr_critic)
        self.n_actions = n_actions
        self.gamma = gamma
        self.lam = lam
        self.clip_ratio = clip_ratio
        self.target_kl = target_kl
        self.steps_per_epoch = steps_per_epoch
        self.train_pi_iters = train_pi_iters
        self.train_v_iters = train_v_iters
        self._explore = rng_mod.stream(seed, "ppo/explore")

    def policy(self, obs):
        """Log-probabilities over actions for a batch of observations."""
        return log_softmax(self.actor.forward(np.atleast_2d(obs)))

    def value(self, obs):
        return self.critic.forward(np.atleast_2d(obs))[:, 0]

    def act(self, obs, greedy: bool = True) -> int:
        logp = self.policy(np.asarray(obs).reshape(1, -1))[0]
        if greedy:
            return int(np.argmax(logp))
        return int(self._explore.choice(self.n_actions, p=np.exp(logp)))

    def update(self, obs, actions, advantages, returns, logp_old):
        """Clipped-surrogate policy passes plus value regression passes.

        Returns (policy_loss, value_loss, approx_kl) from the first
        policy pass and the last value pass, with approx_kl the value
        that stopped the policy loop.
        """
        n = obs.shape[0]
        adv = advantages - advantages.mean()
        std = adv.std()
        if std > 1e-8:
            adv = adv / std
        rows = np.arange(n)
        one_hot = np.zeros((n, self.n_actions))
        one_hot[rows, actions] = 1.0

        policy_loss = approx_kl = 0.0
        for it in range(self.train_pi_iters):
            logp_all = self.policy(obs)
            logp = logp_all[rows, actions]
            approx_kl = float(np.mean(logp_old - logp))
            if it > 0 and approx_kl > self.target_kl:
                break
            ratio = np.exp(logp - logp_old)
            objective, active = clipped_objective(ratio, adv, self.clip_ratio)
            if it == 0:
                policy_loss = float(-np.mean(objective))
            grad_logp = -(active * ratio * adv) / n
            probs = np.exp(logp_all)
            grad_logits = grad_logp[:, None] * (one_hot - probs)
            grads, _ = self.actor.backward(grad_logits)
            self.opt_actor.step(self.actor.params(), grads)

        value_loss = 0.0
        for _ in range(self.train_v_iters):
            v = self.value(obs)
            err = v - returns
            value_loss = float(np.mean(err**2))
            grads, _ = self.critic.backward((2.0 * err / n).reshape(-1, 1))
            self.opt_critic.step(self.critic.params(), grads)
        return policy_loss, value_loss, approx_kl

    def train(self, env, epochs: int, on_episode=None, on_epoch=None) -> None:
        if not isinstance(env.action_space, Discrete):
            raise ConfigError(f"ppo needs a discrete action space, not {env.action_space}")
        spe = self.steps_per_epoch
        for epoch in range(epochs):
            obs_buf = np.zeros((spe, self.actor.in_dim))
            act_buf = np.zeros(spe, dtype=int)
            rew_buf = np.zeros(spe)
            val_buf = np.zeros(spe)
            logp_buf = np.zeros(spe)
            adv_buf = np.zeros(spe)
            ret_buf = np.zeros(spe)

            obs = env.reset()
            path_start = 0
            ep_return, ep_len = 0.0, 0
            ep_returns, ep_lengths = [], []
            for t in range(spe):
                logp_all = self.policy(obs.reshape(1, -1))[0]
                action = int(self._explore.choice(self.n_actions, p=np.exp(logp_all)))
                result = env.step(action)
                obs_buf[t] = obs
                act_buf[t] = action
                rew_buf[t] = result.reward
                val_buf[t] = self.value(obs.reshape(1, -1))[0]
                logp_buf[t] = logp_all[action]
                ep_return += result.reward
                ep_len += 1
                obs = result.obs
                epoch_ended = t == spe - 1
                if result.terminated or result.truncated or epoch_ended:
                    if result.terminated:
                        last_value = 0.0
                    else:
                        last_value = float(self.value(obs.reshape(1, -1))[0])
                    sl = slice(path_start, t + 1)
                    adv_buf[sl], ret_buf[sl] = ppo_gae(
                        rew_buf[sl], val_buf[sl], last_value, self.gamma, self.lam
                    )
                    ep_returns.append(ep_return)
                    ep_lengths.append(ep_len)
                    if on_episode is not None:
                        on_episode(ep_return, ep_len)
                    if not epoch_ended:
                        obs = env.reset()
                    path_start = t + 1
                    ep_return, ep_len = 0.0, 0
            policy_loss, value_loss, kl = self.update(
                obs_buf, act_buf, adv_buf, ret_buf, logp_buf
            )
            if on_epoch is not None:
                on_epoch(
                    {
                        "epoch": epoch,
                        "episodes": len(ep_returns),
                        "avg_return": float(np.mean(ep_returns)),
                        "avg_length": float(np.mean(ep_lengths)),
                        "max_length": int(max(ep_lengths)),
                        "policy_loss": policy_loss,
                        "value_loss": value_loss,
                        "approx_kl": kl,
                    }
                )

    def save(self, path, meta: dict | None = None) -> None:
        header = {"agent": self.agent_id, "gamma": self.gamma, "lam": self.lam}
        header.update(meta or {})
        fileio.save_networks(path, {"actor": self.actor, "critic": self.critic}, header)

    @classmethod
    def load(cls, path):
        networks, meta = fileio.load_networks(path)
        actor = networks["actor"]
        agent = cls(
            actor.in_dim,
            actor.out_dim,
            hidden=actor.sizes[1:-1],
            gamma=meta.get("gamma", 0.99),
            lam=meta.get("lam", 0.97),
        )
        agent.actor = actor
        agent.critic = networks["critic"]
        return agent
