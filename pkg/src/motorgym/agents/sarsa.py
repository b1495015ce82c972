"""Episodic semi-gradient SARSA with tile-coded linear values.

The action-value function is linear in a sparse binary feature vector:
q(s, a) is the sum of one weight per active tile. The semi-gradient
update nudges each active weight by alpha times the TD error, so the
value itself moves by n_tilings * alpha toward the target.
"""

import numpy as np

from .. import rng as rng_mod
from ..envs import Discrete
from ..errors import ConfigError
from ..nn import fileio
from .common import epsilon_greedy
from .tiles import TileCoder, q_value


def sarsa_update(weights, active, reward, next_active, alpha, gamma) -> float:
    """One semi-gradient step; `next_active=None` marks a terminal target.

    Returns the TD error.
    """
    target = reward if next_active is None else reward + gamma * q_value(weights, next_active)
    td_error = target - q_value(weights, active)
    weights[active] += alpha * td_error
    return td_error


class SarsaAgent:
    agent_id = "sarsa"

    def __init__(
        self,
        env,
        alpha: float = 0.0375,
        gamma: float = 1.0,
        epsilon: float = 0.001,
        seed: int = 0,
        coder: TileCoder | None = None,
    ):
        if not isinstance(env.action_space, Discrete):
            raise ConfigError(f"sarsa needs a discrete action space, not {env.action_space}")
        if coder is None:
            if env.name not in ("mountaincar",):
                raise ConfigError(f"no default tile coder for env {env.name!r}")
            coder = TileCoder(
                lows=(env.min_position, -env.max_speed),
                highs=(env.max_position, env.max_speed),
                n_actions=env.action_space.n,
            )
        self.coder = coder
        self.alpha = alpha
        self.gamma = gamma
        self.epsilon = epsilon
        self.weights = np.zeros(coder.total_tiles)
        self._explore = rng_mod.stream(seed, "sarsa/explore")

    def q_values(self, state) -> np.ndarray:
        return np.array(
            [
                q_value(self.weights, self.coder.active_tiles(state, a))
                for a in range(self.coder.n_actions)
            ]
        )

    def act(self, obs, greedy: bool = True) -> int:
        eps = 0.0 if greedy else self.epsilon
        return epsilon_greedy(self.q_values(obs), eps, self._explore)

    def train(self, env, episodes: int, on_episode=None) -> None:
        for _ in range(episodes):
            obs = env.reset()
            state = tuple(obs)
            action = self.act(state, greedy=False)
            active = self.coder.active_tiles(state, action)
            ep_return = 0.0
            length = 0
            while True:
                result = env.step(action)
                ep_return += result.reward
                length += 1
                if result.terminated:
                    sarsa_update(self.weights, active, result.reward, None, self.alpha, self.gamma)
                    break
                next_state = tuple(result.obs)
                next_action = self.act(next_state, greedy=False)
                next_active = self.coder.active_tiles(next_state, next_action)
                sarsa_update(
                    self.weights, active, result.reward, next_active, self.alpha, self.gamma
                )
                state, action, active = next_state, next_action, next_active
                if result.truncated:
                    break
            if on_episode is not None:
                on_episode(ep_return, length)

    def save(self, path, meta: dict | None = None) -> None:
        header = {
            "agent": self.agent_id,
            "coder": self.coder.config(),
            "alpha": self.alpha,
            "gamma": self.gamma,
            "epsilon": self.epsilon,
        }
        header.update(meta or {})
        fileio.save_arrays(path, {"weights": self.weights}, header)

    @classmethod
    def load(cls, path, env):
        arrays, meta = fileio.load_arrays(path)
        agent = cls(
            env,
            alpha=meta["alpha"],
            gamma=meta["gamma"],
            epsilon=meta["epsilon"],
            coder=TileCoder.from_config(meta["coder"]),
        )
        agent.weights = arrays["weights"]
        return agent
