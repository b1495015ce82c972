"""Mountain car, discrete and continuous variants.

The nominal step of this system spans a full second, which is far too
coarse for a motor loop, so motor mode defaults to 20 substeps of 0.05 s
(the dynamics are expressed per second and scaled by the substep
length). With a single substep the update reduces exactly to the
classic one-shot rule.
"""

import math

import numpy as np

from .base import Continuous, ControlEnv, Discrete


class _MountainCarBase(ControlEnv):
    dt = 1.0
    state_names = ("x", "v")
    obs_dim = 2
    default_motor_substeps = 20

    min_position = -1.2
    max_position = 0.6
    max_speed = 0.07
    gravity = 0.0025
    force_scale = 0.001  # per-variant
    goal_position = 0.5  # per-variant

    def actuated_velocity(self, state) -> float:
        return state[1]

    def env_state_update(self, state, f, h):
        x, v = state
        v = v + (self.force_scale * f - self.gravity * math.cos(3.0 * x)) * h
        v = min(max(v, -self.max_speed), self.max_speed)
        x = x + v * h
        x = min(max(x, self.min_position), self.max_position)
        if x == self.min_position and v < 0.0:
            v = 0.0
        return (x, v)

    def get_obs(self, s_next, s=None, f=0.0) -> np.ndarray:
        return np.array(s_next)

    def is_terminated(self, state) -> bool:
        return state[0] >= self.goal_position

    def initial_state(self, rng):
        return (rng.uniform(-0.6, -0.4), 0.0)


class MountainCarEnv(_MountainCarBase):
    """Discrete variant: three actions pushing left, idle, or right."""

    name = "mountaincar"
    default_max_episode_steps = 200
    action_space = Discrete(3)
    force_scale = 0.001
    goal_position = 0.5

    def action_feature(self, action) -> float:
        a = int(action)
        if a not in (0, 1, 2):
            raise ValueError(f"invalid action {action} for {self.name}")
        return float(a - 1)

    def reward_fn(self, s_next, s, f) -> float:
        return -1.0


class ContinuousMountainCarEnv(_MountainCarBase):
    """Continuous variant: force in [-1, 1], goal bonus minus effort cost."""

    name = "mountaincar-cont"
    default_max_episode_steps = 999
    action_space = Continuous(-1.0, 1.0)
    force_scale = 0.0015
    goal_position = 0.45

    def action_feature(self, action) -> float:
        a = float(np.asarray(action).reshape(()))
        if not math.isfinite(a):
            raise ValueError(f"invalid action {action}")
        return min(max(a, -1.0), 1.0)

    def reward_fn(self, s_next, s, f) -> float:
        bonus = 100.0 if s_next[0] >= self.goal_position else 0.0
        return bonus - 0.1 * f**2
