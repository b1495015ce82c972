"""Torque-actuated pendulum swing-up."""

import math

import numpy as np

from .base import Continuous, ControlEnv, wrap_angle


class PendulumEnv(ControlEnv):
    """Swing a pendulum upright and hold it there.

    State is (theta, theta_dot) with theta = 0 pointing up, wrapped to
    [-pi, pi]. The agent commands a torque in [-2, 2] N*m. Reward
    penalizes angle, angular velocity, and applied torque, evaluated at
    the pre-update state with the torque actually delivered this step;
    the minimum is about -16.27 and the maximum 0 at upright rest.
    """

    name = "pendulum"
    dt = 0.05
    state_names = ("theta", "theta_dot")
    obs_dim = 3
    default_max_episode_steps = 200
    default_motor_substeps = 1
    action_space = Continuous(-2.0, 2.0)

    g = 10.0
    m = 1.0
    length = 1.0
    max_speed = 8.0

    def action_feature(self, action) -> float:
        a = float(np.asarray(action).reshape(()))
        if not math.isfinite(a):
            raise ValueError(f"invalid action {action}")
        lo, hi = self.action_space.low, self.action_space.high
        return min(max(a, lo), hi)

    def actuated_velocity(self, state) -> float:
        return state[1]

    def env_state_update(self, state, f, h):
        theta, theta_dot = state
        theta_acc = 3.0 * self.g / (2.0 * self.length) * math.sin(theta) + 3.0 / (
            self.m * self.length**2
        ) * f
        new_theta_dot = theta_dot + theta_acc * h
        new_theta_dot = min(max(new_theta_dot, -self.max_speed), self.max_speed)
        # position advances with the pre-update velocity (plain Euler)
        new_theta = wrap_angle(theta + theta_dot * h)
        return (new_theta, new_theta_dot)

    def reward_fn(self, s_next, s, f) -> float:
        theta, theta_dot = s
        return -(wrap_angle(theta) ** 2 + 0.1 * theta_dot**2 + 0.001 * f**2)

    def get_obs(self, s_next, s=None, f=0.0) -> np.ndarray:
        theta, theta_dot = s_next
        return np.array([math.cos(theta), math.sin(theta), theta_dot])

    def initial_state(self, rng):
        theta = rng.uniform(-math.pi, math.pi)
        theta_dot = rng.uniform(-1.0, 1.0)
        return (theta, theta_dot)
