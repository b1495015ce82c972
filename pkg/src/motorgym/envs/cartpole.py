"""Cart-pole balancing with a position-shaped reward.

The reward grants +1 only while the pole is within +/-0.2095 rad, the
cart within +/-2.4 m, AND the cart within 0.1 m of the origin; outside
the 0.1 m band the reward drops to 0 without ending the episode, which
pushes policies toward balancing at the center. Termination still uses
the wide bounds only.
"""

import math

import numpy as np

from .base import ControlEnv, Discrete


class CartPoleEnv(ControlEnv):
    name = "cartpole"
    dt = 0.02
    state_names = ("x", "x_dot", "theta", "theta_dot")
    obs_dim = 4
    default_max_episode_steps = 500
    default_motor_substeps = 1
    action_space = Discrete(2)

    g = 9.8
    mass_cart = 1.0
    mass_pole = 0.1
    half_length = 0.5
    force_mag = 10.0
    x_threshold = 2.4
    theta_threshold = 0.2095
    x_reward_band = 0.1

    @property
    def total_mass(self):
        return self.mass_cart + self.mass_pole

    @property
    def polemass_length(self):
        return self.mass_pole * self.half_length

    def action_feature(self, action) -> float:
        a = int(action)
        if a not in (0, 1):
            raise ValueError(f"invalid action {action} for {self.name}")
        return self.force_mag if a == 1 else -self.force_mag

    def actuated_velocity(self, state) -> float:
        return state[1]

    def env_state_update(self, state, f, h):
        x, x_dot, theta, theta_dot = state
        cos_t = math.cos(theta)
        sin_t = math.sin(theta)
        temp = (f + self.polemass_length * theta_dot**2 * sin_t) / self.total_mass
        theta_acc = (self.g * sin_t - cos_t * temp) / (
            self.half_length * (4.0 / 3.0 - self.mass_pole * cos_t**2 / self.total_mass)
        )
        x_acc = temp - self.polemass_length * theta_acc * cos_t / self.total_mass
        # plain Euler: positions advance with the pre-update velocities
        x = x + h * x_dot
        x_dot = x_dot + h * x_acc
        theta = theta + h * theta_dot
        theta_dot = theta_dot + h * theta_acc
        return (x, x_dot, theta, theta_dot)

    def reward_fn(self, s_next, s, f) -> float:
        x, _, theta, _ = s_next
        upright = abs(x) <= self.x_threshold and abs(theta) <= self.theta_threshold
        return 1.0 if upright and abs(x) <= self.x_reward_band else 0.0

    def get_obs(self, s_next, s=None, f=0.0) -> np.ndarray:
        return np.array(s_next)

    def is_terminated(self, state) -> bool:
        x, _, theta, _ = state
        return abs(x) > self.x_threshold or abs(theta) > self.theta_threshold

    def initial_state(self, rng):
        return tuple(rng.uniform(-0.05, 0.05, size=4).tolist())
