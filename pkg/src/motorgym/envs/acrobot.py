"""Two-link acrobot with torque applied at the elbow joint."""

import math

import numpy as np

from .base import ControlEnv, Discrete, wrap_angle


class AcrobotEnv(ControlEnv):
    """Swing the free end of a two-link chain above the goal height.

    State is (theta1, theta2, dtheta1, dtheta2): the first joint angle
    from the downward vertical, the second relative to the first, and
    their velocities. The dynamics follow the standard two-link
    equations with unit masses/lengths, integrated with RK4. Motor mode
    splits the 0.2 s step into ten 0.02 s substeps; the motor's BEMF is
    driven by the actuated joint's relative velocity dtheta2.
    """

    name = "acrobot"
    dt = 0.2
    state_names = ("theta1", "theta2", "dtheta1", "dtheta2")
    obs_dim = 6
    default_max_episode_steps = 500
    default_motor_substeps = 10
    action_space = Discrete(3)

    link_length_1 = 1.0
    link_mass_1 = 1.0
    link_mass_2 = 1.0
    link_com_1 = 0.5
    link_com_2 = 0.5
    link_moi = 1.0
    g = 9.8
    max_vel_1 = 4.0 * math.pi
    max_vel_2 = 9.0 * math.pi

    def action_feature(self, action) -> float:
        a = int(action)
        if a not in (0, 1, 2):
            raise ValueError(f"invalid action {action} for {self.name}")
        return float(a - 1)

    def actuated_velocity(self, state) -> float:
        return state[3]

    def _dsdt(self, s, tau):
        m1, m2 = self.link_mass_1, self.link_mass_2
        l1 = self.link_length_1
        lc1, lc2 = self.link_com_1, self.link_com_2
        i1 = i2 = self.link_moi
        g = self.g
        theta1, theta2, dtheta1, dtheta2 = s
        d1 = m1 * lc1**2 + m2 * (l1**2 + lc2**2 + 2.0 * l1 * lc2 * math.cos(theta2)) + i1 + i2
        d2 = m2 * (lc2**2 + l1 * lc2 * math.cos(theta2)) + i2
        phi2 = m2 * lc2 * g * math.cos(theta1 + theta2 - math.pi / 2.0)
        phi1 = (
            -m2 * l1 * lc2 * dtheta2**2 * math.sin(theta2)
            - 2.0 * m2 * l1 * lc2 * dtheta2 * dtheta1 * math.sin(theta2)
            + (m1 * lc1 + m2 * l1) * g * math.cos(theta1 - math.pi / 2.0)
            + phi2
        )
        ddtheta2 = (
            tau + d2 / d1 * phi1 - m2 * l1 * lc2 * dtheta1**2 * math.sin(theta2) - phi2
        ) / (m2 * lc2**2 + i2 - d2**2 / d1)
        ddtheta1 = -(d2 * ddtheta2 + phi1) / d1
        return (dtheta1, dtheta2, ddtheta1, ddtheta2)

    def env_state_update(self, state, f, h):
        k1 = self._dsdt(state, f)
        s2 = tuple(state[j] + 0.5 * h * k1[j] for j in range(4))
        k2 = self._dsdt(s2, f)
        s3 = tuple(state[j] + 0.5 * h * k2[j] for j in range(4))
        k3 = self._dsdt(s3, f)
        s4 = tuple(state[j] + h * k3[j] for j in range(4))
        k4 = self._dsdt(s4, f)
        out = tuple(
            state[j] + h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]) for j in range(4)
        )
        theta1 = wrap_angle(out[0])
        theta2 = wrap_angle(out[1])
        d1 = min(max(out[2], -self.max_vel_1), self.max_vel_1)
        d2 = min(max(out[3], -self.max_vel_2), self.max_vel_2)
        return (theta1, theta2, d1, d2)

    def _goal_reached(self, state) -> bool:
        theta1, theta2 = state[0], state[1]
        return -math.cos(theta1) - math.cos(theta1 + theta2) > 1.0

    def reward_fn(self, s_next, s, f) -> float:
        return 0.0 if self._goal_reached(s_next) else -1.0

    def get_obs(self, s_next, s=None, f=0.0) -> np.ndarray:
        theta1, theta2, d1, d2 = s_next
        return np.array(
            [math.cos(theta1), math.sin(theta1), math.cos(theta2), math.sin(theta2), d1, d2]
        )

    def is_terminated(self, state) -> bool:
        return self._goal_reached(state)

    def initial_state(self, rng):
        return tuple(rng.uniform(-0.1, 0.1, size=4).tolist())
