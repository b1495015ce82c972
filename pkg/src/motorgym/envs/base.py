"""Shared machinery for the actuated classic-control environments.

Each environment exposes the usual reset/step interface but executes
actions through a pluggable actuation stage. In ideal mode the desired
force/torque is applied directly, reproducing the unmodified reference
environment. In motor mode the desired value becomes a reference
current for a PID-controlled DC motor, and the force that actually
reaches the dynamics is whatever the motor delivers.

One environment step may be integrated in several substeps (the motor
and the physics co-evolve on the finer grid); `substeps=1` reduces
exactly to a single dynamics update plus, in motor mode, one motor
update.
"""

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .. import rng as rng_mod
from ..errors import ConfigError
from ..motor import (
    MotorParams,
    MotorState,
    PidGains,
    motor_step,
    pid_control,
    reference_current,
    reset_motor,
    validate_step_size,
)

NAN = float("nan")


@dataclass(frozen=True)
class Discrete:
    n: int


@dataclass(frozen=True)
class Continuous:
    low: float
    high: float


@dataclass(frozen=True)
class IdealActuation:
    """Pass-through actuation: F_actual = F_desired."""

    substeps: int = 1


@dataclass(frozen=True)
class MotorActuation:
    """Motor-in-the-loop actuation with per-step substep count."""

    params: MotorParams = field(default_factory=MotorParams)
    gains: PidGains = field(default_factory=PidGains)
    substeps: int | None = None  # None -> environment default
    i0: float = 0.0


@dataclass
class StepResult:
    obs: np.ndarray
    reward: float
    terminated: bool
    truncated: bool
    info: dict[str, Any]


def wrap_angle(x: float) -> float:
    """Wrap to [-pi, pi]."""
    return (x + math.pi) % (2.0 * math.pi) - math.pi


class ControlEnv:
    """Base class: owns the step loop, the actuation stage, and seeding.

    Subclasses define the physics through `action_feature`,
    `actuated_velocity`, `env_state_update`, `reward_fn`, `get_obs`, and
    `is_terminated`, plus the class attributes below.
    """

    name: str = ""
    dt: float = 0.0
    state_names: tuple[str, ...] = ()
    default_max_episode_steps: int = 0
    default_motor_substeps: int = 1
    action_space: Discrete | Continuous

    def __init__(
        self,
        actuation: IdealActuation | MotorActuation | None = None,
        max_episode_steps: int | None = None,
    ):
        self.actuation = actuation if actuation is not None else IdealActuation()
        self.max_episode_steps = (
            max_episode_steps if max_episode_steps is not None else self.default_max_episode_steps
        )
        if isinstance(self.actuation, MotorActuation):
            n = self.actuation.substeps
            self.substeps = n if n is not None else self.default_motor_substeps
            validate_step_size(self.actuation.params, self.dt / self.substeps)
        else:
            self.substeps = self.actuation.substeps
        if self.substeps < 1:
            raise ConfigError(f"substeps must be >= 1, got {self.substeps}")
        self._rng = None
        self._state: tuple[float, ...] | None = None
        self._motor: MotorState | None = None
        self._steps = 0
        self._needs_reset = True

    # -- per-environment hooks -------------------------------------------

    def action_feature(self, action) -> float:
        raise NotImplementedError

    def actuated_velocity(self, state: tuple[float, ...]) -> float:
        raise NotImplementedError

    def env_state_update(self, state: tuple[float, ...], f: float, h: float) -> tuple[float, ...]:
        raise NotImplementedError

    def reward_fn(self, s_next: tuple[float, ...], s: tuple[float, ...], f: float) -> float:
        raise NotImplementedError

    def get_obs(self, s_next, s=None, f: float = 0.0) -> np.ndarray:
        raise NotImplementedError

    def is_terminated(self, state: tuple[float, ...]) -> bool:
        return False

    def initial_state(self, rng: np.random.Generator) -> tuple[float, ...]:
        raise NotImplementedError

    # -- public interface -------------------------------------------------

    @property
    def state(self) -> tuple[float, ...]:
        if self._state is None:
            raise RuntimeError("environment has no state before reset()")
        return self._state

    @property
    def motor_state(self) -> MotorState | None:
        return self._motor

    def reset(self, seed: int | None = None) -> np.ndarray:
        """Draw a fresh initial state; deterministic for a given seed."""
        if seed is not None:
            self._rng = rng_mod.stream(seed, f"env/{self.name}")
        elif self._rng is None:
            self._rng = rng_mod.stream(0, f"env/{self.name}")
        self._state = self.initial_state(self._rng)
        if isinstance(self.actuation, MotorActuation):
            self._motor = reset_motor(self.actuation.i0)
        else:
            self._motor = None
        self._steps = 0
        self._needs_reset = False
        return self.get_obs(self._state, self._state, 0.0)

    def step(self, action) -> StepResult:
        """Apply one action through the actuation stage.

        Order per step: map action to desired force/torque, run the
        (sub-stepped) actuation + dynamics loop, then reward and
        observation from the updated state.
        """
        if self._needs_reset:
            raise RuntimeError("step() called before reset() or after episode end")
        f_desired = self.action_feature(action)
        s = self._state
        s_next, f_actual, telemetry = self._run_substeps(f_desired, s, self.dt, self.substeps)
        reward = self.reward_fn(s_next, s, f_actual)
        obs = self.get_obs(s_next, s, f_actual)
        self._state = s_next
        self._steps += 1
        terminated = self.is_terminated(s_next)
        truncated = (not terminated) and self._steps >= self.max_episode_steps
        if terminated or truncated:
            self._needs_reset = True
        info = {"f_desired": f_desired, "f_actual": f_actual}
        info.update(telemetry)
        return StepResult(obs=obs, reward=reward, terminated=terminated, truncated=truncated, info=info)

    def inner_loop_step(
        self,
        f_desired: float,
        state: tuple[float, ...],
        dt: float | None = None,
        substeps: int | None = None,
    ) -> tuple[tuple[float, ...], float]:
        """Advance `state` by one outer step of `dt` split into substeps.

        Each substep re-reads the actuated velocity from the evolving
        state, runs the motor loop (in motor mode), and advances the
        dynamics by dt/substeps. Returns the final state and the force
        applied during the last substep. Mutates only the internal
        motor state.
        """
        dt = self.dt if dt is None else dt
        n = self.substeps if substeps is None else substeps
        if n < 1:
            raise ValueError(f"substeps must be >= 1, got {n}")
        if isinstance(self.actuation, MotorActuation):
            validate_step_size(self.actuation.params, dt / n)
        s_next, f_actual, _ = self._run_substeps(f_desired, state, dt, n)
        return s_next, f_actual

    # -- internals ----------------------------------------------------------

    def _run_substeps(self, f_desired, state, dt, n):
        h = dt / n
        s = state
        if not isinstance(self.actuation, MotorActuation):
            for _ in range(n):
                s = self.env_state_update(s, f_desired, h)
            telemetry = {"i_ref": NAN, "i": NAN, "u": NAN, "e": NAN}
            return s, f_desired, telemetry
        p = self.actuation.params
        g = self.actuation.gains
        arm = p.arm
        k_e = p.k_e
        i_ref = reference_current(arm * f_desired, p.k_t)
        motor = self._motor
        f_actual = e = u = 0.0
        for _ in range(n):
            w = self.actuated_velocity(s) / arm
            e = i_ref - motor.i
            u, motor = pid_control(g, k_e, motor, e, i_ref, w, h)
            motor = motor_step(p, motor, u, w, h)
            f_actual = p.k_t * motor.i / arm
            s = self.env_state_update(s, f_actual, h)
        self._motor = motor
        telemetry = {"i_ref": i_ref, "i": motor.i, "u": u, "e": e}
        return s, f_actual, telemetry
