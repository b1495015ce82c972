"""DC-motor electrical circuit and the PID current controller around it.

The motor is reduced to its electrical equation: the winding current i
follows di/dt = (u - k_e*w - R*i) / L, integrated with explicit Euler.
Torque is proportional to current (tau = k_t * i), so tracking a desired
torque reduces to tracking a reference current with a PID voltage law.
The controller compensates the back-EMF term k_e*w directly and clamps
the commanded voltage to +/-u_max as the final stage.

All functions here are pure: they take a MotorState and return a new
one, never mutating their inputs.
"""

import math
from dataclasses import dataclass

from .errors import ConfigError


@dataclass(frozen=True)
class MotorParams:
    """Electrical constants of the drive.

    k_t maps current to torque (N*m/A), k_e maps angular velocity to
    back-EMF voltage (V*s/rad). arm is the lever radius (m) used by
    environments whose motor produces a linear force: the actuation
    wrapper converts force to torque (tau = arm * F) and linear to
    angular velocity (omega = v / arm) before entering the loop.
    """

    R: float = 1.0
    L: float = 0.1
    k_t: float = 1.0
    k_e: float = 1.0
    arm: float = 1.0

    def __post_init__(self):
        if not (self.R > 0 and self.L > 0 and self.k_t > 0):
            raise ConfigError(f"R, L, k_t must be positive, got {self}")
        if self.k_e < 0:
            raise ConfigError(f"k_e must be non-negative, got {self.k_e}")
        if not self.arm > 0:
            raise ConfigError(f"arm must be positive, got {self.arm}")


@dataclass(frozen=True)
class PidGains:
    """PID gains, optional reference feedforward, and the voltage bound."""

    k_p: float = 0.0
    k_i: float = 0.0
    k_d: float = 0.0
    k_ff: float = 0.0
    u_max: float = 24.0

    def __post_init__(self):
        if min(self.k_p, self.k_i, self.k_d, self.k_ff) < 0:
            raise ConfigError(f"gains must be non-negative, got {self}")
        if not self.u_max > 0:
            raise ConfigError(f"u_max must be positive, got {self.u_max}")


@dataclass(slots=True)
class MotorState:
    """Winding current plus the controller memory (treated as immutable)."""

    i: float = 0.0
    e_prev: float = 0.0
    e_integral: float = 0.0
    has_prev: bool = False


def reset_motor(i0: float = 0.0) -> MotorState:
    """Fresh state with current i0 and cleared controller memory."""
    if not math.isfinite(i0):
        raise ValueError(f"initial current must be finite, got {i0}")
    return MotorState(i=i0)


def reference_current(f_desired: float, k_t: float) -> float:
    """Current that would produce the desired torque: i_ref = tau / k_t."""
    if not math.isfinite(f_desired):
        raise ValueError(f"desired force/torque must be finite, got {f_desired}")
    if not k_t > 0:
        raise ValueError(f"k_t must be positive, got {k_t}")
    return f_desired / k_t


def saturate(u: float, lo: float, hi: float) -> float:
    """Clamp u into [lo, hi]."""
    if lo > hi:
        raise ValueError(f"invalid bounds: lo={lo} > hi={hi}")
    if u < lo:
        return lo
    if u > hi:
        return hi
    return u


def pid_control(
    gains: PidGains,
    k_e: float,
    state: MotorState,
    e: float,
    i_ref: float,
    w: float,
    dt: float,
) -> tuple[float, MotorState]:
    """One discrete PID update on the current error.

    u = sat(k_p*e + k_i*I_e + k_d*D_e + k_e*w + k_ff*i_ref, -u_max, u_max)

    where I_e accumulates e*dt and D_e is the backward difference of the
    error. On the first call after a reset the derivative term is zero
    (no previous error exists, and a fake one would kick the output).
    Saturation is the final stage; the integrator keeps accumulating
    while saturated.
    """
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    e_integral = state.e_integral + e * dt
    d = (e - state.e_prev) / dt if state.has_prev else 0.0
    u_temp = gains.k_p * e + gains.k_i * e_integral + gains.k_d * d + k_e * w + gains.k_ff * i_ref
    u = saturate(u_temp, -gains.u_max, gains.u_max)
    return u, MotorState(i=state.i, e_prev=e, e_integral=e_integral, has_prev=True)


def motor_step(params: MotorParams, state: MotorState, u: float, w: float, dt: float) -> MotorState:
    """Advance the winding current one explicit-Euler step.

    i' = i + (u - k_e*w - R*i) / L * dt

    The back-EMF uses the velocity at the start of the substep. dt must
    satisfy the stability bound checked by `validate_step_size`; that is
    enforced where configurations are built, not here.
    """
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    v_bemf = params.k_e * w
    i = state.i + (u - v_bemf - params.R * state.i) / params.L * dt
    if not math.isfinite(i):
        raise ArithmeticError(f"motor current diverged to {i}")
    return MotorState(i=i, e_prev=state.e_prev, e_integral=state.e_integral, has_prev=state.has_prev)


def dc_motor_env_step(
    params: MotorParams,
    gains: PidGains,
    state: MotorState,
    e: float,
    i_ref: float,
    w: float,
    dt: float,
) -> tuple[float, MotorState]:
    """PID then motor update; returns the torque k_t * i' actually produced.

    Operates in torque/angular units throughout; callers driving a
    linear body convert with the arm radius on the way in and out.
    """
    u, state = pid_control(gains, params.k_e, state, e, i_ref, w, dt)
    state = motor_step(params, state, u, w, dt)
    return params.k_t * state.i, state


def validate_step_size(params: MotorParams, dt: float) -> None:
    """Reject step sizes for which the explicit-Euler current update diverges.

    The update multiplies the current error by (1 - R*dt/L) each step,
    which contracts only for dt < 2L/R.
    """
    limit = 2.0 * params.L / params.R
    if not 0 < dt < limit:
        raise ConfigError(
            f"motor step dt={dt} outside stable range (0, {limit}) for R={params.R}, L={params.L}"
        )
