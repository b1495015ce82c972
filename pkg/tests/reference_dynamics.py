"""Independent transcriptions of the five reference dynamics.

These are written directly from the published update rules, on purpose
without importing anything from the package, and serve as the oracle
for ideal-mode trajectory equivalence. Keep them boring and literal.
"""

import math


def wrap(x):
    return (x + math.pi) % (2.0 * math.pi) - math.pi


def pendulum_step(state, torque, dt=0.05, g=10.0, m=1.0, length=1.0, max_speed=8.0):
    th, thdot = state
    u = min(max(torque, -2.0), 2.0)
    acc = 3.0 * g / (2.0 * length) * math.sin(th) + 3.0 / (m * length**2) * u
    new_thdot = thdot + acc * dt
    new_thdot = min(max(new_thdot, -max_speed), max_speed)
    new_th = wrap(th + thdot * dt)  # position uses the pre-update velocity
    return (new_th, new_thdot)


def pendulum_reward(state, torque):
    th, thdot = state
    return -(wrap(th) ** 2 + 0.1 * thdot**2 + 0.001 * torque**2)


def mountain_car_step(state, force, continuous=False):
    x, v = state
    c_f = 0.0015 if continuous else 0.001
    v = v + c_f * force - 0.0025 * math.cos(3.0 * x)
    v = min(max(v, -0.07), 0.07)
    x = x + v
    x = min(max(x, -1.2), 0.6)
    if x == -1.2 and v < 0.0:
        v = 0.0
    return (x, v)


def cartpole_step(state, force, dt=0.02):
    x, x_dot, theta, theta_dot = state
    g = 9.8
    m_cart, m_pole = 1.0, 0.1
    ell = 0.5
    total = m_cart + m_pole
    pml = m_pole * ell
    cos_t, sin_t = math.cos(theta), math.sin(theta)
    temp = (force + pml * theta_dot**2 * sin_t) / total
    theta_acc = (g * sin_t - cos_t * temp) / (ell * (4.0 / 3.0 - m_pole * cos_t**2 / total))
    x_acc = temp - pml * theta_acc * cos_t / total
    return (
        x + dt * x_dot,
        x_dot + dt * x_acc,
        theta + dt * theta_dot,
        theta_dot + dt * theta_acc,
    )


def _acrobot_dsdt(s, tau):
    m1 = m2 = 1.0
    l1 = 1.0
    lc1 = lc2 = 0.5
    i1 = i2 = 1.0
    g = 9.8
    th1, th2, dth1, dth2 = s
    d1 = m1 * lc1**2 + m2 * (l1**2 + lc2**2 + 2 * l1 * lc2 * math.cos(th2)) + i1 + i2
    d2 = m2 * (lc2**2 + l1 * lc2 * math.cos(th2)) + i2
    phi2 = m2 * lc2 * g * math.cos(th1 + th2 - math.pi / 2.0)
    phi1 = (
        -m2 * l1 * lc2 * dth2**2 * math.sin(th2)
        - 2 * m2 * l1 * lc2 * dth2 * dth1 * math.sin(th2)
        + (m1 * lc1 + m2 * l1) * g * math.cos(th1 - math.pi / 2.0)
        + phi2
    )
    ddth2 = (tau + d2 / d1 * phi1 - m2 * l1 * lc2 * dth1**2 * math.sin(th2) - phi2) / (
        m2 * lc2**2 + i2 - d2**2 / d1
    )
    ddth1 = -(d2 * ddth2 + phi1) / d1
    return (dth1, dth2, ddth1, ddth2)


def acrobot_step(state, torque, dt=0.2):
    k1 = _acrobot_dsdt(state, torque)
    s2 = tuple(state[j] + 0.5 * dt * k1[j] for j in range(4))
    k2 = _acrobot_dsdt(s2, torque)
    s3 = tuple(state[j] + 0.5 * dt * k2[j] for j in range(4))
    k3 = _acrobot_dsdt(s3, torque)
    s4 = tuple(state[j] + dt * k3[j] for j in range(4))
    k4 = _acrobot_dsdt(s4, torque)
    out = [state[j] + dt / 6.0 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]) for j in range(4)]
    return (
        wrap(out[0]),
        wrap(out[1]),
        min(max(out[2], -4 * math.pi), 4 * math.pi),
        min(max(out[3], -9 * math.pi), 9 * math.pi),
    )
