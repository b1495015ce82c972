from .acrobot import AcrobotEnv
from .base import (
    Continuous,
    ControlEnv,
    Discrete,
    IdealActuation,
    MotorActuation,
    StepResult,
    wrap_angle,
)
from .cartpole import CartPoleEnv
from .mountain_car import ContinuousMountainCarEnv, MountainCarEnv
from .pendulum import PendulumEnv

ENV_CLASSES = {
    cls.name: cls
    for cls in (PendulumEnv, MountainCarEnv, ContinuousMountainCarEnv, AcrobotEnv, CartPoleEnv)
}


def make_env(name: str, actuation=None, max_episode_steps=None) -> ControlEnv:
    try:
        cls = ENV_CLASSES[name]
    except KeyError:
        raise ValueError(f"unknown environment {name!r}; known: {sorted(ENV_CLASSES)}") from None
    return cls(actuation=actuation, max_episode_steps=max_episode_steps)


__all__ = [
    "AcrobotEnv",
    "CartPoleEnv",
    "Continuous",
    "ContinuousMountainCarEnv",
    "ControlEnv",
    "Discrete",
    "ENV_CLASSES",
    "IdealActuation",
    "MotorActuation",
    "MountainCarEnv",
    "PendulumEnv",
    "StepResult",
    "make_env",
    "wrap_angle",
]
