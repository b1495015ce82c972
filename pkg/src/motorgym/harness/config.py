"""Run configuration: everything needed to reproduce an experiment.

A run is fully determined by a RunConfig plus its seed; the training
harness snapshots the JSON form into every run directory. Agent
hyperparameters not listed explicitly ride along in `agent_params`,
which overrides the per-environment defaults below.
"""

import dataclasses
import hashlib
import json
from dataclasses import dataclass, field

from ..envs import IdealActuation, MotorActuation, make_env
from ..errors import ConfigError
from ..motor import MotorParams, PidGains

MODES = ("ideal", "motor")

AGENT_ENVS = {
    "sarsa": ("mountaincar",),
    "dqn": ("mountaincar", "acrobot", "cartpole"),
    "ddpg": ("pendulum", "mountaincar-cont"),
    "ppo": ("mountaincar", "acrobot", "cartpole"),
}

# training budget when the config leaves `episodes` unset
DEFAULT_BUDGET = {
    ("mountaincar", "sarsa"): 600,
    ("acrobot", "dqn"): 500,
    ("pendulum", "ddpg"): 500,
    ("mountaincar-cont", "ddpg"): 200,
    ("cartpole", "ppo"): 60,  # epochs
}

DDPG_DEFAULTS = {
    "pendulum": dict(
        actor_hidden=(64, 64),
        critic_state_layers=(16, 32),
        critic_action_layers=(32,),
        critic_trunk_layers=(256, 256),
        lr_actor=1e-3,
        lr_critic=2e-3,
        gamma=0.99,
        tau=0.005,
        noise_sigma=0.4,
        noise_sigma_final=0.0,
        warmup_steps=0,
        update_every=2,
        dtype="float32",
    ),
    "mountaincar-cont": dict(
        actor_hidden=(64, 64),
        critic_state_layers=(64,),
        critic_action_layers=(),
        critic_trunk_layers=(64,),
        lr_actor=1e-3,
        lr_critic=4e-5,
        gamma=0.85,
        tau=0.45,
        noise_sigma=0.5,
        noise_sigma_final=0.0,
        warmup_steps=0,
        update_every=2,
        dtype="float32",
    ),
}

DQN_DEFAULTS = dict(
    hidden=(64, 128),
    lr=1e-3,
    gamma=0.99,
    buffer_capacity=100_000,
    batch_size=64,
    target_copy_every=200,
    epsilon_start=1.0,
    epsilon_final=0.05,
    epsilon_decay_fraction=0.5,
)

SARSA_DEFAULTS = dict(alpha=0.0375, gamma=1.0, epsilon=0.001)

PPO_DEFAULTS = dict(
    hidden=(64, 64),
    lr_actor=3e-4,
    lr_critic=1e-3,
    gamma=0.99,
    lam=0.97,
    clip_ratio=0.2,
    target_kl=0.01,
    steps_per_epoch=4000,
    train_pi_iters=80,
    train_v_iters=80,
)


@dataclass
class RunConfig:
    env: str
    agent: str
    mode: str = "motor"
    seed: int = 0
    episodes: int | None = None  # ppo counts epochs
    motor: MotorParams = field(default_factory=MotorParams)
    pid: PidGains = field(default_factory=PidGains)
    substeps: int | None = None
    max_episode_steps: int | None = None
    agent_params: dict = field(default_factory=dict)
    out_dir: str | None = None

    def validate(self) -> None:
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.agent not in AGENT_ENVS:
            raise ConfigError(f"unknown agent {self.agent!r}")
        if self.env not in AGENT_ENVS[self.agent]:
            raise ConfigError(
                f"agent {self.agent!r} does not support env {self.env!r}; "
                f"valid: {AGENT_ENVS[self.agent]}"
            )
        if self.episodes is not None and self.episodes < 0:
            raise ConfigError(f"episodes must be >= 0, got {self.episodes}")
        if self.seed < 0:
            raise ConfigError(f"seed must be >= 0, got {self.seed}")

    def budget(self) -> int:
        if self.episodes is not None:
            return self.episodes
        return DEFAULT_BUDGET[(self.env, self.agent)]

    def actuation(self):
        if self.mode == "ideal":
            return IdealActuation(substeps=self.substeps or 1)
        return MotorActuation(params=self.motor, gains=self.pid, substeps=self.substeps)

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def digest(self) -> str:
        return hashlib.sha256(
            json.dumps(self.to_dict(), sort_keys=True).encode()
        ).hexdigest()

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        d = dict(d)
        try:
            if "motor" in d:
                d["motor"] = MotorParams(**d["motor"])
            if "pid" in d:
                d["pid"] = PidGains(**d["pid"])
            return cls(**d)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad config: {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> "RunConfig":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from exc
        return cls.from_dict(data)


def load_config(path) -> RunConfig:
    with open(path) as fh:
        return RunConfig.from_json(fh.read())


def build_env(config: RunConfig):
    config.validate()
    return make_env(
        config.env, actuation=config.actuation(), max_episode_steps=config.max_episode_steps
    )


def build_agent(config: RunConfig, env):
    """Instantiate the configured agent with per-env defaults applied."""
    from ..agents import DdpgAgent, DqnAgent, PpoAgent, SarsaAgent  # avoid import cycle

    params = dict(config.agent_params)
    if config.agent == "sarsa":
        kwargs = {**SARSA_DEFAULTS, **params}
        return SarsaAgent(env, seed=config.seed, **kwargs)
    if config.agent == "dqn":
        kwargs = {**DQN_DEFAULTS, **params}
        return DqnAgent(
            obs_dim=env.obs_dim, n_actions=env.action_space.n, seed=config.seed, **kwargs
        )
    if config.agent == "ddpg":
        kwargs = {**DDPG_DEFAULTS[config.env], **params}
        return DdpgAgent(
            obs_dim=env.obs_dim,
            act_low=env.action_space.low,
            act_high=env.action_space.high,
            seed=config.seed,
            **kwargs,
        )
    if config.agent == "ppo":
        kwargs = {**PPO_DEFAULTS, **params}
        return PpoAgent(
            obs_dim=env.obs_dim, n_actions=env.action_space.n, seed=config.seed, **kwargs
        )
    raise ConfigError(f"unknown agent {config.agent!r}")
