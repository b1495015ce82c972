"""Seeded training and evaluation runs with CSV outputs.

Every run directory contains:

    config.json    snapshot of the RunConfig
    episodes.csv   episode,return,length,wallclock_s
    epochs.csv     (ppo only) per-epoch aggregates
    checkpoint.txt final policy in the parameter-file format
    metadata.json  provenance string, defaults in effect, total duration

Evaluation writes steps.csv with one row per step:
t, the post-step state components, f_desired, f_actual, i_ref, i, u, e,
reward. All numeric CSV fields are written with repr() so reruns of the
same config and seed produce identical values.
"""

import csv
import json
import time
from dataclasses import dataclass
from pathlib import Path

from .. import __version__
from ..agents import AGENT_CLASSES
from ..errors import ConfigError
from ..nn import fileio
from .config import RunConfig, build_agent, build_env

EPISODE_COLUMNS = ("episode", "return", "length", "wallclock_s")
EPOCH_COLUMNS = (
    "epoch",
    "episodes",
    "avg_return",
    "avg_length",
    "max_length",
    "policy_loss",
    "value_loss",
    "approx_kl",
)


@dataclass
class EpisodeRecord:
    episode: int
    ret: float
    length: int
    wallclock_s: float


def _fmt(v) -> str:
    return repr(v) if isinstance(v, float) else str(v)


def _write_csv(path, columns, rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def _unique_dir(base: Path) -> Path:
    if not base.exists():
        return base
    k = 2
    while (parent := base.parent / f"{base.name}-{k}").exists():
        k += 1
    return parent


def resolve_run_dir(config: RunConfig, root="runs") -> Path:
    if config.out_dir:
        return Path(config.out_dir)
    name = f"{config.env}-{config.agent}-{config.mode}-seed{config.seed}"
    return _unique_dir(Path(root) / name)


def train(config: RunConfig, run_dir=None) -> Path:
    """Run one training job; returns the run directory."""
    config.validate()
    run_dir = Path(run_dir) if run_dir is not None else resolve_run_dir(config)
    run_dir.mkdir(parents=True, exist_ok=True)
    (run_dir / "config.json").write_text(config.to_json() + "\n")

    env = build_env(config)
    agent = build_agent(config, env)
    budget = config.budget()

    records: list[EpisodeRecord] = []
    epoch_rows: list[tuple] = []
    start = time.perf_counter()
    last_mark = start

    def on_episode(ep_return, length):
        nonlocal last_mark
        now = time.perf_counter()
        records.append(EpisodeRecord(len(records), float(ep_return), int(length), now - last_mark))
        last_mark = now

    def on_epoch(stats):
        epoch_rows.append(tuple(stats[c] for c in EPOCH_COLUMNS))

    if budget > 0:
        env.reset(seed=config.seed)
        if config.agent == "ppo":
            agent.train(env, budget, on_episode=on_episode, on_epoch=on_epoch)
        else:
            agent.train(env, budget, on_episode=on_episode)

    _write_csv(
        run_dir / "episodes.csv",
        EPISODE_COLUMNS,
        [(r.episode, r.ret, r.length, r.wallclock_s) for r in records],
    )
    if config.agent == "ppo":
        _write_csv(run_dir / "epochs.csv", EPOCH_COLUMNS, epoch_rows)
    if budget > 0:
        agent.save(run_dir / "checkpoint.txt", meta={"env": config.env})

    metadata = {
        "provenance": f"motorgym {__version__} config_sha256={config.digest()[:16]}",
        "config_digest": config.digest(),
        "u_max": config.pid.u_max,
        "k_e": config.motor.k_e,
        "mode": config.mode,
        "budget": budget,
        "episodes_recorded": len(records),
        "total_wallclock_s": time.perf_counter() - start,
        "weight_init": "uniform +/- 1/sqrt(fan_in)",
    }
    (run_dir / "metadata.json").write_text(json.dumps(metadata, indent=2, sort_keys=True) + "\n")
    return run_dir


def train_seeds(config: RunConfig, seeds, root="runs") -> list[Path]:
    """Fan a config out over several seeds (sequentially)."""
    import dataclasses

    out = []
    for seed in seeds:
        cfg = dataclasses.replace(config, seed=int(seed), out_dir=None)
        out.append(train(cfg, run_dir=resolve_run_dir(cfg, root=root)))
    return out


def load_checkpoint(path, env=None):
    """Instantiate the agent stored at `path` from its header."""
    meta = fileio.read_meta(path)
    agent_id = meta.get("agent")
    if agent_id not in AGENT_CLASSES:
        raise ConfigError(f"checkpoint {path} names unknown agent {agent_id!r}")
    cls = AGENT_CLASSES[agent_id]
    if agent_id == "sarsa":
        if env is None:
            raise ConfigError("sarsa checkpoints need the environment to rebuild")
        return cls.load(path, env), meta
    return cls.load(path), meta


def evaluate(checkpoint, config: RunConfig, max_steps: int, out_dir=None) -> Path:
    """Greedy rollout of a checkpoint; returns the steps.csv path.

    The rollout stops at termination or after `max_steps`, whichever
    comes first, and logs full actuation telemetry every step.
    """
    config.validate()
    if max_steps < 0:
        raise ValueError(f"max_steps must be >= 0, got {max_steps}")
    out_dir = Path(out_dir) if out_dir is not None else Path(checkpoint).parent
    out_dir.mkdir(parents=True, exist_ok=True)

    import dataclasses

    eval_config = dataclasses.replace(config, max_episode_steps=max(max_steps, 1))
    env = build_env(eval_config)
    agent, meta = load_checkpoint(checkpoint, env)
    ckpt_env = meta.get("env")
    if ckpt_env is not None and ckpt_env != config.env:
        raise ConfigError(
            f"checkpoint was trained on {ckpt_env!r} but config requests {config.env!r}"
        )

    columns = ("t", *env.state_names, "f_desired", "f_actual", "i_ref", "i", "u", "e", "reward")
    rows = []
    if max_steps > 0:
        obs = env.reset(seed=config.seed)
        for t in range(max_steps):
            action = agent.act(obs, greedy=True)
            result = env.step(action)
            info = result.info
            rows.append(
                (
                    t,
                    *env.state,
                    info["f_desired"],
                    info["f_actual"],
                    info["i_ref"],
                    info["i"],
                    info["u"],
                    info["e"],
                    result.reward,
                )
            )
            obs = result.obs
            if result.terminated:
                break
    steps_path = out_dir / "steps.csv"
    _write_csv(steps_path, columns, rows)
    return steps_path
