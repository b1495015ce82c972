"""Command-line interface.

Exit codes: 0 on success, 2 for configuration errors, 3 for runtime
failures.
"""

import argparse
import dataclasses
import sys
from pathlib import Path

from ..errors import ConfigError
from . import plots, presets, run
from .config import AGENT_ENVS, MODES, RunConfig, load_config

ENV_CHOICES = ("pendulum", "mountaincar", "mountaincar-cont", "acrobot", "cartpole")
AGENT_CHOICES = tuple(AGENT_ENVS)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="motorgym")
    sub = parser.add_subparsers(dest="command", required=True)

    p_train = sub.add_parser("train", help="train an agent and write a run directory")
    p_train.add_argument("--env", choices=ENV_CHOICES)
    p_train.add_argument("--agent", choices=AGENT_CHOICES)
    p_train.add_argument("--mode", choices=MODES)
    p_train.add_argument("--config", help="JSON config file")
    p_train.add_argument("--preset", help="named preset (see `presets list`)")
    p_train.add_argument("--seed", type=int)
    p_train.add_argument("--seeds", type=int, help="fan out over seeds 0..N-1")
    p_train.add_argument("--episodes", type=int, help="training budget (epochs for ppo)")
    p_train.add_argument("--out", help="output directory")

    p_eval = sub.add_parser("eval", help="greedy rollout of a checkpoint")
    p_eval.add_argument("--checkpoint", required=True)
    p_eval.add_argument("--config", help="defaults to config.json next to the checkpoint")
    p_eval.add_argument("--steps", type=int, default=500)
    p_eval.add_argument("--out", help="defaults to the checkpoint directory")

    p_plot = sub.add_parser("plot", help="render plots for a run directory")
    p_plot.add_argument("--run", required=True)
    p_plot.add_argument("--window", type=int, default=plots.DEFAULT_WINDOW)

    p_presets = sub.add_parser("presets", help="preset utilities")
    p_presets.add_argument("action", choices=("list", "show"))
    p_presets.add_argument("name", nargs="?")
    return parser


def _train_config(args) -> RunConfig:
    if args.preset:
        config = presets.load_preset(args.preset)
    elif args.config:
        config = load_config(args.config)
    else:
        if not (args.env and args.agent):
            raise ConfigError("train needs --preset, --config, or both --env and --agent")
        config = RunConfig(env=args.env, agent=args.agent)
    overrides = {}
    if args.env:
        overrides["env"] = args.env
    if args.agent:
        overrides["agent"] = args.agent
    if args.mode:
        overrides["mode"] = args.mode
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.episodes is not None:
        overrides["episodes"] = args.episodes
    if args.out:
        overrides["out_dir"] = args.out
    config = dataclasses.replace(config, **overrides)
    config.validate()
    return config


def _cmd_train(args) -> int:
    config = _train_config(args)
    if args.seeds is not None:
        dirs = run.train_seeds(config, range(args.seeds), root=args.out or "runs")
        for d in dirs:
            print(d)
    else:
        print(run.train(config))
    return 0


def _cmd_eval(args) -> int:
    ckpt = Path(args.checkpoint)
    config_path = Path(args.config) if args.config else ckpt.parent / "config.json"
    if not config_path.exists():
        raise ConfigError(f"no config found at {config_path}; pass --config")
    config = load_config(config_path)
    print(run.evaluate(ckpt, config, max_steps=args.steps, out_dir=args.out))
    return 0


def _cmd_plot(args) -> int:
    for path in plots.emit_plots(args.run, window=args.window):
        print(path)
    return 0


def _cmd_presets(args) -> int:
    if args.action == "list":
        for name in presets.preset_names():
            print(name)
        return 0
    if not args.name:
        raise ConfigError("presets show needs a preset name")
    print(presets.load_preset(args.name).to_json())
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "train": _cmd_train,
        "eval": _cmd_eval,
        "plot": _cmd_plot,
        "presets": _cmd_presets,
    }
    try:
        return handlers[args.command](args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
