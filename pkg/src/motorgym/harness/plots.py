"""Plot generation from run CSVs.

Every run gets a reward-vs-episode plot with a trailing-window mean;
runs with an evaluation steps.csv also get a desired-vs-actual force
plot (with the tracking error) and per-environment state plots. All
figures are written as standalone SVG files.
"""

import csv
import json
import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

DEFAULT_WINDOW = 50


def _read_csv(path):
    with open(path) as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [[float(v) for v in row] for row in reader]
    cols = {name: [row[k] for row in rows] for k, name in enumerate(header)}
    return cols


def trailing_mean(values, window: int):
    out = []
    acc = 0.0
    for k, v in enumerate(values):
        acc += v
        if k >= window:
            acc -= values[k - window]
        out.append(acc / min(k + 1, window))
    return out


def _save(fig, path, created):
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    created.append(Path(path))


def _plot_reward(run_dir, episodes, window, created):
    fig, ax = plt.subplots(figsize=(6, 3))
    eps = episodes["episode"]
    rets = episodes["return"]
    ax.plot(eps, rets, lw=0.8, alpha=0.5, label="episode return")
    if rets:
        ax.plot(eps, trailing_mean(rets, window), lw=1.6, label=f"trailing {window}-ep mean")
    ax.set_xlabel("episode")
    ax.set_ylabel("return")
    ax.legend(loc="best", fontsize=8)
    _save(fig, run_dir / "reward.svg", created)


def _plot_force(run_dir, steps, created):
    fig, ax = plt.subplots(figsize=(6, 3))
    t = steps["t"]
    ax.plot(t, steps["f_desired"], lw=1.0, label="desired")
    ax.plot(t, steps["f_actual"], lw=1.0, label="actual")
    err = [a - d for a, d in zip(steps["f_actual"], steps["f_desired"])]
    ax.plot(t, err, lw=0.8, label="error")
    ax.set_xlabel("step")
    ax.set_ylabel("force / torque")
    ax.legend(loc="best", fontsize=8)
    _save(fig, run_dir / "force.svg", created)


def _line(run_dir, name, t, values, ylabel, created):
    fig, ax = plt.subplots(figsize=(6, 2.6))
    ax.plot(t, values, lw=1.0)
    ax.set_xlabel("step")
    ax.set_ylabel(ylabel)
    _save(fig, run_dir / name, created)


def _plot_states(run_dir, env_name, steps, created):
    t = steps["t"]
    if env_name == "pendulum":
        theta = steps["theta"]
        _line(run_dir, "x.svg", t, [math.cos(v) for v in theta], "x = cos(theta)", created)
        _line(run_dir, "y.svg", t, [math.sin(v) for v in theta], "y = sin(theta)", created)
        _line(run_dir, "theta.svg", t, theta, "theta", created)
        _line(run_dir, "theta_dot.svg", t, steps["theta_dot"], "theta_dot", created)
    elif env_name in ("mountaincar", "mountaincar-cont"):
        _line(run_dir, "x.svg", t, steps["x"], "position x", created)
    elif env_name == "acrobot":
        height = [
            -math.cos(t1) - math.cos(t1 + t2)
            for t1, t2 in zip(steps["theta1"], steps["theta2"])
        ]
        _line(run_dir, "goal_height.svg", t, height, "-cos(th1) - cos(th1+th2)", created)
    elif env_name == "cartpole":
        _line(run_dir, "x.svg", t, steps["x"], "cart position x", created)
        _line(run_dir, "theta.svg", t, steps["theta"], "pole angle theta", created)


def emit_plots(run_dir, window: int = DEFAULT_WINDOW) -> list[Path]:
    """Render all plots a run's CSVs support; returns the files written."""
    run_dir = Path(run_dir)
    episodes_csv = run_dir / "episodes.csv"
    steps_csv = run_dir / "steps.csv"
    if not episodes_csv.exists() and not steps_csv.exists():
        raise FileNotFoundError(
            f"nothing to plot in {run_dir}: missing {episodes_csv.name} and {steps_csv.name}"
        )
    created: list[Path] = []
    if episodes_csv.exists():
        _plot_reward(run_dir, _read_csv(episodes_csv), window, created)
    if steps_csv.exists():
        steps = _read_csv(steps_csv)
        if steps["t"]:
            _plot_force(run_dir, steps, created)
            env_name = None
            config_json = run_dir / "config.json"
            if config_json.exists():
                env_name = json.loads(config_json.read_text()).get("env")
            if env_name is None:
                env_name = _guess_env(steps)
            _plot_states(run_dir, env_name, steps, created)
    return created


def _guess_env(steps) -> str | None:
    cols = set(steps)
    if {"theta", "theta_dot"} <= cols and "x" not in cols:
        return "pendulum"
    if {"x", "x_dot", "theta"} <= cols:
        return "cartpole"
    if {"theta1", "theta2"} <= cols:
        return "acrobot"
    if {"x", "v"} <= cols:
        return "mountaincar"
    return None
