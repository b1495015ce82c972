"""Checked-in experiment presets, one JSON file per reference experiment.

Each preset is a full RunConfig; load one, override the seed or output
directory, and train. Ideal-mode twins of every motor experiment exist
for baseline comparisons.
"""

from importlib import resources

from ..errors import ConfigError
from .config import RunConfig


def _preset_dir():
    return resources.files("motorgym.harness") / "presets"


def preset_names() -> list[str]:
    names = []
    for entry in _preset_dir().iterdir():
        if entry.name.endswith(".json"):
            names.append(entry.name[: -len(".json")])
    return sorted(names)


def load_preset(name: str) -> RunConfig:
    path = _preset_dir() / f"{name}.json"
    if not path.is_file():
        raise ConfigError(f"unknown preset {name!r}; available: {', '.join(preset_names())}")
    return RunConfig.from_json(path.read_text())
