from .config import RunConfig, build_agent, build_env, load_config
from .plots import emit_plots, trailing_mean
from .presets import load_preset, preset_names
from .run import EpisodeRecord, evaluate, load_checkpoint, train, train_seeds

__all__ = [
    "EpisodeRecord",
    "RunConfig",
    "build_agent",
    "build_env",
    "emit_plots",
    "evaluate",
    "load_checkpoint",
    "load_config",
    "load_preset",
    "preset_names",
    "trailing_mean",
    "train",
    "train_seeds",
]
