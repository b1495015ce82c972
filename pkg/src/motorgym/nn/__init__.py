from .fileio import (
    build_network,
    load_arrays,
    load_networks,
    read_meta,
    save_arrays,
    save_networks,
)
from .mlp import ACTIVATIONS, Mlp, TwoBranchCritic
from .optim import Adam, soft_update
from .replay import ReplayBuffer, Transition

__all__ = [
    "ACTIVATIONS",
    "Adam",
    "Mlp",
    "ReplayBuffer",
    "Transition",
    "TwoBranchCritic",
    "build_network",
    "load_arrays",
    "load_networks",
    "read_meta",
    "save_arrays",
    "save_networks",
    "soft_update",
]
