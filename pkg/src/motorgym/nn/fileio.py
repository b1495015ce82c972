"""Plain-text parameter files.

Layout (version 1):

    line 1:  "netfile 1"
    line 2:  one JSON object: {"meta": {...}, "networks": [[name, arch], ...]}
    then, for every parameter array in order:
             "array <name> <dim0> <dim1> ..."
             one line of space-separated floats, row-major.

MLP parameters are named <net>/W0, <net>/b0, <net>/W1, ...; the
two-branch critic nests its blocks as <net>/state/W0, <net>/action/W0,
<net>/trunk/W0, and so on. Floats are written with repr() and
round-trip exactly. Checkpoints that are not neural networks (the tile
coder's weight vector) store their arrays under the same encoding with
an empty network list.
"""

import json
from pathlib import Path

import numpy as np

from .mlp import Mlp, TwoBranchCritic

FORMAT_LINE = "netfile 1"


def _named_params(net, prefix=""):
    if isinstance(net, Mlp):
        out = []
        for k, (w, b) in enumerate(zip(net.weights, net.biases)):
            out.append((f"{prefix}W{k}", w))
            out.append((f"{prefix}b{k}", b))
        return out
    if isinstance(net, TwoBranchCritic):
        out = _named_params(net.state_branch, prefix + "state/")
        if net.action_branch is not None:
            out += _named_params(net.action_branch, prefix + "action/")
        return out + _named_params(net.trunk, prefix + "trunk/")
    raise TypeError(f"cannot serialize {type(net).__name__}")


def build_network(arch: dict):
    """Instantiate a network matching an arch header (weights arbitrary)."""
    kind = arch.get("kind")
    if kind == "mlp":
        return Mlp(arch["sizes"], arch["activations"], out_scale=arch.get("out_scale", 1.0))
    if kind == "two_branch_critic":
        return TwoBranchCritic(
            arch["obs_dim"],
            arch["act_dim"],
            arch["state_layers"],
            arch["action_layers"],
            arch["trunk_layers"],
        )
    raise ValueError(f"unknown network kind {kind!r}")


def _write(path, header, named_arrays):
    lines = [FORMAT_LINE, json.dumps(header, sort_keys=True)]
    for name, arr in named_arrays:
        arr = np.asarray(arr, dtype=np.float64)
        dims = " ".join(str(d) for d in arr.shape)
        lines.append(f"array {name} {dims}")
        lines.append(" ".join(repr(v) for v in arr.ravel().tolist()))
    Path(path).write_text("\n".join(lines) + "\n")


def _read(path):
    lines = Path(path).read_text().splitlines()
    if not lines or lines[0] != FORMAT_LINE:
        raise ValueError(f"{path} is not a version-1 parameter file")
    header = json.loads(lines[1])
    arrays = {}
    k = 2
    while k < len(lines):
        if not lines[k].strip():
            k += 1
            continue
        tag, full_name, *dims = lines[k].split()
        if tag != "array":
            raise ValueError(f"unexpected line in {path}: {lines[k][:60]!r}")
        shape = tuple(int(d) for d in dims)
        values = np.array([float(v) for v in lines[k + 1].split()])
        arrays[full_name] = values.reshape(shape)
        k += 2
    return header, arrays


def save_networks(path, networks: dict, meta: dict | None = None) -> None:
    header = {"meta": meta or {}, "networks": [[n, net.arch()] for n, net in networks.items()]}
    named = []
    for name, net in networks.items():
        named += _named_params(net, f"{name}/")
    _write(path, header, named)


def load_networks(path):
    """Read a parameter file; returns (networks dict, meta dict)."""
    header, arrays = _read(path)
    networks = {name: build_network(arch) for name, arch in header["networks"]}
    for name, net in networks.items():
        for pname, arr in _named_params(net, f"{name}/"):
            stored = arrays[pname]
            if stored.shape != arr.shape:
                raise ValueError(f"shape mismatch for {pname}")
            arr[...] = stored
    return networks, header["meta"]


def save_arrays(path, arrays: dict, meta: dict | None = None) -> None:
    _write(path, {"meta": meta or {}, "networks": []}, list(arrays.items()))


def load_arrays(path):
    header, arrays = _read(path)
    return arrays, header["meta"]


def read_meta(path) -> dict:
    header, _ = _read(path)
    return header["meta"]
