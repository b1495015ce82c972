"""Tile coding over a continuous state box.

Several square grids ("tilings") cover the state space, each shifted by
a different fraction of a tile so that nearby states share most of
their active tiles. A query returns one tile index per tiling, all
distinct, offset into a per-action block so that state-action values
live in a single flat weight vector.
"""

import numpy as np


class TileCoder:
    """Default geometry: 8 tilings of a 9x9 grid and 3 actions = 1944 tiles."""

    def __init__(
        self,
        lows,
        highs,
        n_tilings: int = 8,
        tiles_per_dim: int = 9,
        n_actions: int = 3,
        displacement=None,
    ):
        self.lows = tuple(float(v) for v in lows)
        self.highs = tuple(float(v) for v in highs)
        if len(self.lows) != len(self.highs):
            raise ValueError("lows and highs must have the same length")
        for lo, hi in zip(self.lows, self.highs):
            if not lo < hi:
                raise ValueError(f"invalid range [{lo}, {hi}]")
        self.n_dims = len(self.lows)
        self.n_tilings = int(n_tilings)
        self.tiles_per_dim = int(tiles_per_dim)
        self.n_actions = int(n_actions)
        if displacement is None:
            displacement = tuple(2 * d + 1 for d in range(self.n_dims))
        self.displacement = tuple(int(d) for d in displacement)
        # (tiles_per_dim - 1) cells span the range; the extra row absorbs
        # the tiling offsets, which are fractions of one cell.
        self._scale = tuple(
            (self.tiles_per_dim - 1) / (hi - lo) for lo, hi in zip(self.lows, self.highs)
        )

    @property
    def total_tiles(self) -> int:
        return self.n_tilings * self.tiles_per_dim**self.n_dims * self.n_actions

    def active_tiles(self, state, action: int) -> list[int]:
        """Indices of the active tiles, one per tiling."""
        if not 0 <= action < self.n_actions:
            raise ValueError(f"action {action} out of range")
        coords = [
            min(max(float(s), lo), hi) for s, lo, hi in zip(state, self.lows, self.highs)
        ]
        out = []
        per_tiling = self.tiles_per_dim**self.n_dims
        for t in range(self.n_tilings):
            idx = 0
            for d in range(self.n_dims):
                offset = ((t * self.displacement[d]) % self.n_tilings) / self.n_tilings
                cell = int((coords[d] - self.lows[d]) * self._scale[d] + offset)
                idx = idx * self.tiles_per_dim + cell
            out.append((t * per_tiling + idx) * self.n_actions + action)
        return out

    def config(self) -> dict:
        return {
            "lows": list(self.lows),
            "highs": list(self.highs),
            "n_tilings": self.n_tilings,
            "tiles_per_dim": self.tiles_per_dim,
            "n_actions": self.n_actions,
            "displacement": list(self.displacement),
        }

    @classmethod
    def from_config(cls, cfg: dict) -> "TileCoder":
        return cls(**cfg)


def q_value(weights: np.ndarray, active: list[int]) -> float:
    return float(weights[active].sum())
