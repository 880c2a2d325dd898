"""Spin-1 computational basis and fixed-magnetization sectors.

Local level ``beta`` in {0, 1, 2} carries spin projection ``m = 1 - beta``,
so ``|0>`` is m=+1, ``|1>`` is m=0 and ``|2>`` is m=-1. Site 0 is the most
significant base-3 digit of the packed integer.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np


class EmptySectorError(ValueError):
    pass


def pack(levels) -> int:
    """Pack a sequence of local levels into a base-3 integer."""
    value = 0
    for b in levels:
        if b not in (0, 1, 2):
            raise ValueError(f"local level must be 0, 1 or 2, got {b}")
        value = 3 * value + int(b)
    return value


def unpack(value: int, N: int) -> tuple[int, ...]:
    if not 0 <= value < 3**N:
        raise ValueError(f"packed value {value} out of range for N={N}")
    digits = []
    for _ in range(N):
        value, r = divmod(value, 3)
        digits.append(r)
    return tuple(reversed(digits))


def magnetization(levels) -> int:
    """Total S^z of a configuration, sum over sites of (1 - beta)."""
    return sum(1 - int(b) for b in levels)


def digits_array(N: int) -> np.ndarray:
    """All 3^N configurations as an (3^N, N) int8 array, row index = packed value."""
    return np.array(list(product(range(3), repeat=N)), dtype=np.int8).reshape(3**N, N)


@dataclass(frozen=True)
class SectorBasis:
    """Configurations of N spin-1 sites with total magnetization Mz.

    ``states`` holds packed values in increasing order, ``levels`` the
    matching (dim, N) digit table.
    """

    N: int
    Mz: int
    states: np.ndarray
    levels: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.states)

    def index(self, config) -> int:
        """Ordinal of a configuration (packed int or level sequence)."""
        value = config if isinstance(config, (int, np.integer)) else pack(config)
        i = int(np.searchsorted(self.states, value))
        if i == self.dim or self.states[i] != value:
            raise KeyError(f"configuration {config!r} not in sector Mz={self.Mz}")
        return i

    def lookup(self, values: np.ndarray) -> np.ndarray:
        """Vectorized index; entries not in the sector map to -1."""
        values = np.asarray(values)
        i = np.searchsorted(self.states, values)
        i = np.minimum(i, self.dim - 1)
        return np.where(self.states[i] == values, i, -1)

    def config(self, i: int) -> tuple[int, ...]:
        return tuple(int(b) for b in self.levels[i])

    def __len__(self) -> int:
        return self.dim


def enumerate_sector(N: int, Mz: int = 0) -> SectorBasis:
    if N < 1:
        raise ValueError("N must be at least 1")
    if abs(Mz) > N:
        raise EmptySectorError(f"no configurations with |Mz|={abs(Mz)} > N={N}")
    levels = digits_array(N)
    mask = (1 - levels.astype(np.int64)).sum(axis=1) == Mz
    states = np.flatnonzero(mask).astype(np.int64)
    levels = levels[mask]
    levels.setflags(write=False)
    states.setflags(write=False)
    return SectorBasis(N=N, Mz=Mz, states=states, levels=levels)


def basis_state(basis: SectorBasis, levels) -> np.ndarray:
    """Unit vector over ``basis`` for one configuration."""
    v = np.zeros(basis.dim)
    v[basis.index(levels)] = 1.0
    return v


def embed(basis: SectorBasis, vector: np.ndarray) -> np.ndarray:
    """Expand sector coefficients into the full 3^N space."""
    full = np.zeros(3**basis.N, dtype=np.result_type(vector, float))
    full[basis.states] = vector
    return full
