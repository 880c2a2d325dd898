"""Spin-1 XXZ chain with on-site anisotropy, restricted to an S^z sector.

    H = sum_l [S^x_l S^x_{l+1} + S^y_l S^y_{l+1} + Jz S^z_l S^z_{l+1}] + D sum_l (S^z_l)^2

The XX part is assembled as (S^+_l S^-_{l+1} + S^-_l S^+_{l+1}) / 2. For spin 1
every nonzero ladder element is sqrt(2), so each allowed hop carries weight 1.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .hilbert import SectorBasis, digits_array


@dataclass(frozen=True)
class HamiltonianParams:
    Jz: float
    D: float
    N: int
    periodic: bool = True

    def __post_init__(self):
        if self.N < 2:
            raise ValueError("chain needs at least two sites")

    def bonds(self) -> list[tuple[int, int]]:
        pairs = [(l, l + 1) for l in range(self.N - 1)]
        if self.periodic:
            pairs.append((self.N - 1, 0))
        return pairs


@dataclass(frozen=True)
class SparseOperator:
    """Real symmetric operator acting on the coefficients of ``basis``."""

    matrix: sp.csr_matrix
    basis: SectorBasis

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def apply(self, v: np.ndarray) -> np.ndarray:
        return apply(self, v)

    def toarray(self) -> np.ndarray:
        return self.matrix.toarray()

    def expectation(self, v: np.ndarray) -> float:
        return float(np.vdot(v, self.matrix @ v).real)


def apply(op: SparseOperator, v: np.ndarray) -> np.ndarray:
    v = np.asarray(v)
    if v.shape[0] != op.dim:
        raise ValueError(f"vector length {v.shape[0]} does not match operator dim {op.dim}")
    return op.matrix @ v


def build_hamiltonian(p: HamiltonianParams, basis: SectorBasis) -> SparseOperator:
    if basis.N != p.N:
        raise ValueError(f"basis has N={basis.N} but parameters have N={p.N}")
    N = p.N
    lv = basis.levels.astype(np.int64)
    m = 1 - lv
    weights = 3 ** np.arange(N - 1, -1, -1, dtype=np.int64)

    diag = p.D * (m**2).sum(axis=1).astype(float)
    rows, cols, vals = [], [], []
    for a, b in p.bonds():
        diag += p.Jz * m[:, a] * m[:, b]
        # S^+_a S^-_b: level at a drops by one, level at b rises by one
        for src, dst in ((a, b), (b, a)):
            ok = (lv[:, src] > 0) & (lv[:, dst] < 2)
            i = np.flatnonzero(ok)
            target = basis.states[i] - weights[src] + weights[dst]
            j = basis.lookup(target)
            rows.append(j)
            cols.append(i)
            vals.append(np.ones(len(i)))

    idx = np.arange(basis.dim)
    rows = np.concatenate(rows + [idx])
    cols = np.concatenate(cols + [idx])
    vals = np.concatenate(vals + [diag])
    H = sp.csr_matrix((vals, (rows, cols)), shape=(basis.dim, basis.dim))
    H.sum_duplicates()
    H.eliminate_zeros()
    return SparseOperator(matrix=H, basis=basis)


def magnetization_operator(N: int) -> np.ndarray:
    """Diagonal of total S^z over the full 3^N space."""
    return (1 - digits_array(N).astype(np.int64)).sum(axis=1)
