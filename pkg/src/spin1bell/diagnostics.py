"""Half-chain entanglement entropy, overlap with psi_max, and exponential scaling fits."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .eigensolver import GroundState
from .hilbert import SectorBasis, embed


@dataclass(frozen=True)
class ScalingFit:
    gamma: float
    log_prefactor: float
    residual: float  # RMS of ln(ratio) residuals

    def predict(self, N):
        return np.exp(self.log_prefactor) * self.gamma ** np.asarray(N, dtype=float)


def schmidt_values(state, cut: int, basis: SectorBasis = None) -> np.ndarray:
    if isinstance(state, GroundState):
        vec, basis = state.vector, state.basis
    else:
        vec = np.asarray(state)
    N = basis.N
    if not 1 <= cut < N:
        raise ValueError(f"cut must lie in [1, {N - 1}], got {cut}")
    psi = embed(basis, vec).reshape(3**cut, 3 ** (N - cut))
    return np.linalg.svd(psi, compute_uv=False)


def entanglement_entropy(state, cut: int = None, basis: SectorBasis = None, base: float = np.e) -> float:
    """Von Neumann entropy of the first ``cut`` sites (default N/2), natural log unless ``base`` is given."""
    if cut is None:
        N = state.basis.N if isinstance(state, GroundState) else basis.N
        cut = N // 2
    s = schmidt_values(state, cut, basis)
    p = s**2
    p = p[p > 1e-300]
    return float(-np.sum(p * np.log(p)) / np.log(base))


def fidelity(state, reference: np.ndarray) -> float:
    """|<reference|state>| for vectors over the same sector."""
    vec = state.vector if isinstance(state, GroundState) else np.asarray(state)
    reference = np.asarray(reference)
    if vec.shape != reference.shape:
        raise ValueError(f"dimension mismatch: {vec.shape} vs {reference.shape}")
    return float(abs(np.vdot(reference, vec)))


def fit_exponential_scaling(points) -> ScalingFit:
    """Least-squares fit of ln(ratio) = log_prefactor + N ln(gamma)."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or len(pts) < 3:
        raise ValueError("need at least three (N, ratio) points")
    N, r = pts[:, 0], pts[:, 1]
    if (r <= 0).any():
        raise ValueError("ratios must be positive")
    y = np.log(r)
    A = np.column_stack([N, np.ones_like(N)])
    (slope, intercept), *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = y - (slope * N + intercept)
    return ScalingFit(gamma=float(np.exp(slope)), log_prefactor=float(intercept),
                      residual=float(np.sqrt(np.mean(resid**2))))
