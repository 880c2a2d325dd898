"""Ground states of sector operators.

The production path is ARPACK's implicitly restarted Lanczos (``eigsh``) on
the two lowest eigenpairs; ``dense_spectrum`` is the small-system oracle.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse.linalg as sla

from .hamiltonian import SparseOperator
from .hilbert import SectorBasis

DEFAULT_TOL = 1e-10
DEGENERACY_GAP = 1e-8
DENSE_LIMIT = 3000


class SolverError(RuntimeError):
    def __init__(self, message, residual=np.inf):
        super().__init__(message)
        self.residual = residual


@dataclass
class GroundState:
    energy: float
    vector: np.ndarray
    basis: SectorBasis
    residual: float
    iterations: int
    gap: float = np.nan
    degenerate: bool = False

    @property
    def N(self) -> int:
        return self.basis.N


def fix_phase(v: np.ndarray) -> np.ndarray:
    """Normalize and make the largest-magnitude coefficient positive."""
    v = v / np.linalg.norm(v)
    k = int(np.argmax(np.abs(v)))
    return v if v[k] > 0 else -v


def translation_permutation(basis: SectorBasis) -> np.ndarray:
    """perm[i] = index of the configuration shifted by one site (site l -> l+1)."""
    shifted = np.roll(basis.levels, 1, axis=1).astype(np.int64)
    weights = 3 ** np.arange(basis.N - 1, -1, -1, dtype=np.int64)
    perm = basis.lookup(shifted @ weights)
    assert (perm >= 0).all()
    return perm


def symmetric_combination(vectors: np.ndarray, basis: SectorBasis) -> np.ndarray:
    """Combination of the columns of ``vectors`` that is most nearly even under a one-site translation."""
    perm = translation_permutation(basis)
    T = np.empty_like(vectors)
    T[perm] = vectors
    overlap = vectors.T @ T
    w, u = np.linalg.eigh((overlap + overlap.T) / 2)
    return vectors @ u[:, -1]


def dense_spectrum(op: SparseOperator, limit: int = DENSE_LIMIT) -> np.ndarray:
    if op.dim > limit:
        raise ValueError(f"operator dimension {op.dim} exceeds dense limit {limit}")
    return np.linalg.eigvalsh(op.toarray())


def _finish(op, energies, vectors, iterations, tol, gap_threshold):
    order = np.argsort(energies)
    energies, vectors = energies[order], vectors[:, order]
    gap = energies[1] - energies[0] if len(energies) > 1 else np.inf
    degenerate = bool(gap < gap_threshold)
    if degenerate:
        v = symmetric_combination(vectors[:, :2], op.basis)
    else:
        v = vectors[:, 0]
    v = fix_phase(v)
    Hv = op.apply(v)
    energy = float(v @ Hv)
    residual = float(np.linalg.norm(Hv - energy * v))
    if residual > tol:
        raise SolverError(f"ground state residual {residual:.3e} exceeds tol {tol:.1e}", residual)
    return GroundState(energy=energy, vector=v, basis=op.basis, residual=residual,
                       iterations=iterations, gap=float(gap), degenerate=degenerate)


def ground_state(op: SparseOperator, tol: float = DEFAULT_TOL, max_iter: int | None = None,
                 seed: int = 0, gap_threshold: float = DEGENERACY_GAP) -> GroundState:
    """Lowest eigenpair of ``op``.

    The start vector is drawn from ``default_rng(seed)`` so repeated calls agree
    bit for bit. When the two lowest levels are closer than ``gap_threshold`` the
    translation-even member of the doublet is returned and ``degenerate`` is set.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    n = op.dim
    if n <= 4:
        e, V = np.linalg.eigh(op.toarray())
        return _finish(op, e, V, 0, tol, gap_threshold)

    count = [0]

    def matvec(x):
        count[0] += 1
        return op.matrix @ x

    lin = sla.LinearOperator((n, n), matvec=matvec, dtype=float)
    v0 = np.random.default_rng(seed).standard_normal(n)
    maxiter = max_iter if max_iter is not None else 100 * n
    try:
        e, V = sla.eigsh(lin, k=2, which="SA", v0=v0, tol=0.0, maxiter=maxiter,
                         ncv=min(n, 40))
    except sla.ArpackNoConvergence as exc:
        best = np.inf
        if len(exc.eigenvalues):
            V = exc.eigenvectors
            R = op.matrix @ V - V * exc.eigenvalues
            best = float(np.linalg.norm(R, axis=0).min())
        raise SolverError(f"Lanczos did not converge after {count[0]} matvecs", best) from exc
    return _finish(op, e, V, count[0], tol, gap_threshold)
