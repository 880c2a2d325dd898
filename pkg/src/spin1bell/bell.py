"""Fourier-basis measurements and the generalized (N, 3) Bell correlation.

With the Fourier measurements the two settings of one party combine into a
shift operator, A^n + omega^(n/2) B^n = 2 omega^(n nu) J^n, where
J = sum_beta |beta-1><beta| lowers the local level. The Bell correlation of a
real, zero-magnetization state then only needs the two correlators
g_n = <prod_l J_l^(c_l n)>.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field, replace
from functools import reduce

import numpy as np
import scipy.optimize as so
import scipy.sparse as sp

from .eigensolver import GroundState
from .hilbert import SectorBasis, embed
from .lrbound import alternating_pattern, lr_bound_dp

FULL_OPERATOR_MAX_N = 8


def omega(d: int) -> complex:
    return np.exp(2j * np.pi / d)


def root_power(d: int, x: float) -> complex:
    """omega^x for real x, omega = exp(2 pi i / d)."""
    return np.exp(2j * np.pi * x / d)


@dataclass(frozen=True)
class BellWeights:
    f1_mag: float
    f2_mag: float
    theta1: float
    theta2: float
    theta_nu: float
    c: tuple = None

    @property
    def f1(self) -> complex:
        return self.f1_mag * np.exp(1j * self.theta1)

    @property
    def f2(self) -> complex:
        return self.f2_mag * np.exp(1j * self.theta2)

    @classmethod
    def maximizing(cls, N: int, f_ratio: float, **overrides) -> "BellWeights":
        """|f1| = 1, |f2| = f_ratio with theta1 = (-1)^(N/2) pi/2, theta2 = pi, theta_nu = pi/2."""
        kw = dict(f1_mag=1.0, f2_mag=float(f_ratio), theta1=(-1) ** (N // 2) * np.pi / 2,
                  theta2=np.pi, theta_nu=np.pi / 2, c=alternating_pattern(N))
        kw.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**kw)

    def with_ratio(self, f_ratio: float) -> "BellWeights":
        return replace(self, f2_mag=float(f_ratio) * self.f1_mag)


@dataclass(frozen=True)
class MeasurementSpec:
    d: int = 3
    m: int = 0
    nu: float = 0.0


@dataclass(frozen=True)
class CorrelatorSet:
    g1: complex
    g2: complex
    odd: bool = False

    def __getitem__(self, n):
        return {1: self.g1, 2: self.g2}[n]


def fourier_basis(d: int, m: int, nu: float = 0.0) -> np.ndarray:
    """Columns are the measurement basis vectors |alpha(m)>, alpha = 0..d-1."""
    if d < 2:
        raise ValueError("need at least two outcomes")
    if m not in (0, 1):
        raise ValueError("setting label must be 0 or 1")
    beta = np.arange(d)[:, None]
    alpha = np.arange(d)[None, :]
    return root_power(d, beta * (alpha + m / 2 - nu)) / np.sqrt(d)


def measurement_operator(spec: MeasurementSpec) -> np.ndarray:
    """sum_alpha omega^alpha |alpha(m)><alpha(m)|, a unitary with the d-th roots of unity as spectrum."""
    U = fourier_basis(spec.d, spec.m, spec.nu)
    return (U * omega(spec.d) ** np.arange(spec.d)) @ U.conj().T


def shift_matrix(d: int = 3) -> np.ndarray:
    """Lower shift J = sum_{beta>=1} |beta-1><beta|; sqrt(2) J is S^+ for spin 1."""
    return np.eye(d, k=1)


def _power(M: np.ndarray, k: int) -> np.ndarray:
    """M^k with negative powers meaning powers of the conjugate transpose."""
    if k < 0:
        M, k = M.conj().T, -k
    return np.linalg.matrix_power(M, k)


def shift_correlator(state, n: int, c=None, basis: SectorBasis = None) -> complex:
    """<psi| prod_l J_l^(c_l n) |psi> on a sector state.

    J^k with k > 0 lowers the local level by k, k < 0 raises it by |k|;
    configurations pushed outside {0, 1, 2} drop out.
    """
    vec, basis = _unpack_state(state, basis)
    N = basis.N
    c = alternating_pattern(N) if c is None else tuple(c)
    if N % 2:
        warnings.warn(f"N={N} is odd: the N-body shift correlators vanish by symmetry", stacklevel=2)
        return 0j
    shift = n * np.array(c)
    new = basis.levels.astype(np.int64) - shift
    ok = ((new >= 0) & (new <= 2)).all(axis=1)
    weights = 3 ** np.arange(N - 1, -1, -1, dtype=np.int64)
    j = basis.lookup(new[ok] @ weights)
    src = np.flatnonzero(ok)
    hit = j >= 0
    return complex(np.sum(np.conj(vec[j[hit]]) * vec[src[hit]]))


def correlators(state, c=None, basis: SectorBasis = None) -> CorrelatorSet:
    vec, basis = _unpack_state(state, basis)
    if basis.N % 2:
        return CorrelatorSet(0j, 0j, odd=True)
    return CorrelatorSet(shift_correlator(vec, 1, c, basis), shift_correlator(vec, 2, c, basis))


def _unpack_state(state, basis):
    if isinstance(state, GroundState):
        return state.vector, state.basis
    if basis is None:
        raise ValueError("a plain vector needs its SectorBasis")
    return np.asarray(state), basis


def bell_value(g: CorrelatorSet, w: BellWeights, N: int) -> float:
    """2^(N+1) sum_n |f_n| Re[exp(i (theta_n - n theta_nu)) g_n]; for real g_n this is the cosine form."""
    total = 0.0
    for n, mag, theta in ((1, w.f1_mag, w.theta1), (2, w.f2_mag, w.theta2)):
        total += mag * (np.exp(1j * (theta - n * w.theta_nu)) * g[n]).real
    return float(2 ** (N + 1) * total)


def bell_correlation(state, w: BellWeights, basis: SectorBasis = None) -> float:
    vec, basis = _unpack_state(state, basis)
    g = correlators(vec, w.c, basis)
    if g.odd:
        warnings.warn("odd N: Bell correlation is identically zero", stacklevel=2)
        return 0.0
    return bell_value(g, w, basis.N)


def theta_nu_from_phases(nu, c) -> float:
    """Total phase angle seen by the shift-operator form for per-site phases nu.

    The local factors pick up omega^(n sum_l c_l nu_l); in the convention of
    ``bell_value`` this is theta_nu = -2 pi sum_l c_l nu_l / 3.
    """
    return -2 * np.pi * float(np.dot(c, nu)) / 3


def phases_for(w: BellWeights, N: int) -> np.ndarray:
    """Per-site phases realizing ``w.theta_nu``: all on site 1, zero elsewhere."""
    c = alternating_pattern(N) if w.c is None else w.c
    nu = np.zeros(N)
    nu[0] = -3 * w.theta_nu / (2 * np.pi) * c[0]
    return nu


def local_factors(w: BellWeights, N: int, nu=None, tol: float = 1e-13) -> dict:
    """{n: [A_l^(c_l n) + omega^(c_l n/2) B_l^(c_l n) for each site]} from the measurement operators."""
    c = alternating_pattern(N) if w.c is None else w.c
    nu = phases_for(w, N) if nu is None else np.asarray(nu, dtype=float)
    out = {}
    for n in (1, 2):
        mats = []
        for l in range(N):
            A = measurement_operator(MeasurementSpec(3, 0, nu[l]))
            B = measurement_operator(MeasurementSpec(3, 1, nu[l]))
            k = c[l] * n
            M = _power(A, k) + root_power(3, k / 2) * _power(B, k)
            M[np.abs(M) < tol] = 0
            mats.append(M)
        out[n] = mats
    return out


def build_full_bell_operator(N: int, w: BellWeights, nu=None) -> sp.csr_matrix:
    """Bell operator on the full 3^N space, assembled from the measurement operators.

    Local factor entries below 1e-13 in magnitude (exact cancellations) are
    dropped so the Kronecker products stay sparse.
    """
    if N > FULL_OPERATOR_MAX_N:
        raise ValueError(f"full Bell operator limited to N <= {FULL_OPERATOR_MAX_N}")
    factors = local_factors(w, N, nu)
    op = None
    for n, f in ((1, w.f1), (2, w.f2)):
        term = reduce(lambda a, b: sp.kron(a, b, format="csr"), [sp.csr_matrix(M) for M in factors[n]])
        op = f * term if op is None else op + f * term
    op = op + op.conj().T
    return op.tocsr()


def full_bell_expectation(state, w: BellWeights, nu=None, basis: SectorBasis = None) -> float:
    """<psi|B|psi> applying the local factors site by site (no 3^N x 3^N matrix)."""
    vec, basis = _unpack_state(state, basis)
    N = basis.N
    psi = embed(basis, vec).astype(complex).reshape((3,) * N)
    factors = local_factors(w, N, nu)
    total = 0j
    for n, f in ((1, w.f1), (2, w.f2)):
        phi = psi
        for l, M in enumerate(factors[n]):
            phi = np.moveaxis(np.tensordot(M, phi, axes=([1], [l])), 0, l)
        total += f * np.vdot(psi, phi)
    return float(2 * total.real)


def restricted_bell_matrix(N: int, f_ratio: float) -> np.ndarray:
    """Bell operator on span{|0202..>, |11..1>, |2020..>} with |f1| = 1, |f2| = f_ratio.

    Off-diagonal couplings s1 between neighbours and s2 * f_ratio between the
    two Neel states, s_n = (-1)^(n N/2).
    """
    s1 = (-1) ** (N // 2)
    s2 = (-1) ** N
    return np.array([[0.0, s1, s2 * f_ratio],
                     [s1, 0.0, s1],
                     [s2 * f_ratio, s1, 0.0]])


def psi_max_state(N: int, f_ratio: float) -> tuple[float, float]:
    """(b, lambda) for the top eigenvector b|0202..> + sqrt(1-2b^2)|11..1> + b|2020..>.

    The middle amplitude is taken nonnegative, so b carries the sign (-1)^(N/2).
    The Bell correlation of this state at the maximizing angles is 2^N * lambda.
    """
    if N % 2:
        raise ValueError("psi_max is defined for even N")
    if f_ratio < 0:
        raise ValueError("f_ratio must be nonnegative")
    e, V = np.linalg.eigh(restricted_bell_matrix(N, f_ratio))
    v = V[:, -1]
    if v[1] < 0 or (v[1] == 0 and v[0] < 0):
        v = -v
    return float((v[0] + v[2]) / 2), float(e[-1])


def neel_configs(N: int) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    """|0202..>, |11..1>, |2020..> as level tuples."""
    return (tuple(0 if l % 2 == 0 else 2 for l in range(N)), (1,) * N,
            tuple(2 if l % 2 == 0 else 0 for l in range(N)))


def psi_max_vector(basis: SectorBasis, b: float) -> np.ndarray:
    v = np.zeros(basis.dim)
    e0, e1, e2 = neel_configs(basis.N)
    v[basis.index(e0)] = b
    v[basis.index(e1)] = np.sqrt(max(0.0, 1 - 2 * b * b))
    v[basis.index(e2)] = b
    return v


@dataclass
class RatioOptimum:
    f_best: float
    ratio: float
    maxima: list = field(default_factory=list)  # (f, ratio) for every local maximum
    f_violation: float = np.nan
    grid: np.ndarray = field(default=None, repr=False)
    values: np.ndarray = field(default=None, repr=False)

    @property
    def violates(self) -> bool:
        return self.ratio > 1


def ratio_curve(g: CorrelatorSet, N: int, f_values, beta_fn=lr_bound_dp, base: BellWeights = None):
    base = base or BellWeights.maximizing(N, 1.0)
    out = np.empty(len(f_values))
    for i, f in enumerate(f_values):
        w = base.with_ratio(f)
        out[i] = bell_value(g, w, N) / beta_fn(N, w)
    return out


def optimize_weight_ratio(state, beta_fn=lr_bound_dp, f_max: float = 4.0, points: int = 400,
                          xtol: float = 1e-7, basis: SectorBasis = None,
                          theta1=None, theta2=None, theta_nu=None) -> RatioOptimum:
    """Maximize B / beta_LR over f = |f2|/|f1| at fixed angles.

    Grid scan on (0, f_max], then golden-section refinement inside each
    bracketing triple around a grid local maximum. ``state`` may also be a
    precomputed ``CorrelatorSet`` (pass ``basis`` or an object with ``N``).
    """
    if isinstance(state, CorrelatorSet):
        g, N = state, basis if isinstance(basis, int) else basis.N
    else:
        vec, B = _unpack_state(state, basis)
        g, N = correlators(vec, None, B), B.N
    base = BellWeights.maximizing(N, 1.0, theta1=theta1, theta2=theta2, theta_nu=theta_nu)
    if g.odd or (abs(g.g1) < 1e-14 and abs(g.g2) < 1e-14):
        return RatioOptimum(f_best=np.nan, ratio=0.0)

    grid = f_max * np.arange(1, points + 1) / points
    vals = ratio_curve(g, N, grid, beta_fn, base)

    def objective(f):
        return -ratio_curve(g, N, [f], beta_fn, base)[0]

    maxima = []
    for i in range(len(grid)):
        left = vals[i - 1] if i > 0 else -np.inf
        right = vals[i + 1] if i + 1 < len(grid) else -np.inf
        if not (vals[i] >= left and vals[i] > right):
            continue
        if 0 < i < len(grid) - 1:
            try:
                res = so.minimize_scalar(objective, bracket=(grid[i - 1], grid[i], grid[i + 1]),
                                         method="golden", tol=xtol)
                f_opt, r_opt = float(res.x), float(-res.fun)
            except ValueError:
                f_opt, r_opt = float(grid[i]), float(vals[i])
            if r_opt < vals[i]:
                f_opt, r_opt = float(grid[i]), float(vals[i])
        else:
            f_opt, r_opt = float(grid[i]), float(vals[i])
        maxima.append((f_opt, r_opt))

    if not maxima or max(r for _, r in maxima) <= 0:
        return RatioOptimum(f_best=np.nan, ratio=0.0, maxima=maxima, grid=grid, values=vals)
    f_best, best = max(maxima, key=lambda t: t[1])
    return RatioOptimum(f_best=f_best, ratio=best, maxima=maxima, f_violation=f_best,
                        grid=grid, values=vals)
