"""Parameter sweeps over the (Jz, D) plane, criticality search and result files."""
from __future__ import annotations

import csv
import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from functools import lru_cache
from itertools import product

import numpy as np
import scipy.optimize as so

from .bell import (BellWeights, bell_value, correlators, optimize_weight_ratio, psi_max_state,
                   psi_max_vector, CorrelatorSet)
from .diagnostics import entanglement_entropy, fidelity, fit_exponential_scaling
from .eigensolver import DEFAULT_TOL, SolverError, ground_state
from .hamiltonian import HamiltonianParams, build_hamiltonian
from .hilbert import enumerate_sector
from .lrbound import lr_bound_dp

log = logging.getLogger(__name__)

ODD_N_MESSAGE = ("odd N is not supported: with the alternating conjugation pattern the N-body "
                 "shift correlators change the magnetization and vanish on the Mz=0 ground state")


@dataclass
class SweepConfig:
    Ns: tuple = (8,)
    Jz_min: float = 0.0
    Jz_max: float = 16.0
    Jz_steps: int = 81
    D_min: float = 0.0
    D_max: float = 16.0
    D_steps: int = 81
    theta1: float = None
    theta2: float = None
    theta_nu: float = None
    f_max: float = 4.0
    f_points: int = 400
    tol: float = DEFAULT_TOL
    seed: int = 0
    workers: int = 1
    output: str = None
    format: str = "csv"

    def __post_init__(self):
        self.Ns = tuple(int(n) for n in self.Ns)
        if not self.Ns:
            raise ValueError("N list is empty")
        for n in self.Ns:
            if n % 2:
                raise ValueError(f"N={n}: {ODD_N_MESSAGE}")
            if not 2 <= n <= 10:
                raise ValueError(f"N={n} outside the supported range 2..10")
        if self.Jz_steps < 1 or self.D_steps < 1:
            raise ValueError("grids must be nonempty")
        if self.format not in ("csv", "jsonl", "both"):
            raise ValueError(f"unknown format {self.format!r}")

    def Jz_grid(self) -> np.ndarray:
        return np.linspace(self.Jz_min, self.Jz_max, self.Jz_steps)

    def D_grid(self) -> np.ndarray:
        return np.linspace(self.D_min, self.D_max, self.D_steps)

    def points(self):
        return [(N, float(Jz), float(D)) for N in self.Ns for Jz in self.Jz_grid() for D in self.D_grid()]

    @classmethod
    def from_file(cls, path, **overrides) -> "SweepConfig":
        """Read ``key = value`` lines (``#`` comments); keyword overrides win."""
        kw = {}
        types = {f.name: f for f in fields(cls)}
        with open(path) as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ValueError(f"{path}:{lineno}: expected key = value")
                key, value = (s.strip() for s in line.split("=", 1))
                if key not in types:
                    raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
                kw[key] = _parse_value(key, value)
        kw.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**kw)


_INT_KEYS = {"Jz_steps", "D_steps", "f_points", "seed", "workers"}
_STR_KEYS = {"output", "format"}


def _parse_value(key, value):
    if key == "Ns":
        return tuple(int(v) for v in value.replace(",", " ").split())
    if key in _INT_KEYS:
        return int(value)
    if key in _STR_KEYS:
        return value
    if value.lower() in ("none", ""):
        return None
    return float(value)


@dataclass
class SweepRecord:
    N: int
    Jz: float
    D: float
    energy: float = math.nan
    degenerate: bool = False
    g1: float = math.nan
    g2: float = math.nan
    f_violation: float = math.nan
    ratio: float = math.nan
    beta_lr: float = math.nan
    bell: float = math.nan
    entropy: float = math.nan
    fidelity: float = math.nan
    b: float = math.nan
    residual: float = math.nan
    n_maxima: int = 0
    error: str = ""

    def weights(self, cfg: SweepConfig = None) -> BellWeights:
        cfg = cfg or SweepConfig(Ns=(self.N,))
        return BellWeights.maximizing(self.N, self.f_violation, theta1=cfg.theta1,
                                      theta2=cfg.theta2, theta_nu=cfg.theta_nu)

    def recompute_ratio(self, cfg: SweepConfig = None) -> float:
        w = self.weights(cfg)
        return bell_value(CorrelatorSet(self.g1, self.g2), w, self.N) / self.beta_lr


COLUMNS = [f.name for f in fields(SweepRecord)]


@lru_cache(maxsize=16)
def _basis(N):
    return enumerate_sector(N, 0)


def evaluate_point(N: int, Jz: float, D: float, cfg: SweepConfig = None) -> SweepRecord:
    """All per-point quantities; solver failures are stored in ``error``."""
    cfg = cfg or SweepConfig(Ns=(N,))
    rec = SweepRecord(N=N, Jz=float(Jz), D=float(D))
    basis = _basis(N)
    try:
        gs = ground_state(build_hamiltonian(HamiltonianParams(Jz, D, N), basis), tol=cfg.tol, seed=cfg.seed)
    except SolverError as exc:
        rec.error = str(exc)
        rec.residual = exc.residual
        return rec
    g = correlators(gs)
    opt = optimize_weight_ratio(g, basis=N, f_max=cfg.f_max, points=cfg.f_points,
                                theta1=cfg.theta1, theta2=cfg.theta2, theta_nu=cfg.theta_nu)
    rec.energy, rec.degenerate, rec.residual = gs.energy, gs.degenerate, gs.residual
    rec.g1, rec.g2 = g.g1.real, g.g2.real
    rec.entropy = entanglement_entropy(gs)
    rec.n_maxima = len(opt.maxima)
    if np.isfinite(opt.f_best):
        rec.f_violation = opt.f_best
        w = rec.weights(cfg)
        rec.beta_lr = lr_bound_dp(N, w)
        rec.bell = bell_value(g, w, N)
        rec.ratio = rec.bell / rec.beta_lr
        rec.b, _ = psi_max_state(N, opt.f_best)
        rec.fidelity = fidelity(gs, psi_max_vector(basis, rec.b))
    else:
        rec.ratio = 0.0
    return rec


def _evaluate_args(args):
    return evaluate_point(*args)


def run_sweep(cfg: SweepConfig) -> list[SweepRecord]:
    """One record per (N, Jz, D) grid point in deterministic grid order."""
    tasks = [(N, Jz, D, cfg) for N, Jz, D in cfg.points()]
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            records = list(pool.map(_evaluate_args, tasks, chunksize=max(1, len(tasks) // (4 * cfg.workers))))
    else:
        records = [evaluate_point(*t) for t in tasks]
    failed = sum(1 for r in records if r.error)
    if failed:
        log.warning("%d of %d grid points failed to converge", failed, len(records))
    return records


@dataclass
class CriticalPoint:
    D: float
    ratio: float
    flat: bool = False
    record: SweepRecord = field(default=None, repr=False)


def locate_criticality(records, evaluate=None, resolution: float = 1e-3, polish: bool = True) -> CriticalPoint:
    """Argmax of the ratio over D on one Jz slice.

    With ``evaluate`` (D -> SweepRecord) the argmax is refined by successively
    finer local grids until the spacing is below ``resolution``, then polished
    by golden-section search inside the final bracket.
    """
    records = sorted(records, key=lambda r: r.D)
    if len({r.Jz for r in records}) > 1 or len({r.N for r in records}) > 1:
        raise ValueError("locate_criticality expects a single (N, Jz) slice")
    Ds = np.array([r.D for r in records])
    ratios = np.array([r.ratio if np.isfinite(r.ratio) else -np.inf for r in records])
    i = int(np.argmax(ratios))
    if np.ptp(ratios[np.isfinite(ratios)]) <= 1e-12 or not np.isfinite(ratios[i]):
        return CriticalPoint(D=float(Ds[i]), ratio=float(ratios[i]), flat=True, record=records[i])
    best = records[i]
    if evaluate is None or len(records) < 2:
        return CriticalPoint(D=best.D, ratio=best.ratio, record=best)

    step = float(np.max(np.diff(Ds)))
    cache = {r.D: r for r in records}

    def get(D):
        D = float(D)
        if D not in cache:
            cache[D] = evaluate(D)
        return cache[D]

    lo_lim, hi_lim = Ds[0], Ds[-1]
    while step > resolution:
        grid = np.linspace(max(lo_lim, best.D - step), min(hi_lim, best.D + step), 21)
        recs = [get(D) for D in grid]
        best = max(recs, key=lambda r: r.ratio if np.isfinite(r.ratio) else -np.inf)
        step = float(grid[1] - grid[0])

    if polish:
        a, c = max(lo_lim, best.D - step), min(hi_lim, best.D + step)
        if a < best.D < c and get(a).ratio < best.ratio and get(c).ratio < best.ratio:
            res = so.minimize_scalar(lambda D: -get(D).ratio, bracket=(a, best.D, c),
                                     method="golden", tol=1e-9)
            cand = get(res.x)
            if cand.ratio > best.ratio:
                best = cand
    return CriticalPoint(D=best.D, ratio=best.ratio, record=best)


def critical_point(N: int, Jz: float, D_min: float = None, D_max: float = None, steps: int = 61,
                   cfg: SweepConfig = None, resolution: float = 1e-3) -> CriticalPoint:
    """Scan D on one Jz cut and refine the ratio maximum (default window Jz +- 3)."""
    cfg = cfg or SweepConfig(Ns=(N,))
    D_min = max(0.0, Jz - 3) if D_min is None else D_min
    D_max = Jz + 3 if D_max is None else D_max
    recs = [evaluate_point(N, Jz, D, cfg) for D in np.linspace(D_min, D_max, steps)]
    return locate_criticality(recs, evaluate=lambda D: evaluate_point(N, Jz, D, cfg), resolution=resolution)


def table1_rows(Jz: float = 12.0, Ns=(4, 6, 8, 10), cfg: SweepConfig = None) -> list[dict]:
    """N, optimal weight ratio at the located criticality, b of psi_max and its ratio to the bound."""
    rows = []
    for N in Ns:
        cp = critical_point(N, Jz, cfg=cfg)
        f = cp.record.f_violation
        b, lam = psi_max_state(N, f)
        w = BellWeights.maximizing(N, f)
        rows.append({"N": N, "f_v_max": f, "b": b, "ratio": 2**N * lam / lr_bound_dp(N, w),
                     "D_star": cp.D, "ground_state_ratio": cp.ratio})
    return rows


TABLE1_COLUMNS = ["N", "f_v_max", "b", "ratio"]


def scaling_fit(Jz: float, Ns=(4, 6, 8, 10), cfg: SweepConfig = None):
    """Locate criticality for each N on one Jz cut and fit ratio ~ gamma^N."""
    points = [critical_point(N, Jz, cfg=cfg) for N in Ns]
    fit = fit_exponential_scaling([(N, cp.ratio) for N, cp in zip(Ns, points)])
    return fit, points


def _fmt(value):
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def write_csv(records, path, columns=COLUMNS):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(columns)
        for r in records:
            row = asdict(r) if not isinstance(r, dict) else r
            writer.writerow([_fmt(row[c]) for c in columns])


def write_jsonl(records, path):
    with open(path, "w") as fh:
        for r in records:
            fh.write(json.dumps(asdict(r) if not isinstance(r, dict) else r) + "\n")


def emit(records, path, format: str = "csv"):
    """Write records as CSV, JSON lines, or both (``path`` stem plus .csv/.jsonl)."""
    if format == "csv":
        write_csv(records, path)
        return [path]
    if format == "jsonl":
        write_jsonl(records, path)
        return [path]
    if format == "both":
        stem = str(path).rsplit(".", 1)[0] if str(path).endswith((".csv", ".jsonl")) else str(path)
        write_csv(records, stem + ".csv")
        write_jsonl(records, stem + ".jsonl")
        return [stem + ".csv", stem + ".jsonl"]
    raise ValueError(f"unknown format {format!r}")


_RECORD_TYPES = {f.name: f.type for f in fields(SweepRecord)}


def _coerce(name, text):
    kind = _RECORD_TYPES[name]
    if kind == "int":
        return int(text)
    if kind == "bool":
        return text in ("1", "True", "true")
    if kind == "str":
        return text
    return float(text)


def read_csv(path) -> list[SweepRecord]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        return [SweepRecord(**{k: _coerce(k, v) for k, v in row.items()}) for row in reader]


def read_jsonl(path) -> list[SweepRecord]:
    with open(path) as fh:
        return [SweepRecord(**json.loads(line)) for line in fh if line.strip()]
