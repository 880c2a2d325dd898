"""Ratio near the isotropic point Jz = 1.

Small chains still exceed the bound at small D; the maximum over D drops
below one from N = 8 on.
"""
import numpy as np

from spin1bell.sweep import SweepConfig, run_sweep

cfg = SweepConfig(Ns=(4, 6, 8, 10), Jz_min=1.0, Jz_max=1.0, Jz_steps=1, D_min=0.0, D_max=4.0, D_steps=21)
records = run_sweep(cfg)
for N in cfg.Ns:
    rs = [r for r in records if r.N == N]
    best = max(rs, key=lambda r: r.ratio)
    print(f"N={N:2d}  max ratio {best.ratio:.4f} at D={best.D:.1f}; "
          f"entropy at D=0: {rs[0].entropy:.3f}")
