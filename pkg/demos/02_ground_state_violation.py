"""Bell violation by the ground state along the Jz = 12 cut.

Scan D, maximize B / beta_LR over the weight ratio at each point, locate the
peak, then show that it sharpens and grows with N.
"""
import numpy as np

from spin1bell.sweep import critical_point, evaluate_point
from spin1bell.diagnostics import fit_exponential_scaling

Jz = 12.0

print("coarse scan, N = 8")
for D in np.arange(11.0, 13.01, 0.25):
    r = evaluate_point(8, Jz, D)
    print(f"  D={D:5.2f}  ratio={r.ratio:6.3f}  f={r.f_violation:6.4f}  S={r.entropy:5.3f}  F={r.fidelity:5.3f}")

points = []
print("\nrefined criticality per N")
for N in (4, 6, 8, 10):
    cp = critical_point(N, Jz)
    rec = cp.record
    points.append((N, cp.ratio))
    print(f"  N={N:2d}  D*={cp.D:.5f}  ratio={cp.ratio:.4f}  f_v={rec.f_violation:.4f}  "
          f"g1={rec.g1:+.4f}  fidelity={rec.fidelity:.4f}")

fit = fit_exponential_scaling(points)
print(f"\nratio ~ gamma^N with gamma = {fit.gamma:.4f} (rms ln residual {fit.residual:.1e})")
