"""GHZ-like states that maximize the Bell correlation, and their ratio to the classical bound.

For each chain length the weight ratio f = |f2|/|f1| fixes a 3x3 eigenproblem on
|0202..>, |11..1>, |2020..>. The top eigenvector is
b|0202..> + sqrt(1 - 2b^2)|11..1> + b|2020..>, and its Bell value 2^N * lambda is
compared with the exact local-realistic bound from the dynamic program.
"""
import numpy as np

from spin1bell.bell import BellWeights, psi_max_state
from spin1bell.lrbound import lr_bound_bruteforce, lr_bound_dp

weights = {4: 1.039, 6: 0.7423, 8: 0.5502, 10: 0.4114}

print(f"{'N':>3} {'f':>8} {'b':>9} {'lambda':>9} {'beta_LR':>10} {'ratio':>7}")
for N, f in weights.items():
    b, lam = psi_max_state(N, f)
    w = BellWeights.maximizing(N, f)
    beta = lr_bound_dp(N, w)
    print(f"{N:>3} {f:>8.4f} {b:>+9.4f} {lam:>9.4f} {beta:>10.4f} {2**N * lam / beta:>7.3f}")

# f = 1 gives the generalized GHZ state, b = 1/sqrt(3)
print("\nb at f=1, N=8:", psi_max_state(8, 1.0)[0], "vs", 1 / np.sqrt(3))

# the dynamic program agrees with exhaustive enumeration of all 9^N strategies
w = BellWeights.maximizing(6, 0.7423)
print("N=6 bound: DP", lr_bound_dp(6, w), " brute force", lr_bound_bruteforce(6, w))
