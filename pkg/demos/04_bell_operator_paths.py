"""Two ways to evaluate the Bell correlation.

The full operator is built from the Fourier-basis measurement operators and
applied on all 3^N states; the fast path uses only the two shift correlators.
"""
import numpy as np

from spin1bell.bell import BellWeights, bell_correlation, build_full_bell_operator, full_bell_expectation
from spin1bell.eigensolver import ground_state
from spin1bell.hamiltonian import HamiltonianParams, build_hamiltonian
from spin1bell.hilbert import embed, enumerate_sector

N = 6
basis = enumerate_sector(N, 0)
gs = ground_state(build_hamiltonian(HamiltonianParams(6.0, 5.8, N), basis))
w = BellWeights.maximizing(N, 0.7423)

op = build_full_bell_operator(N, w)
psi = embed(basis, gs.vector)
print("full operator  :", np.vdot(psi, op @ psi).real)
print("matrix-free    :", full_bell_expectation(gs, w))
print("shift correlators:", bell_correlation(gs, w))
print("operator nnz:", op.nnz, "of", op.shape[0] ** 2)
