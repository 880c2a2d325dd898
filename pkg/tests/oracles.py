"""Independent reference computations used by the tests."""
from itertools import product

import numpy as np



def spin_matrices() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """S^x, S^y, S^z for one spin-1 site in the level ordering m = +1, 0, -1."""
    s2 = np.sqrt(2.0)
    Sp = np.array([[0, s2, 0], [0, 0, s2], [0, 0, 0]], dtype=complex)
    Sm = Sp.conj().T
    Sz = np.diag([1.0, 0.0, -1.0]).astype(complex)
    return (Sp + Sm) / 2, (Sp - Sm) / 2j, Sz


def dense_hamiltonian(p) -> np.ndarray:
    """Full 3^N matrix from Kronecker products of the spin matrices.

    Independent of the sector code path; meant for small N.
    """
    N = p.N
    if N > 7:
        raise ValueError("dense assembly limited to N <= 7")
    Sx, Sy, Sz = spin_matrices()
    eye = np.eye(3)

    def site_op(op, l):
        mats = [eye] * N
        mats[l] = op
        out = mats[0]
        for M in mats[1:]:
            out = np.kron(out, M)
        return out

    ops = {name: [site_op(S, l) for l in range(N)] for name, S in (("x", Sx), ("y", Sy), ("z", Sz))}
    H = np.zeros((3**N, 3**N), dtype=complex)
    for a in range(N if p.periodic else N - 1):
        b = (a + 1) % N
        H += ops["x"][a] @ ops["x"][b] + ops["y"][a] @ ops["y"][b] + p.Jz * ops["z"][a] @ ops["z"][b]
    for l in range(N):
        H += p.D * ops["z"][l] @ ops["z"][l]
    assert np.abs(H.imag).max() < 1e-12
    return H.real




def sector_by_enumeration(N, Mz):
    """Packed values of all base-3 strings with the given magnetization, by direct loop."""
    out = []
    for value, digits in enumerate(product(range(3), repeat=N)):
        if sum(1 - b for b in digits) == Mz:
            out.append(value)
    return out


def literal_lr_bound(N, f1, f2, c):
    """Eq.-3-style bound by nested enumeration: strategies x setting vectors, pure Python."""
    best = -np.inf
    pairs = list(product(range(3), repeat=2))
    for strat in product(pairs, repeat=N):
        total = 0.0
        for m in product(range(2), repeat=N):
            ca = sum(c[l] * strat[l][m[l]] for l in range(N))
            cm = sum(c[l] * m[l] for l in range(N))
            for n, f in ((1, f1), (2, f2)):
                theta = np.angle(f) + 2 * np.pi * n / 3 * ca + np.pi * n / 3 * cm
                total += 2 * abs(f) * np.cos(theta)
        best = max(best, total)
    return best
