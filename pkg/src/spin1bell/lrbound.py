"""Local-realistic bound of the (N, 3) Bell expression with two settings per party.

For a deterministic strategy each party l fixes outcomes (a_l(0), a_l(1)).
Summing the cosine terms over all 2^N setting choices factorizes,

    sum_m exp(i Theta_n) = exp(i theta_n) * prod_l z_l^(n),
    z_l^(n) = sum_{m in {0,1}} omega^(c_l n (a_l(m) + m/2)),

so the bound is max over strategies of 2 Re[f_1 Z_1 + f_2 Z_2] with Z_n the
product of the per-party factors. Every factor has a phase that is a multiple
of pi/6 and a magnitude in {0, sqrt 3} (n=1) or {1, 2} (n=2), with
|z^(1)| = 0 exactly when |z^(2)| = 2. The dynamic program therefore tracks the
reachable set of (number of |z^(2)|=2 factors, phase of Z_1, phase of Z_2)
with phases as integers mod 12.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product

import numpy as np

OMEGA = np.exp(2j * np.pi / 3)
BRUTE_FORCE_MAX_N = 6


def _weights(w):
    """(f1, f2) as complex numbers from BellWeights or a plain pair."""
    if hasattr(w, "f1"):
        return complex(w.f1), complex(w.f2)
    f1, f2 = w
    return complex(f1), complex(f2)


def _pattern(w, N):
    c = getattr(w, "c", None)
    if c is None:
        return alternating_pattern(N)
    c = tuple(int(x) for x in c)
    if len(c) != N or any(x not in (1, -1) for x in c):
        raise ValueError(f"conjugation pattern must have {N} entries of +-1, got {c}")
    return c


def alternating_pattern(N: int) -> tuple[int, ...]:
    """c_l = +1 on odd sites and -1 on even sites (1-based)."""
    return tuple(1 if l % 2 == 0 else -1 for l in range(N))


def party_factor(alpha0: int, alpha1: int, c: int, n: int) -> complex:
    return sum(OMEGA ** (c * n * (a + m / 2)) for m, a in enumerate((alpha0, alpha1)))


def party_factor_exact(alpha0: int, alpha1: int, c: int, n: int) -> tuple[float, int]:
    """z^(n) as (magnitude, phase index k) with z = magnitude * exp(i pi k / 6).

    Each term omega^(c n (a + m/2)) has phase (pi/6) * (4 c n a + 2 c n m), so
    the pair sums to 2 cos(pi d / 12) exp(i pi (a + d/2) / 6) with d even.
    """
    a = 4 * c * n * alpha0
    b = 4 * c * n * alpha1 + 2 * c * n
    d = b - a
    mag = 2 * np.cos(np.pi * d / 12)
    k = a + d // 2
    if abs(mag) < 1e-12:
        return 0.0, 0
    if mag < 0:
        mag, k = -mag, k + 6
    return float(mag), k % 12


@lru_cache(maxsize=None)
def reachable_products(c: tuple[int, ...]) -> np.ndarray:
    """Reachable (k2, p1, p2) triples of the strategy products for pattern ``c``.

    k2 counts parties with |z^(2)| = 2 (then Z_1 = 0 and p1 is set to 0).
    Returned as an (M, 3) int array.
    """
    table = {}
    for sign in set(c):
        opts = set()
        for a0, a1 in product(range(3), repeat=2):
            m1, k1 = party_factor_exact(a0, a1, sign, 1)
            m2, k2 = party_factor_exact(a0, a1, sign, 2)
            zero = m1 == 0.0
            assert np.isclose(m1, 0.0 if zero else np.sqrt(3))
            assert np.isclose(m2, 2.0 if zero else 1.0)
            opts.add((int(zero), 0 if zero else k1, k2))
        table[sign] = sorted(opts)

    states = {(0, 0, 0)}
    for sign in c:
        nxt = set()
        for k2, p1, p2 in states:
            for zero, q1, q2 in table[sign]:
                kk = k2 + zero
                nxt.add((kk, 0 if kk else (p1 + q1) % 12, (p2 + q2) % 12))
        states = nxt
    return np.array(sorted(states), dtype=np.int64)


def lr_bound_dp(N: int, w) -> float:
    """Exact local-realistic bound via the factorized dynamic program."""
    c = _pattern(w, N)
    f1, f2 = _weights(w)
    S = reachable_products(c)
    k2, p1, p2 = S[:, 0], S[:, 1], S[:, 2]
    Z1 = np.where(k2 == 0, np.sqrt(3.0) ** N, 0.0) * np.exp(1j * np.pi * p1 / 6)
    Z2 = 2.0 ** k2 * np.exp(1j * np.pi * p2 / 6)
    return float(np.max(2 * (f1 * Z1 + f2 * Z2).real))


@lru_cache(maxsize=8)
def _strategy_sums(c: tuple[int, ...]) -> tuple[np.ndarray, np.ndarray]:
    """Per-strategy sum over settings of exp(i (Theta_n - theta_n)), n = 1, 2.

    Strategies enumerate all 9^N assignments; the setting sum runs over all
    2^N choices without using the factorization.
    """
    N = len(c)
    cv = np.array(c)
    pairs = np.array(list(product(range(3), repeat=2)))  # (9, 2)
    strat = np.array(list(product(range(9), repeat=N)), dtype=np.int8)  # (9^N, N)
    alphas = pairs[strat]  # (9^N, N, 2)
    S1 = np.zeros(len(strat), dtype=complex)
    S2 = np.zeros(len(strat), dtype=complex)
    for m in product(range(2), repeat=N):
        m = np.array(m)
        a = alphas[:, np.arange(N), m]  # outcomes chosen under setting vector m
        ca = a @ cv
        cm = cv @ m
        S1 += np.exp(1j * (2 * np.pi / 3 * ca + np.pi / 3 * cm))
        S2 += np.exp(1j * (4 * np.pi / 3 * ca + 2 * np.pi / 3 * cm))
    return S1, S2


def lr_bound_bruteforce(N: int, w) -> float:
    """Bound by exhaustive enumeration of deterministic strategies (N <= 6)."""
    if N > BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute force limited to N <= {BRUTE_FORCE_MAX_N}, got {N}")
    c = _pattern(w, N)
    f1, f2 = _weights(w)
    S1, S2 = _strategy_sums(c)
    return float(np.max(2 * (f1 * S1 + f2 * S2).real))
