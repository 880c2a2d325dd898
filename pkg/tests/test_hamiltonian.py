import numpy as np
import pytest

from oracles import dense_hamiltonian, sector_by_enumeration
from spin1bell.hamiltonian import HamiltonianParams, apply, build_hamiltonian, magnetization_operator
from spin1bell.hilbert import enumerate_sector


def _H(N, Jz, D, periodic=True):
    basis = enumerate_sector(N, 0)
    return build_hamiltonian(HamiltonianParams(Jz, D, N, periodic), basis), basis


def test_neel_diagonal_element():
    Jz, D = 2.7, 1.3
    H, basis = _H(4, Jz, D)
    i = basis.index((0, 2, 0, 2))
    assert H.toarray()[i, i] == pytest.approx(-4 * Jz + 4 * D, abs=1e-14)


def test_single_hop_element():
    H, basis = _H(4, 3.0, 5.0)
    assert H.toarray()[basis.index((0, 2, 1, 1)), basis.index((1, 1, 1, 1))] == pytest.approx(1.0, abs=1e-14)


@pytest.mark.parametrize("N", [2, 3, 4, 5, 6])
@pytest.mark.parametrize("Jz, D", [(1.0, 0.0), (12.0, 20.0), (-0.5, 2.2)])
@pytest.mark.parametrize("periodic", [True, False])
def test_matches_dense_kronecker_assembly(N, Jz, D, periodic):
    H, basis = _H(N, Jz, D, periodic)
    full = dense_hamiltonian(HamiltonianParams(Jz, D, N, periodic))
    idx = sector_by_enumeration(N, 0)
    np.testing.assert_allclose(H.toarray(), full[np.ix_(idx, idx)], atol=1e-13)


@pytest.mark.parametrize("N", [3, 4, 5])
def test_dense_hamiltonian_conserves_magnetization(N):
    full = dense_hamiltonian(HamiltonianParams(1.7, 0.4, N))
    m = magnetization_operator(N)
    rows, cols = np.nonzero(np.abs(full) > 1e-14)
    assert np.all(m[rows] == m[cols])


def test_exactly_symmetric():
    H, _ = _H(8, 6.0, 5.5)
    M = H.matrix
    assert (M != M.T).nnz == 0


def test_apply_unit_vector_and_symmetry():
    H, basis = _H(6, 2.5, 1.0)
    dense = H.toarray()
    for i in (0, 17, basis.dim - 1):
        e = np.zeros(basis.dim)
        e[i] = 1
        np.testing.assert_array_equal(apply(H, e), dense[:, i])
    rng = np.random.default_rng(3)
    v, w = rng.standard_normal((2, basis.dim))
    assert w @ apply(H, v) == pytest.approx(apply(H, w) @ v, rel=1e-13)
    with pytest.raises(ValueError):
        apply(H, np.ones(basis.dim + 1))


def test_size_mismatch():
    with pytest.raises(ValueError):
        build_hamiltonian(HamiltonianParams(1.0, 1.0, 4), enumerate_sector(6, 0))
