import numpy as np
import pytest

from spin1bell.bell import psi_max_state, psi_max_vector
from spin1bell.diagnostics import entanglement_entropy, fidelity, fit_exponential_scaling, schmidt_values
from spin1bell.hilbert import basis_state, enumerate_sector

TABLE1_RATIOS = [(4, 1.950), (6, 2.470), (8, 3.119), (10, 3.973)]


def test_product_state_entropy_zero():
    basis = enumerate_sector(8, 0)
    assert entanglement_entropy(basis_state(basis, (1,) * 8), basis=basis) == 0.0


@pytest.mark.parametrize("N", [4, 6, 8])
def test_ghz_entropy_ln3(N):
    basis = enumerate_sector(N, 0)
    v = psi_max_vector(basis, 1 / np.sqrt(3))
    assert entanglement_entropy(v, basis=basis) == pytest.approx(np.log(3), abs=1e-12)
    assert entanglement_entropy(v, basis=basis, base=3) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("N", [6, 8])
def test_entropy_symmetry_and_bounds(solve, N):
    gs = solve(N, 2.5, 1.0)
    for cut in range(1, N):
        s = entanglement_entropy(gs, cut)
        assert s == pytest.approx(entanglement_entropy(gs, N - cut), abs=1e-10)
        assert -1e-12 <= s <= min(cut, N - cut) * np.log(3) + 1e-12
    assert np.sum(schmidt_values(gs, N // 2) ** 2) == pytest.approx(1.0, abs=1e-12)


def test_bad_cut():
    basis = enumerate_sector(4, 0)
    with pytest.raises(ValueError):
        entanglement_entropy(basis_state(basis, (1,) * 4), cut=4, basis=basis)


def test_fidelity_examples():
    basis = enumerate_sector(6, 0)
    for b in (1 / np.sqrt(3), 0.55, -0.4):
        psi = psi_max_vector(basis, b)
        assert fidelity(psi, psi) == pytest.approx(1.0, abs=1e-14)
        assert fidelity(basis_state(basis, (1,) * 6), psi) == pytest.approx(np.sqrt(1 - 2 * b * b), abs=1e-14)
        assert fidelity(-psi, psi) == fidelity(psi, -psi) == pytest.approx(1.0, abs=1e-14)
    with pytest.raises(ValueError):
        fidelity(np.ones(3), np.ones(4))


def test_fidelity_grows_with_anisotropy_at_criticality(solve):
    basis = enumerate_sector(8, 0)
    ref = psi_max_vector(basis, psi_max_state(8, 0.5502)[0])
    weak = fidelity(solve(8, 6.0, 5.8274), ref)
    strong = fidelity(solve(8, 12.0, 11.9155), ref)
    assert strong > weak
    assert strong > 0.95


def test_fit_exact_exponential():
    fit = fit_exponential_scaling([(N, 2.0**N) for N in (2, 4, 6, 8)])
    assert fit.gamma == pytest.approx(2.0, rel=1e-12)
    assert fit.residual == pytest.approx(0.0, abs=1e-12)
    assert fit.predict(10) == pytest.approx(1024.0, rel=1e-10)


def test_fit_constant():
    assert fit_exponential_scaling([(4, 3.0), (6, 3.0), (8, 3.0)]).gamma == pytest.approx(1.0, abs=1e-12)


def test_fit_table_ratios():
    # oracle: numpy polynomial fit of ln(ratio) against N
    N, r = np.array(TABLE1_RATIOS).T
    slope = np.polyfit(N, np.log(r), 1)[0]
    fit = fit_exponential_scaling(TABLE1_RATIOS)
    assert fit.gamma == pytest.approx(np.exp(slope), rel=1e-12)
    assert fit.gamma == pytest.approx(1.125, abs=0.01)


def test_fit_errors():
    with pytest.raises(ValueError):
        fit_exponential_scaling([(4, 1.0), (6, 2.0)])
    with pytest.raises(ValueError):
        fit_exponential_scaling([(4, 1.0), (6, 0.0), (8, 2.0)])
