import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import pure_states, random_pure, seeds
from locc_ensembles.errors import InputError, ShapeError
from locc_ensembles.gallery import make_mixed, make_state
from locc_ensembles.states import (
    DensityMatrix,
    PureState,
    PureStateEnsemble,
    bell_state,
    density_from_ensemble,
    equal_up_to_phase,
    mix_ensemble,
    product_state,
    random_support_state,
    schmidt_decompose,
    schmidt_rank,
    schmidt_vector,
    spectral_ensemble,
)
from locc_ensembles.tensor_core import random_unitary


def svd_schmidt(psi):
    """Independent oracle: squared singular values of the amplitude matrix."""
    return np.sort(np.linalg.svd(psi.coefficient_matrix(), compute_uv=False) ** 2)


def test_pure_state_validation():
    with pytest.raises(InputError):
        PureState(2, 2, [1, 1, 0, 0])
    with pytest.raises(ShapeError):
        PureState(2, 2, [1, 0, 0])
    with pytest.raises(InputError):
        PureState.from_vector(2, 1, [0, 0])
    psi = PureState(1, 2, [1, 0])
    with pytest.raises(ValueError):
        psi.amplitudes[0] = 0


def test_density_validation():
    with pytest.raises(InputError):
        DensityMatrix(1, 2, np.diag([0.7, 0.7]))
    with pytest.raises(InputError):
        DensityMatrix(1, 2, np.diag([1.5, -0.5]))
    with pytest.raises(InputError):
        DensityMatrix(1, 2, np.array([[0.5, 0.5], [0, 0.5]]))
    DensityMatrix(1, 2, np.diag([1.0, 0.0]))


def test_schmidt_bell_and_product():
    d = schmidt_decompose(bell_state())
    np.testing.assert_allclose(d.coefficients, [2**-0.5] * 2, atol=1e-15)
    d = schmidt_decompose(product_state([1, 0], [0, 1]))
    np.testing.assert_allclose(d.coefficients, [0, 1], atol=1e-15)
    assert schmidt_rank(product_state([1, 0], [0, 1])) == 1


def test_schmidt_gallery_phi():
    v = schmidt_vector(make_state("phi", 4))
    assert len(v) == 7
    np.testing.assert_allclose(v, [0, 0, 0, 1 / 32, 1 / 4, 1 / 4, 15 / 32], atol=1e-14)
    assert schmidt_rank(make_state("phi", 5)) == 5


def test_schmidt_rank_of_superposition():
    # c1 φ1 + c2 φ2 with both nonzero: the supports overlap only on labels
    # 0, 1, 2, giving rank 2 + 2(r - 2) = 6 for r = 4.
    phi1, phi2 = make_state("phi1", 4), make_state("phi2", 4)
    psi = PureState.from_vector(7, 7, 0.6 * phi1.amplitudes + 0.8j * phi2.amplitudes)
    assert schmidt_rank(psi) == 6
    assert np.count_nonzero(svd_schmidt(psi) > 1e-10) == 6


@given(pure_states(max_dim=12))
def test_schmidt_reconstruction_and_oracle(psi):
    d = schmidt_decompose(psi)
    assert np.all(np.diff(d.coefficients) >= 0)
    assert len(d.coefficients) == min(psi.dims)
    assert abs(np.sum(d.vector) - 1) <= 1e-9
    np.testing.assert_allclose(d.vector, svd_schmidt(psi), atol=1e-12)
    rec = d.reconstruct()
    assert abs(abs(np.vdot(rec, psi.amplitudes)) - 1) <= 1e-8
    assert np.linalg.norm(rec - psi.amplitudes) <= 1e-8
    for basis in (d.basisA, d.basisB):
        np.testing.assert_allclose(basis.conj().T @ basis, np.eye(basis.shape[1]), atol=1e-10)


@given(seeds, st.integers(1, 4), st.integers(1, 4), st.integers(1, 3))
def test_schmidt_low_rank_states(seed, dA, dB, k):
    rng = np.random.default_rng(seed)
    k = min(k, dA, dB)
    a = np.linalg.qr(rng.standard_normal((dA, dA)))[0][:, :k]
    b = np.linalg.qr(rng.standard_normal((dB, dB)))[0][:, :k]
    c = rng.dirichlet(np.ones(k))
    psi = PureState.from_vector(dA, dB, ((a * np.sqrt(c)) @ b.T).reshape(-1))
    d = schmidt_decompose(psi)
    assert schmidt_rank(psi) == k
    assert np.linalg.norm(d.reconstruct() - psi.amplitudes) <= 1e-8
    np.testing.assert_allclose(d.basisB.conj().T @ d.basisB, np.eye(min(dA, dB)), atol=1e-10)


@given(pure_states())
def test_reductions_share_spectrum(psi):
    rho = psi.density()
    wa = np.sort(np.linalg.eigvalsh(rho.reduced("A")))
    wb = np.sort(np.linalg.eigvalsh(rho.reduced("B")))
    n = min(psi.dims)
    np.testing.assert_allclose(wa[-n:], wb[-n:], atol=1e-10)


def test_density_from_ensemble():
    psi = bell_state()
    np.testing.assert_allclose(density_from_ensemble(PureStateEnsemble.of((1.0, psi))).matrix,
                               psi.projector())
    phi1, phi2 = make_state("phi1", 4), make_state("phi2", 4)
    rho = density_from_ensemble(PureStateEnsemble.of((0.5, phi1), (0.5, phi2)))
    np.testing.assert_allclose(rho.matrix, make_mixed("rho", 4, 0.5).matrix, atol=1e-15)
    with pytest.raises(InputError):
        PureStateEnsemble.of((0.5, phi1), (0.6, phi2))
    with pytest.raises(InputError):
        PureStateEnsemble.of((1.2, phi1), (-0.2, phi2))
    with pytest.raises(ShapeError):
        PureStateEnsemble.of((0.5, phi1), (0.5, bell_state()))


def test_spectral_ensemble_pure():
    psi = random_pure(np.random.default_rng(1), 2, 3)
    ens = spectral_ensemble(psi.density())
    assert len(ens) == 1
    assert ens.probabilities[0] == pytest.approx(1, abs=1e-12)
    assert equal_up_to_phase(ens.states[0], psi)


def test_spectral_ensemble_gallery_rho():
    rho = make_mixed("rho", 4, 0.3)
    ens = spectral_ensemble(rho)
    np.testing.assert_allclose(ens.probabilities, [0.7, 0.3], atol=1e-12)
    assert equal_up_to_phase(ens.states[0], make_state("phi2", 4))
    assert equal_up_to_phase(ens.states[1], make_state("phi1", 4))
    np.testing.assert_allclose(density_from_ensemble(ens).matrix, rho.matrix, atol=1e-8)


def test_spectral_ensemble_maximally_mixed():
    ens = spectral_ensemble(DensityMatrix(2, 2, np.eye(4) / 4))
    np.testing.assert_allclose(ens.probabilities, [0.25] * 4)


@given(seeds, st.integers(1, 4), st.integers(1, 3), st.integers(1, 3))
def test_spectral_ensemble_reconstructs(seed, k, dA, dB):
    rng = np.random.default_rng(seed)
    states = [random_pure(rng, dA, dB) for _ in range(k)]
    ens = PureStateEnsemble(tuple(rng.dirichlet(np.ones(k))), tuple(states))
    rho = density_from_ensemble(ens)
    eig_ens = spectral_ensemble(rho)
    assert list(eig_ens.probabilities) == sorted(eig_ens.probabilities, reverse=True)
    assert all(p > 1e-10 for p in eig_ens.probabilities)
    np.testing.assert_allclose(density_from_ensemble(eig_ens).matrix, rho.matrix, atol=1e-8)


def test_mix_identity_and_hadamard():
    phi1, phi2 = make_state("phi1", 4), make_state("phi2", 4)
    ens = PureStateEnsemble.of((0.5, phi1), (0.5, phi2))
    same = mix_ensemble(ens, np.eye(2))
    np.testing.assert_allclose(same.probabilities, ens.probabilities, atol=1e-15)
    assert all(equal_up_to_phase(a, b) for a, b in zip(same.states, ens.states))

    h = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    mixed = mix_ensemble(ens, h)
    np.testing.assert_allclose(mixed.probabilities, [0.5, 0.5], atol=1e-15)
    plus = PureState.from_vector(7, 7, phi1.amplitudes + phi2.amplitudes)
    minus = PureState.from_vector(7, 7, phi1.amplitudes - phi2.amplitudes)
    assert equal_up_to_phase(mixed.states[0], plus)
    assert equal_up_to_phase(mixed.states[1], minus)
    np.testing.assert_allclose(density_from_ensemble(mixed).matrix,
                               density_from_ensemble(ens).matrix, atol=1e-15)


def test_mix_errors():
    ens = PureStateEnsemble.of((0.5, make_state("phi1", 3)), (0.5, make_state("phi2", 3)))
    with pytest.raises(InputError):
        mix_ensemble(ens, np.diag([1, 2]))
    with pytest.raises(ShapeError):
        mix_ensemble(ens, np.eye(3))


def test_mix_drops_vanishing_elements():
    psi = bell_state()
    ens = PureStateEnsemble.of((1.0, psi), (0.0, psi))
    out = mix_ensemble(ens, np.eye(2))
    assert len(out) == 1


@given(seeds, st.integers(1, 8))
def test_mix_preserves_density(seed, k):
    rng = np.random.default_rng(seed)
    states = tuple(random_pure(rng, 2, 3) for _ in range(k))
    ens = PureStateEnsemble(tuple(rng.dirichlet(np.ones(k))), states)
    out = mix_ensemble(ens, random_unitary(k, seed))
    assert np.linalg.norm(density_from_ensemble(out).matrix
                          - density_from_ensemble(ens).matrix) <= 1e-9


def test_random_support_state():
    psi = random_pure(np.random.default_rng(2), 3, 3)
    single = PureStateEnsemble.of((1.0, psi))
    assert equal_up_to_phase(random_support_state(single, 5), psi)
    ens = PureStateEnsemble.of((0.5, make_state("phi1", 4)), (0.5, make_state("phi2", 4)))
    a, b = random_support_state(ens, 11), random_support_state(ens, 11)
    np.testing.assert_array_equal(a.amplitudes, b.amplitudes)


def test_support_states_have_rank_at_least_r():
    ens = PureStateEnsemble.of((0.5, make_state("phi1", 4)), (0.5, make_state("phi2", 4)))
    ranks = [schmidt_rank(random_support_state(ens, s)) for s in range(1000)]
    assert min(ranks) >= 4
