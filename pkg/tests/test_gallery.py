import json

import numpy as np
import pytest

from locc_ensembles.errors import InputError
from locc_ensembles.gallery import (
    MU,
    NU,
    LabelMap,
    defining_ensemble,
    make_mixed,
    make_state,
    reproduce,
    sample_decompositions,
    verify_theorem1,
    verify_theorem2,
    verify_theorem3,
)
from locc_ensembles.majorization import nielsen_convertible
from locc_ensembles.states import density_from_ensemble, schmidt_rank, schmidt_vector

RS = range(3, 9)


def test_constants():
    assert MU == 15 / 16
    assert NU == pytest.approx(1 / np.sqrt(15), abs=1e-16)
    assert MU * NU**2 == pytest.approx(1 / 16, abs=1e-16)


def test_label_map():
    lm = LabelMap(4)
    assert lm.dim_rho == 7 and lm.dim_sigma == 9
    assert [lm.rho_index(x) for x in lm.rho_labels()] == list(range(7))
    assert lm.rho_index(-3) == 5 and lm.rho_index(-4) == 6
    with pytest.raises(InputError):
        lm.rho_index(-2)
    with pytest.raises(InputError):
        lm.sigma_index(9)
    with pytest.raises(InputError):
        LabelMap(2)


@pytest.mark.parametrize("r", RS)
def test_norms_and_ranks(r):
    expected_dims = {"phi1": 2 * r - 1, "phi2": 2 * r - 1, "phi": 2 * r - 1, "phi_r": 2 * r + 1}
    for kind, d in expected_dims.items():
        psi = make_state(kind, r)
        assert psi.dims == (d, d)
        assert np.linalg.norm(psi.amplitudes) == pytest.approx(1, abs=1e-14)
        assert schmidt_rank(psi) == r


@pytest.mark.parametrize("r", RS)
def test_phi1_phi2_orthogonal(r):
    assert abs(np.vdot(make_state("phi1", r).amplitudes, make_state("phi2", r).amplitudes)) < 1e-15


@pytest.mark.parametrize("r", RS)
def test_schmidt_vector_multisets(r):
    flat = np.full(r, 1 / r)
    np.testing.assert_allclose(schmidt_vector(make_state("phi1", r))[-r:], flat, atol=1e-14)
    np.testing.assert_allclose(schmidt_vector(make_state("phi2", r))[-r:], flat, atol=1e-14)
    top = sorted([2 * MU * NU**2 / r, 2 * MU / r] + [1 / r] * (r - 2))
    lam = schmidt_vector(make_state("phi", r))
    np.testing.assert_allclose(lam[-r:], top, atol=1e-14)
    np.testing.assert_allclose(lam[:-r], 0, atol=1e-14)
    np.testing.assert_allclose(schmidt_vector(make_state("phi_r", r))[-r:], top, atol=1e-14)


def test_phi_r4_values():
    lam = schmidt_vector(make_state("phi", 4))
    np.testing.assert_allclose(lam[-4:], [1 / 32, 1 / 4, 1 / 4, 15 / 32], atol=1e-14)


def test_phi_spaces():
    a = make_state("phi", 4, "rho")
    b = make_state("phi", 4, "sigma")
    assert a.dims == (7, 7) and b.dims == (9, 9)
    np.testing.assert_allclose(schmidt_vector(b)[-4:], schmidt_vector(a)[-4:], atol=1e-15)
    np.testing.assert_allclose(schmidt_vector(make_state("phi_r", 4))[-4:],
                               schmidt_vector(b)[-4:], atol=1e-15)
    with pytest.raises(InputError):
        make_state("phi", 4, "tau")
    with pytest.raises(InputError):
        make_state("psi", 4)
    with pytest.raises(InputError):
        make_state("phi", 2)


@pytest.mark.parametrize("r", [3, 4, 6])
def test_phi1_converts_to_phi(r):
    assert nielsen_convertible(make_state("phi1", r), make_state("phi", r))
    assert nielsen_convertible(make_state("phi2", r), make_state("phi", r))


@pytest.mark.parametrize("w", [0.0, 0.25, 1.0])
def test_make_mixed(w):
    rho = make_mixed("rho", 4, w)
    assert rho.dims == (7, 7)
    assert np.trace(rho.matrix).real == pytest.approx(1, abs=1e-14)
    np.testing.assert_allclose(rho.matrix, density_from_ensemble(defining_ensemble("rho", 4, w)).matrix)
    sigma = make_mixed("sigma", 4, w)
    assert sigma.dims == (9, 9)
    assert np.trace(sigma.matrix).real == pytest.approx(1, abs=1e-14)


def test_make_mixed_errors():
    for w in (-0.1, 1.2):
        with pytest.raises(InputError):
            make_mixed("rho", 4, w)
    with pytest.raises(InputError):
        make_mixed("tau", 4)


def test_sample_decompositions_reproduce_rho():
    base = defining_ensemble("rho", 4, 0.3)
    rho = density_from_ensemble(base).matrix
    seen = [e for e, _ in sample_decompositions(base, 20, 5)]
    again = [e for e, _ in sample_decompositions(base, 20, 5)]
    for a, b in zip(seen, again):
        np.testing.assert_array_equal(a.probabilities, b.probabilities)
    assert {len(e) for e in seen} - {2} != set()
    for ens in seen:
        assert np.linalg.norm(density_from_ensemble(ens).matrix - rho) <= 1e-10


def test_theorem1_default_passes():
    rep = verify_theorem1(4, 0.5, 200, 42)
    assert rep.overall, rep.render()
    assert len(rep.checks) == 5
    assert rep.checks[0].witnesses[0] <= 1e-10 * 7


def test_theorem1_pure_endpoint():
    assert verify_theorem1(3, 0.0, 50, 1).overall


def test_theorem1_literal_fails():
    rep = verify_theorem1(4, encoding="literal", samples=5)
    assert not rep.overall
    assert not rep.checks[0].passed and not rep.checks[1].passed


def test_theorem1_errors():
    with pytest.raises(InputError):
        verify_theorem1(samples=0)
    with pytest.raises(InputError):
        verify_theorem1(r=2)
    with pytest.raises(InputError):
        verify_theorem1(p=1.5)


@pytest.mark.parametrize("args", [(4, 0.5, 0.5, 200, 7), (5, 0.9, 0.1, 100, 3)])
def test_theorem2_passes(args):
    rep = verify_theorem2(*args)
    assert rep.overall, rep.render()
    assert len(rep.checks) == 4


def test_theorem2_errors():
    with pytest.raises(InputError):
        verify_theorem2(q=1.2)
    with pytest.raises(InputError):
        verify_theorem2(samples=-1)


@pytest.mark.parametrize("r", [3, 4, 7])
def test_theorem3_passes(r):
    rep = verify_theorem3(r)
    assert rep.overall, rep.render()
    assert len(rep.checks) == 3


def test_theorem3_errors():
    with pytest.raises(InputError):
        verify_theorem3(2)


def test_report_structure():
    rep = verify_theorem3(4)
    d = rep.to_dict()
    assert set(d) == {"params", "checks", "overall"}
    assert d["overall"] is True
    for c in d["checks"]:
        assert set(c) == {"name", "pass", "witnesses"}
        assert isinstance(c["pass"], bool)
        assert all(isinstance(w, float) for w in c["witnesses"])
    json.dumps(d)
    text = rep.render()
    assert text.splitlines()[0] == "Theorem 3: PASS"


def test_reproduce_runs_all_three():
    reps = reproduce(r=3, samples=10)
    assert [r.title for r in reps] == ["Theorem 1", "Theorem 2", "Theorem 3"]
    assert all(r.overall for r in reps)
