import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nhskin import (Family, ValidationError, eig_biorthogonal, make_model,
                    obc_spectrum, pair_with_negated_conjugate, pbc_spectrum,
                    real_space_hamiltonian, spectral_radius)
from nhskin.spectral import multiset_distance

hopping = st.floats(min_value=0.1, max_value=20.0,
                    allow_nan=False, allow_infinity=False)


def _biorthogonality_residual(spec):
    G = spec.left_vectors.conj().T @ spec.right_vectors
    return np.max(np.abs(G - np.eye(spec.dim)))


def test_rejects_nonsquare():
    with pytest.raises(ValidationError):
        eig_biorthogonal(np.zeros((3, 4)))


def test_eigenvalues_sorted(model_a):
    spec = obc_spectrum(model_a)
    w = spec.eigenvalues
    key = list(zip(w.real, w.imag))
    assert key == sorted(key)


def test_right_vectors_are_eigenvectors(model_a):
    H = real_space_hamiltonian(model_a)
    spec = eig_biorthogonal(H)
    res = H @ spec.right_vectors - spec.right_vectors * spec.eigenvalues
    assert np.max(np.abs(res)) < 1e-10 * spectral_radius(spec)


def test_left_vectors_are_left_eigenvectors(model_a):
    H = real_space_hamiltonian(model_a)
    spec = eig_biorthogonal(H)
    res = spec.left_vectors.conj().T @ H - \
        spec.eigenvalues[:, None] * spec.left_vectors.conj().T
    assert np.max(np.abs(res)) < 1e-8 * spectral_radius(spec)


@given(t1=hopping, t2=hopping, t3=hopping, t4=hopping)
@settings(max_examples=30, deadline=None)
def test_biorthogonality_property(t1, t2, t3, t4):
    m = make_model(Family.GT, t1, t2, t3, t4, n_cells=6)
    spec = obc_spectrum(m)
    assert _biorthogonality_residual(spec) < 1e-8


def test_hatano_nelson_obc_similarity_oracle():
    """The open nonreciprocal single chain is similar to a Hermitian chain:
    its spectrum is 2*sqrt(t1*t2)*cos(n*pi/(L+1)), n = 1..L."""
    t1, t2, L = 1.7, 0.4, 12
    m = make_model(Family.HATANO_NELSON, t1, t2, 1, 1, n_cells=L)
    spec = obc_spectrum(m)
    expected = np.sort(2 * np.sqrt(t1 * t2) * np.cos(np.arange(1, L + 1) * np.pi / (L + 1)))
    assert np.max(np.abs(spec.eigenvalues.real - expected)) < 1e-10
    assert np.max(np.abs(spec.eigenvalues.imag)) < 1e-10


def test_pbc_spectrum_matches_real_space(model_b):
    from nhskin import BC
    n_k = model_b.n_cells
    spec = pbc_spectrum(model_b, n_k=n_k)
    brute = np.linalg.eigvals(real_space_hamiltonian(model_b.with_(bc=BC.PBC)))
    assert multiset_distance(spec.eigenvalues, brute) < 1e-9 * np.max(np.abs(brute))


def test_pbc_biorthogonality(model_b):
    spec = pbc_spectrum(model_b, n_k=model_b.n_cells)
    assert _biorthogonality_residual(spec) < 1e-8


def test_uniform_damping_shifts_spectrum(model_a):
    g = model_a.gamma
    w_damped = obc_spectrum(model_a).eigenvalues
    w_free = obc_spectrum(model_a.with_(gamma=0.0)).eigenvalues
    assert multiset_distance(w_damped, w_free - 1j * g) < 1e-10 * np.max(np.abs(w_free))


def test_gt_spectrum_mirror_symmetry(model_a, model_b, model_c):
    for m in (model_a, model_b, model_c):
        w = obc_spectrum(m.with_(gamma=0.0)).eigenvalues
        assert pair_with_negated_conjugate(w, rtol=1e-8)


def test_near_exceptional_flagged():
    H = np.array([[0.0, 1.0], [1e-18, 0.0]])
    with pytest.warns(RuntimeWarning, match="near-exceptional"):
        spec = eig_biorthogonal(H)
    assert spec.near_exceptional
