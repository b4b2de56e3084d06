import numpy as np
import pytest

from nhskin import (PATH1, PATH2, Direction, Family, Phase, SymmetryOp,
                    ValidationError, apply_symmetry, classify_phase,
                    default_time_grid, energy_trace, evolve, gbz_compute,
                    growth_rate, hn_direction, laplace_projection, make_model,
                    non_bloch_hamiltonian, obc_decomposition, obc_spectrum,
                    poke_state, scan_phase_diagram, transition_sweep)
from nhskin.dynamics import WaveField
from nhskin.spectral import eig_biorthogonal


@pytest.fixture(scope="module")
def gbz_a(model_a):
    return gbz_compute(model_a.with_(gamma=0.0, n_cells=40))


@pytest.fixture(scope="module")
def field_a(model_a):
    # dynamics on the experiment-sized 10-cell chain
    t = default_time_grid(10.0, fs=50.0)
    return evolve(model_a, poke_state(model_a, 20), t)


def test_projection_peaks_on_synthetic_bloch_state(model_a, gbz_a):
    """A pure beta0^x eigen-profile projects onto its own GBZ point.

    The finite Laplace sum grows like (|beta0|/|beta|)^N for |beta| <
    |beta0|, so the test state is built from the smallest-modulus point,
    where no other point can outgrow it."""
    m = model_a.with_(gamma=0.0, n_cells=40)
    k = int(np.argmin(np.abs(gbz_a.betas)))
    beta0 = gbz_a.betas[k]
    cell = eig_biorthogonal(non_bloch_hamiltonian(m, beta0))
    v = cell.right_vectors[:, 0]
    x = np.arange(1, m.n_cells + 1)
    psi = (beta0 ** x[:, None] * v[None, :]).ravel()
    field = WaveField(np.array([0.0]), psi[None, :], m)
    proj = laplace_projection(field, gbz_a, normalized=True)
    mag = np.max(np.abs(proj.coefficients[0]), axis=1)
    peak_beta = gbz_a.betas[int(np.argmax(mag))]
    assert abs(peak_beta - beta0) < 0.05 * abs(beta0)
    assert mag[k] / np.median(mag) > 10


def test_projection_normalization(field_a, gbz_a):
    proj = laplace_projection(field_a, gbz_a, normalized=True)
    peaks = np.max(np.abs(proj.coefficients), axis=(1, 2))
    assert np.allclose(peaks, 1.0, atol=1e-12)


def test_projection_weight_sits_at_small_beta(field_a, gbz_a):
    """Left-skin dynamics keep the GBZ weight at small modulus.

    The delta poke already enters the finite Laplace sum with a small-beta
    bias, so the robust statement is that the late-time weighted mean
    modulus stays below the unweighted GBZ mean (and inside the BZ)."""
    proj = laplace_projection(field_a, gbz_a, normalized=True)
    mods = np.abs(gbz_a.betas)
    w = proj.band_pair_magnitude()
    mean_mod = (w * mods[None, :]).sum(axis=1) / w.sum(axis=1)
    assert mean_mod[-1] < mods.mean()
    assert mean_mod[-1] < 1.0


def test_projection_model_mismatch(field_a, model_b):
    g = gbz_compute(model_b.with_(gamma=0.0, n_cells=40))
    with pytest.raises(ValidationError):
        laplace_projection(field_a, g)


def test_decomposition_of_single_eigenmode(model_a):
    spec = obc_spectrum(model_a)
    j = 7
    t = np.linspace(0.0, 3.0, 31)
    field = evolve(model_a, spec.right_vectors[:, j], t)
    dec = obc_decomposition(field, spec)
    expected = np.exp(-1j * spec.eigenvalues[j] * t)
    assert np.max(np.abs(dec.coefficients[:, j] - expected)) < 1e-8
    others = np.delete(np.abs(dec.coefficients), j, axis=1)
    assert np.max(others) < 1e-8 * np.max(np.abs(expected))


def test_decomposition_reconstruction_roundtrip(field_a):
    dec = obc_decomposition(field_a)
    recon = dec.reconstruct()
    scale = np.max(np.abs(field_a.amplitudes), axis=1, keepdims=True)
    assert np.max(np.abs(recon - field_a.amplitudes) / scale) < 1e-8


def test_decomposition_modulus_evolution_law(field_a):
    dec = obc_decomposition(field_a)
    w = dec.spectrum.eigenvalues
    t = dec.times
    mag0 = np.abs(dec.coefficients[0])
    keep = mag0 > 1e-6 * mag0.max()
    expected = mag0[None, keep] * np.exp(w.imag[None, keep] * t[:, None])
    got = np.abs(dec.coefficients[:, keep])
    assert np.max(np.abs(got - expected) / np.max(expected)) < 1e-6


def test_classify_fig4_parameter_points(model_a, model_b, model_c):
    assert classify_phase(model_a).label is Phase.A
    assert classify_phase(model_b).label is Phase.B
    assert classify_phase(model_c).label is Phase.C


def test_classify_hermitian_line():
    m = make_model(Family.GT, 1, 2, 3, 3)
    assert classify_phase(m).label is Phase.HERMITIAN_LINE


def test_classify_gamma_invariant(model_a):
    for g in (0.0, 2.8):
        assert classify_phase(model_a.with_(gamma=g)).label is Phase.A


def test_classify_mx_swaps_primed(model_a, model_b, model_c):
    swaps = {Phase.A: Phase.APRIME, Phase.B: Phase.BPRIME, Phase.C: Phase.CPRIME}
    for m in (model_a, model_b, model_c):
        base = classify_phase(m).label
        mirrored = classify_phase(apply_symmetry(m, SymmetryOp.MX)).label
        assert mirrored is swaps[base]


def test_classify_rejects_other_families():
    m = make_model(Family.HATANO_NELSON, 1, 2, 1, 1)
    with pytest.raises(ValidationError):
        classify_phase(m)


def test_hn_direction_rule():
    assert hn_direction(2.0, 1.0) is Direction.LEFT
    assert hn_direction(1.0, 2.0) is Direction.RIGHT
    assert hn_direction(1.0, 1.0) is Direction.NONE


def test_scan_small_grid_symmetry():
    d = scan_phase_diagram(1, 2, (1.0, 5.0), (1.0, 5.0), resolution=5, n_cells=10)
    swaps = {Phase.A: Phase.APRIME, Phase.APRIME: Phase.A,
             Phase.B: Phase.BPRIME, Phase.BPRIME: Phase.B,
             Phase.C: Phase.CPRIME, Phase.CPRIME: Phase.C,
             Phase.HERMITIAN_LINE: Phase.HERMITIAN_LINE,
             Phase.BOUNDARY: Phase.BOUNDARY}
    for i4 in range(5):
        for i3 in range(5):
            assert d.labels[i4, i3].label is swaps[d.labels[i3, i4].label]


def test_scan_threads_deterministic():
    a = scan_phase_diagram(1, 2, (1.0, 5.0), (1.0, 5.0), resolution=4, n_cells=8)
    b = scan_phase_diagram(1, 2, (1.0, 5.0), (1.0, 5.0), resolution=4, n_cells=8,
                           threads=4)
    assert np.array_equal(a.im_magnitude, b.im_magnitude)
    assert all(x.label is y.label for x, y in
               zip(a.labels.ravel(), b.labels.ravel()))


def test_paths_share_origin():
    assert PATH1.hoppings(0.0) == (4.0, 1.0)
    assert PATH2.hoppings(0.0) == (4.0, 1.0)
    t = default_time_grid(5.0, fs=100.0)
    s1 = transition_sweep(PATH1, np.array([0.0, 0.5]), t_grid=t)
    s2 = transition_sweep(PATH2, np.array([0.0, 0.5]), t_grid=t)
    assert np.array_equal(s1.traces[0].P, s2.traces[0].P)


def test_path_domain_validation():
    with pytest.raises(ValidationError):
        PATH1.model_at(PATH1.m_max + 1)


def test_sweep_growth_rate_tracks_spectrum():
    ms = np.linspace(0.0, 1.0, 5)
    sweep = transition_sweep(PATH1, ms, t_grid=default_time_grid(80.0, fs=50.0))
    for m, lam in zip(ms, sweep.growth_rates):
        target = 2 * obc_spectrum(PATH1.model_at(m)).eigenvalues.imag.max()
        assert lam == pytest.approx(target, rel=0.02)


def test_growth_rate_rejects_bad_window(field_a):
    tr = energy_trace(field_a)
    with pytest.raises(ValidationError):
        growth_rate(tr, fit_fraction=0.0)
