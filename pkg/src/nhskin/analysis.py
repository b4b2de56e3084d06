"""Wavefield decompositions, phase classification, and parameter sweeps.

Two complementary decompositions of the dynamics are provided: a Laplace
transform onto the generalized Brillouin zone (which exposes which complex
wavevectors carry the field) and a biorthogonal projection onto the
open-chain eigenmodes (which exposes which eigenfrequencies dominate).
On top of these sit the dynamic-phase classifier, the (t3, t4) phase
diagram scan, and energy sweeps along parameter paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .dynamics import EnergyTrace, WaveField, default_time_grid, energy_trace, evolve, poke_state
from .errors import ValidationError
from .gbz import (GBZ, Direction, GapReport, GbzMethod, SkinDirection,
                  gap_report, gbz_compute, skin_direction)
from .model import BC, Family, LatticeModel, make_model, non_bloch_hamiltonian
from .spectral import Spectrum, eig_biorthogonal, obc_spectrum, spectral_radius


class Phase(str, Enum):
    A = "A"
    APRIME = "Aprime"
    B = "B"
    BPRIME = "Bprime"
    C = "C"
    CPRIME = "Cprime"
    HERMITIAN_LINE = "HermitianLine"
    BOUNDARY = "Boundary"


_PRIMED_SWAP = {
    Phase.A: Phase.APRIME, Phase.APRIME: Phase.A,
    Phase.B: Phase.BPRIME, Phase.BPRIME: Phase.B,
    Phase.C: Phase.CPRIME, Phase.CPRIME: Phase.C,
    Phase.HERMITIAN_LINE: Phase.HERMITIAN_LINE,
    Phase.BOUNDARY: Phase.BOUNDARY,
}


@dataclass(frozen=True)
class PhaseLabel:
    """Classification of one parameter point with its evidence."""

    label: Phase
    max_abs_im: float
    line_gap: float
    direction: SkinDirection | None
    diagnostic: str = ""


@dataclass(frozen=True)
class GbzProjection:
    """Laplace-transform coefficients C[time, gbz_point, mode]."""

    times: np.ndarray
    coefficients: np.ndarray
    normalized: bool
    gbz: GBZ

    def band_pair_magnitude(self) -> np.ndarray:
        """One magnitude per GBZ point: root-sum-square of |C| over the two
        modes forming the symmetry pair {E, -conj(E)} of the point's energy."""
        T, P, s = self.coefficients.shape
        out = np.zeros((T, P))
        for p in range(P):
            E = self.gbz.energies[p]
            w = np.linalg.eigvals(
                non_bloch_hamiltonian(self.gbz.model, self.gbz.betas[p]))
            j1 = int(np.argmin(np.abs(w - E)))
            j2 = int(np.argmin(np.abs(w - (-np.conj(E)))))
            idx = [j1, j2] if j1 != j2 else [j1]
            out[:, p] = np.sqrt(
                np.sum(np.abs(self.coefficients[:, p, idx]) ** 2, axis=1))
        return out


@dataclass(frozen=True)
class ModeDecomposition:
    """Open-chain eigenmode coefficients D[time, mode]."""

    times: np.ndarray
    coefficients: np.ndarray
    spectrum: Spectrum

    def reconstruct(self) -> np.ndarray:
        return self.coefficients @ self.spectrum.right_vectors.T


@dataclass(frozen=True)
class PhaseDiagram:
    t3_grid: np.ndarray
    t4_grid: np.ndarray
    labels: np.ndarray          # object array of PhaseLabel, shape (n4, n3)
    im_magnitude: np.ndarray    # max |Im E_OBC|, shape (n4, n3)


@dataclass(frozen=True)
class PathSpec:
    """Straight-line path (t3(m), t4(m)) = intercept + slope * m."""

    t1: float
    t2: float
    t3_intercept: float
    t3_slope: float
    t4_intercept: float
    t4_slope: float
    m_max: float

    def hoppings(self, m: float) -> tuple[float, float]:
        return (self.t3_intercept + self.t3_slope * m,
                self.t4_intercept + self.t4_slope * m)

    def model_at(self, m: float, n_cells: int = 10, gamma: float = 0.0) -> LatticeModel:
        if not 0 <= m <= self.m_max:
            raise ValidationError(f"m = {m} outside [0, {self.m_max}]")
        t3, t4 = self.hoppings(m)
        return make_model(Family.GT, self.t1, self.t2, t3, t4,
                          gamma=gamma, n_cells=n_cells)


#: paths through the (t3, t4) plane at t1 = 1, t2 = 2 used in the
#: transition study; both start from the gapless point (t3, t4) = (4, 1)
PATH1 = PathSpec(1.0, 2.0, 4.0, -1.0, 1.0, +1.0, m_max=1.45)
PATH2 = PathSpec(1.0, 2.0, 4.0, 0.0, 1.0, +1.0, m_max=2.9)


@dataclass(frozen=True)
class TransitionSweep:
    path: PathSpec
    m_values: np.ndarray
    traces: list
    growth_rates: np.ndarray


def laplace_projection(field: WaveField, gbz: GBZ, normalized: bool = True) -> GbzProjection:
    """Project a wavefield onto the GBZ via a discrete Laplace transform.

    For each beta on the GBZ, Psi_a(t, beta) = sum_{x=1..N} psi_a(t, x) beta^{-x}
    over unit cells x, component-wise in the sublattice index a; the
    coefficients are C_j(t, beta) = <phi_L,j(beta) | Psi(t, beta)> with the
    left eigenvectors of the cell Hamiltonian at beta.  With ``normalized``
    the maximum |C| over (point, mode) is scaled to 1 at every instant.
    """
    if field.model.with_(bc=BC.OBC, gamma=0.0) != gbz.model.with_(
            bc=BC.OBC, gamma=0.0, n_cells=field.model.n_cells):
        raise ValidationError("field and GBZ come from different models")
    s = field.model.sites_per_cell
    N = field.model.n_cells
    psi = field.amplitudes.reshape(len(field.times), N, s)
    x = np.arange(1, N + 1)
    C = np.empty((len(field.times), len(gbz.betas), s), dtype=complex)
    for p, beta in enumerate(gbz.betas):
        weights = beta ** (-x.astype(float))
        Psi = np.tensordot(psi, weights, axes=([1], [0]))   # (T, s)
        cell = eig_biorthogonal(non_bloch_hamiltonian(gbz.model, beta))
        C[:, p, :] = Psi @ cell.left_vectors.conj()
    if normalized:
        peak = np.max(np.abs(C), axis=(1, 2), keepdims=True)
        C = C / np.where(peak > 0, peak, 1.0)
    return GbzProjection(field.times, C, normalized, gbz)


def obc_decomposition(field: WaveField, spectrum: Spectrum | None = None) -> ModeDecomposition:
    """Biorthogonal coefficients D_j(t) = <phi_L,j | psi(t)> on OBC eigenmodes."""
    if spectrum is None:
        spectrum = obc_spectrum(field.model)
    if spectrum.dim != field.model.n_sites:
        raise ValidationError(
            f"spectrum dimension {spectrum.dim} does not match field "
            f"({field.model.n_sites} sites)")
    D = field.amplitudes @ spectrum.left_vectors.conj()
    return ModeDecomposition(field.times, D, spectrum)


def classify_phase(model: LatticeModel, tol_im: float | None = None,
                   tol_gap: float | None = None, boundary_tol: float = 0.0,
                   gbz_sites: int = 160) -> PhaseLabel:
    """Dynamic-phase label of a double-chain model at zero damping.

    Classification ignores gamma (a uniform damping only shifts the
    spectrum).  C/C': real spectrum; A/A': complex spectrum with a real
    line gap; B/B': complex and gapless; primed means right-directed skin.
    """
    if model.family is not Family.GT:
        raise ValidationError("phase classification is defined for the double chain")
    m0 = model.with_(gamma=0.0)
    if m0.t3 == m0.t4:
        return PhaseLabel(Phase.HERMITIAN_LINE, 0.0, _hermitian_gap(m0), None)
    if abs(m0.t3 - m0.t4) < boundary_tol:
        return PhaseLabel(Phase.BOUNDARY, np.nan, np.nan, None,
                          diagnostic="within boundary_tol of the Hermitian line")
    g = gbz_compute(m0, GbzMethod.OBC_FIT, n_sites=gbz_sites)
    report = gap_report(m0, tol_im, tol_gap, gbz_sites=gbz_sites, gbz=g)
    sd = skin_direction(g)
    if sd.direction is Direction.NONE:
        return PhaseLabel(Phase.BOUNDARY, report.max_abs_im,
                          report.line_gap_width, sd,
                          diagnostic="no skin direction despite non-Hermiticity")
    if report.is_real_spectrum:
        base = Phase.C
    elif report.line_gap_width > 0:
        base = Phase.A
    else:
        base = Phase.B
    if sd.direction is Direction.RIGHT:
        base = _PRIMED_SWAP[base]
    return PhaseLabel(base, report.max_abs_im, report.line_gap_width, sd)


def _hermitian_gap(model: LatticeModel) -> float:
    """Line gap of a Hermitian model from a dense Bloch sweep."""
    from .model import bloch_hamiltonian
    ks = np.linspace(-np.pi, np.pi, 401)
    e0 = min(np.min(np.abs(np.linalg.eigvalsh(bloch_hamiltonian(model, k))))
             for k in ks)
    return 2 * float(e0)


def scan_phase_diagram(t1: float, t2: float, t3_range=(0.2, 6.0),
                       t4_range=(0.2, 6.0), resolution: int = 24,
                       n_cells: int = 25, tol_im: float | None = None,
                       tol_gap: float | None = None,
                       threads: int = 1) -> PhaseDiagram:
    """Classify every point of a (t3, t4) grid.

    Points closer to the Hermitian line than half a grid step are labeled
    Boundary.  Grid points are independent and may be evaluated on a thread
    pool; results are always assembled in (t4, t3) order.
    """
    if resolution < 2:
        raise ValidationError("resolution must be >= 2")
    t3s = np.linspace(*t3_range, resolution)
    t4s = np.linspace(*t4_range, resolution)
    step = max(t3s[1] - t3s[0], t4s[1] - t4s[0])
    labels = np.empty((resolution, resolution), dtype=object)
    im_mag = np.zeros((resolution, resolution))

    def point(i4, i3):
        m = make_model(Family.GT, t1, t2, t3s[i3], t4s[i4], n_cells=n_cells)
        return classify_phase(m, tol_im, tol_gap, boundary_tol=step / 2,
                              gbz_sites=m.n_sites)

    pairs = [(i4, i3) for i4 in range(resolution) for i3 in range(resolution)]
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda p: point(*p), pairs))
    else:
        results = [point(*p) for p in pairs]
    for (i4, i3), lab in zip(pairs, results):
        labels[i4, i3] = lab
        im_mag[i4, i3] = lab.max_abs_im if np.isfinite(lab.max_abs_im) else 0.0
    return PhaseDiagram(t3s, t4s, labels, im_mag)


def hn_direction(t1: float, t2: float) -> Direction:
    """Skin direction of the single-band nonreciprocal chain.

    The GBZ is a circle of radius sqrt(t2/t1) with the convention that t1
    carries amplitude leftward, so t1 > t2 piles states up on the left.
    """
    if t1 > t2:
        return Direction.LEFT
    if t1 < t2:
        return Direction.RIGHT
    return Direction.NONE


def growth_rate(trace: EnergyTrace, fit_fraction: float = 0.25) -> float:
    """Least-squares slope of log P over the last ``fit_fraction`` of time."""
    if not 0 < fit_fraction <= 1:
        raise ValidationError("fit_fraction must be in (0, 1]")
    n = len(trace.times)
    start = int(np.floor(n * (1 - fit_fraction)))
    t = trace.times[start:]
    P = trace.P[start:]
    if np.any(P <= 0):
        raise ValidationError("energy trace vanished inside the fit window")
    return float(np.polyfit(t, np.log(P), 1)[0])


def transition_sweep(path: PathSpec, m_samples, t_grid: np.ndarray | None = None,
                     psi0: np.ndarray | None = None, n_cells: int = 10,
                     gamma: float = 0.0, fit_fraction: float = 0.25) -> TransitionSweep:
    """Evolve the same excitation for each model along a parameter path.

    Returns the energy traces P(t) and the fitted late-time growth rates
    lambda(m) (slope of log P over the last quarter of the horizon).
    """
    if np.isscalar(m_samples):
        if m_samples < 2:
            raise ValidationError("need at least 2 path samples")
        ms = np.linspace(0.0, path.m_max, int(m_samples))
    else:
        ms = np.asarray(m_samples, dtype=float)
    if t_grid is None:
        t_grid = default_time_grid()
    traces = []
    rates = []
    for m in ms:
        model = path.model_at(m, n_cells=n_cells, gamma=gamma)
        p0 = psi0 if psi0 is not None else poke_state(model, model.n_sites // 2)
        tr = energy_trace(evolve(model, p0, t_grid))
        traces.append(tr)
        rates.append(growth_rate(tr, fit_fraction))
    return TransitionSweep(path, ms, traces, np.array(rates))
