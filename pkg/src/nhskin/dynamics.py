"""Time evolution under the effective first-order equation i dpsi/dt = H psi.

Propagation uses the biorthogonal spectral decomposition when the
eigenvector basis is well conditioned and falls back to an adaptive
explicit integrator otherwise.  The uniform damping gamma is a scalar
shift of the Hamiltonian and is factored out as an exact exp(-gamma*t)
envelope, which keeps the damping-factorization identity exact.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.integrate
import scipy.signal

from .errors import HorizonTruncationError, ValidationError
from .model import BC, LatticeModel, real_space_hamiltonian
from .spectral import NEAR_EXCEPTIONAL_COND, Spectrum, eig_biorthogonal

#: amplitude magnitude beyond which evolution is truncated
OVERFLOW_GUARD = 1e120


@dataclass(frozen=True)
class WaveField:
    """Complex amplitudes on a time grid; rows are times, columns sites."""

    times: np.ndarray
    amplitudes: np.ndarray
    model: LatticeModel

    def __post_init__(self):
        if self.amplitudes.shape != (len(self.times), self.model.n_sites):
            raise ValidationError(
                f"amplitude shape {self.amplitudes.shape} does not match "
                f"{len(self.times)} times x {self.model.n_sites} sites")


@dataclass(frozen=True)
class EnergyTrace:
    times: np.ndarray
    P: np.ndarray


@dataclass(frozen=True)
class Spectrogram:
    times: np.ndarray
    frequencies: np.ndarray
    magnitudes: np.ndarray


def poke_state(model: LatticeModel, site: int) -> np.ndarray:
    """Unit amplitude on one site (1-based global index), zero elsewhere."""
    if not 1 <= site <= model.n_sites:
        raise ValidationError(
            f"site {site} outside 1..{model.n_sites}")
    psi = np.zeros(model.n_sites, dtype=complex)
    psi[site - 1] = 1.0
    return psi


def default_time_grid(horizon: float = 20.0, fs: float = 500.0) -> np.ndarray:
    return np.arange(0.0, horizon + 0.5 / fs, 1.0 / fs)


def evolve(model: LatticeModel, psi0: np.ndarray, t_grid: np.ndarray,
           method: str = "auto") -> WaveField:
    """Propagate ``psi0`` over ``t_grid`` under the open-chain Hamiltonian.

    ``method``: "auto" (spectral unless near-exceptional), "spectral", or
    "integrator".  Raises :class:`HorizonTruncationError` when amplified
    growth leaves the representable range, naming the last valid time.
    """
    psi0 = np.asarray(psi0, dtype=complex)
    t = np.asarray(t_grid, dtype=float)
    if psi0.shape != (model.n_sites,):
        raise ValidationError(f"psi0 must have length {model.n_sites}")
    if len(t) == 0 or t[0] != 0.0 or np.any(np.diff(t) <= 0):
        raise ValidationError("t_grid must be strictly increasing from 0")
    m0 = model.with_(gamma=0.0, bc=BC.OBC)
    H = real_space_hamiltonian(m0)
    if method == "auto":
        spec = eig_biorthogonal(H, source="OBC")
        use_spectral = not spec.near_exceptional
    elif method == "spectral":
        spec = eig_biorthogonal(H, source="OBC")
        use_spectral = True
    elif method == "integrator":
        spec = None
        use_spectral = False
    else:
        raise ValidationError(f"unknown method {method!r}")

    if use_spectral:
        amps = _evolve_spectral(spec, psi0, t)
    else:
        amps = _evolve_integrator(H, psi0, t)
    amps = amps * np.exp(-model.gamma * t)[:, None]
    amps[0] = psi0    # the identity propagator is exact at t = 0
    return WaveField(t, amps, model)


def _evolve_spectral(spec: Spectrum, psi0: np.ndarray, t: np.ndarray) -> np.ndarray:
    d0 = spec.left_vectors.conj().T @ psi0
    # exponent guard: the largest mode magnitude bounds the field
    log_peak = spec.eigenvalues.imag[None, :] * t[:, None] + \
        np.log(np.maximum(np.abs(d0), 1e-300))[None, :]
    over = np.max(log_peak, axis=1) > np.log(OVERFLOW_GUARD)
    if np.any(over):
        bad = int(np.argmax(over))
        raise HorizonTruncationError(float(t[bad - 1]) if bad else 0.0)
    phases = np.exp(-1j * spec.eigenvalues[None, :] * t[:, None])
    return (phases * d0[None, :]) @ spec.right_vectors.T


def _evolve_integrator(H: np.ndarray, psi0: np.ndarray, t: np.ndarray) -> np.ndarray:
    def rhs(_, y):
        return -1j * (H @ y)

    sol = scipy.integrate.solve_ivp(
        rhs, (t[0], t[-1]), psi0, t_eval=t, method="DOP853",
        rtol=1e-9, atol=1e-12 * max(np.linalg.norm(psi0), 1.0))
    if not sol.success:
        last = float(sol.t[-1]) if len(sol.t) else 0.0
        raise HorizonTruncationError(last)
    amps = sol.y.T.astype(complex)
    if not np.all(np.isfinite(amps)):
        finite = np.all(np.isfinite(amps), axis=1)
        last = float(t[np.nonzero(finite)[0][-1]]) if np.any(finite) else 0.0
        raise HorizonTruncationError(last)
    return amps


def energy_trace(field: WaveField) -> EnergyTrace:
    """Total wave energy P(t) = sum over sites of |psi|^2."""
    return EnergyTrace(field.times, np.sum(np.abs(field.amplitudes) ** 2, axis=1))


def packet_center(field: WaveField) -> np.ndarray:
    """Energy-weighted mean unit-cell coordinate x_c(t)."""
    s = field.model.sites_per_cell
    w = np.abs(field.amplitudes) ** 2
    cells = w.reshape(len(field.times), field.model.n_cells, s).sum(axis=2)
    x = np.arange(1, field.model.n_cells + 1)
    P = cells.sum(axis=1)
    return (cells @ x) / np.where(P > 0, P, 1.0)


def synthesize_signal(field: WaveField, omega0: float | None = None) -> np.ndarray:
    """Per-site real signal theta_n(t) = Re[psi_n(t) exp(-i omega0 t)]."""
    if omega0 is None:
        omega0 = field.model.omega0
    if omega0 < 0:
        raise ValidationError("omega0 must be >= 0")
    carrier = np.exp(-1j * omega0 * field.times)[:, None]
    return np.real(field.amplitudes * carrier)


def stft(signal: np.ndarray, fs: float = 500.0, window_len: int = 1000,
         hop: int = 50) -> Spectrogram:
    """Magnitude spectrogram of a real signal with a Hann window.

    Defaults correspond to a 2 s window and 0.1 s hop at 500 Hz sampling.
    """
    signal = np.asarray(signal, dtype=float)
    if signal.ndim != 1:
        raise ValidationError("signal must be one-dimensional")
    if window_len > len(signal):
        raise ValidationError(
            f"window ({window_len}) longer than signal ({len(signal)})")
    if hop < 1:
        raise ValidationError("hop must be >= 1 sample")
    win = scipy.signal.windows.hann(window_len, sym=False)
    sft = scipy.signal.ShortTimeFFT(win, hop=hop, fs=fs, scale_to="magnitude")
    S = sft.stft(signal)
    return Spectrogram(sft.t(len(signal)), sft.f, np.abs(S))
