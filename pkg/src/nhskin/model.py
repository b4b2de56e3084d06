"""Lattice models and Hamiltonian builders.

The main model is a 1D nonreciprocal double chain with four sites per unit
cell.  Horizontal (along-chain) hoppings t1, t2 are reciprocal; the vertical
inter-chain hoppings t3, t4 are directed, which is the only source of
non-Hermiticity.  Two reference models, a single-band nonreciprocal chain
(Hatano-Nelson) and a two-band nonreciprocal SSH chain, share the same
parameter container.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .errors import ValidationError


class Family(str, Enum):
    GT = "GT"
    HATANO_NELSON = "HatanoNelson"
    NH_SSH = "NHSSH"


class BC(str, Enum):
    OBC = "OBC"
    PBC = "PBC"


class SymmetryOp(str, Enum):
    MX = "Mx"
    MY = "My"
    P = "P"
    G = "G"


SITES_PER_CELL = {Family.GT: 4, Family.HATANO_NELSON: 1, Family.NH_SSH: 2}


@dataclass(frozen=True)
class LatticeModel:
    """Immutable parameter set for one lattice realization.

    All hopping rates are in rad/s and strictly positive.  ``gamma`` is a
    uniform damping rate entering as -i*gamma on every onsite term of the
    real-space Hamiltonian.  ``omega0`` is the carrier angular frequency and
    is applied only at signal synthesis, never inside the Hamiltonian.
    """

    family: Family
    t1: float
    t2: float
    t3: float
    t4: float
    omega0: float
    gamma: float
    n_cells: int
    bc: BC
    nhssh_delta: float | None = None

    def __post_init__(self):
        for name in ("t1", "t2", "t3", "t4"):
            v = getattr(self, name)
            if not np.isfinite(v) or v <= 0:
                raise ValidationError(f"{name} must be finite and > 0, got {v}")
        if not np.isfinite(self.omega0) or self.omega0 < 0:
            raise ValidationError(f"omega0 must be >= 0, got {self.omega0}")
        if not np.isfinite(self.gamma) or self.gamma < 0:
            raise ValidationError(f"gamma must be >= 0, got {self.gamma}")
        if int(self.n_cells) != self.n_cells or self.n_cells < 1:
            raise ValidationError(f"n_cells must be a positive integer, got {self.n_cells}")

    @property
    def sites_per_cell(self) -> int:
        return SITES_PER_CELL[self.family]

    @property
    def n_sites(self) -> int:
        return self.sites_per_cell * self.n_cells

    @property
    def delta(self) -> float:
        """Nonreciprocity of the NH-SSH intra-cell bond (defaults to min(t1,t2)/2)."""
        if self.nhssh_delta is not None:
            return self.nhssh_delta
        return 0.5 * min(self.t1, self.t2)

    @property
    def is_hermitian(self) -> bool:
        if self.family is Family.GT:
            return self.t3 == self.t4
        if self.family is Family.HATANO_NELSON:
            return self.t1 == self.t2
        return self.delta == 0.0

    def with_(self, **kw) -> "LatticeModel":
        return replace(self, **kw)


def make_model(family, t1, t2, t3, t4, omega0=0.0, gamma=0.0, n_cells=10,
               bc=BC.OBC, nhssh_delta=None) -> LatticeModel:
    """Validate and build a :class:`LatticeModel`."""
    return LatticeModel(Family(family), float(t1), float(t2), float(t3), float(t4),
                        float(omega0), float(gamma), int(n_cells), BC(bc),
                        nhssh_delta)


def bloch_hamiltonian(model: LatticeModel, k: float) -> np.ndarray:
    """Cell-periodic Bloch Hamiltonian at real wavenumber ``k``.

    4x4 for the double chain, 1x1 for Hatano-Nelson, 2x2 for NH-SSH.
    The uniform damping gamma is not included here.
    """
    return non_bloch_hamiltonian(model, np.exp(1j * float(k)))


def non_bloch_hamiltonian(model: LatticeModel, beta: complex) -> np.ndarray:
    """Cell Hamiltonian continued to a complex generalized wavevector ``beta``.

    ``beta = exp(i k)`` with real ``k`` recovers the Bloch Hamiltonian.
    """
    beta = complex(beta)
    if beta == 0:
        raise ValidationError("beta must be nonzero (1/beta pole)")
    t1, t2, t3, t4 = model.t1, model.t2, model.t3, model.t4
    if model.family is Family.GT:
        return np.array([
            [0, t4, t2 + t1 / beta, 0],
            [t3, 0, 0, t1 + t2 / beta],
            [t2 + t1 * beta, 0, 0, t3],
            [0, t1 + t2 * beta, t4, 0],
        ], dtype=complex)
    if model.family is Family.HATANO_NELSON:
        # t1 carries amplitude to the left, t2 to the right
        return np.array([[t1 * beta + t2 / beta]], dtype=complex)
    d = model.delta
    return np.array([
        [0, t1 + d + t2 / beta],
        [t1 - d + t2 * beta, 0],
    ], dtype=complex)


def _hopping_blocks(model: LatticeModel):
    """Split H(k) = H0 + Hp * e^{ik} + Hm * e^{-ik} into its three blocks.

    Hp couples cell x to cell x+1 (amplitude for motion to the left), Hm
    couples cell x to cell x-1.  Recovered exactly from three k samples.
    """
    a = bloch_hamiltonian(model, 0.0)
    b = bloch_hamiltonian(model, np.pi / 2)
    c = bloch_hamiltonian(model, -np.pi / 2)
    h0 = (b + c) / 2
    diff = (b - c) / (2j)       # Hp - Hm
    tot = a - h0                # Hp + Hm
    hp = (tot + diff) / 2
    hm = (tot - diff) / 2
    return h0, hp, hm


def real_space_hamiltonian(model: LatticeModel) -> np.ndarray:
    """Full dense Hamiltonian on ``n_cells`` cells with the model's boundary
    condition.  The uniform damping appears as -i*gamma on the diagonal;
    omega0 is excluded (it only rotates the global phase)."""
    h0, hp, hm = _hopping_blocks(model)
    s = model.sites_per_cell
    n = model.n_cells
    H = np.zeros((s * n, s * n), dtype=complex)
    for x in range(n):
        H[x * s:(x + 1) * s, x * s:(x + 1) * s] = h0
    for x in range(n - 1):
        H[x * s:(x + 1) * s, (x + 1) * s:(x + 2) * s] = hp
        H[(x + 1) * s:(x + 2) * s, x * s:(x + 1) * s] = hm
    if model.bc is BC.PBC and n > 1:
        H[(n - 1) * s:n * s, 0:s] += hp
        H[0:s, (n - 1) * s:n * s] += hm
    elif model.bc is BC.PBC and n == 1:
        H += hp + hm
    H -= 1j * model.gamma * np.eye(s * n)
    return H


_SWAPS = {
    SymmetryOp.MX: (("t3", "t4"),),
    SymmetryOp.MY: (("t3", "t4"), ("t1", "t2")),
    SymmetryOp.P: (("t1", "t2"),),
    SymmetryOp.G: (),
}


def apply_symmetry(model: LatticeModel, op: SymmetryOp) -> LatticeModel:
    """Apply a spatial transform to the parameters.

    Mx swaps t3<->t4, My swaps both pairs, P swaps t1<->t2, and the glide G
    leaves every parameter invariant.
    """
    op = SymmetryOp(op)
    kw = {}
    for a, b in _SWAPS[op]:
        kw[a] = getattr(model, b)
        kw[b] = getattr(model, a)
    return model.with_(**kw) if kw else model


# Named damping presets from the mechanical realization: intrinsic oscillator
# loss and the attenuated range (in Hz, converted to rad/s where needed).
DAMPING_PRESETS = {
    "intrinsic": 2.64,                 # rad/s, about 0.42 Hz
    "attenuated_min": 2 * np.pi * 0.49,
    "attenuated_max": 2 * np.pi * 1.06,
}
