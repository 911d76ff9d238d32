"""Entanglement and purity measures for two-qubit states.

All entropies are in bits.
"""
from dataclasses import dataclass

import numpy as np

from . import qlinalg
from .errors import H2EntangleError, InvalidDensity, WrongRegion
from .qlinalg import SIGMA_2
from .spin_model import ModelParams, Region, classify_region, region_bound

DENSITY_TOL = 1e-10

SPIN_FLIP = qlinalg.kron(SIGMA_2, SIGMA_2)


@dataclass(frozen=True)
class PurityReport:
    trace_rho: float
    trace_rho_sq: float

    @property
    def is_mixed(self):
        return abs(self.trace_rho - self.trace_rho_sq) > DENSITY_TOL


def check_density(rho):
    """Validate a density matrix and return it as a complex array."""
    try:
        rho = qlinalg.as_matrix(rho)
    except ValueError as exc:
        raise InvalidDensity(str(exc)) from None
    if not qlinalg.is_hermitian(rho, DENSITY_TOL):
        raise InvalidDensity("density matrix is not Hermitian")
    tr = np.trace(rho)
    if abs(tr - 1.0) > DENSITY_TOL:
        raise InvalidDensity(f"trace {tr.real:.12g} differs from 1")
    w = qlinalg.eigh(rho).eigenvalues
    if w[0] < -DENSITY_TOL:
        raise InvalidDensity(f"negative eigenvalue {w[0]:.3e}")
    return rho


def binary_entropy(p):
    """h(p) = -p log2 p - (1-p) log2 (1-p), vectorized, with 0 log 0 = 0."""
    p = np.asarray(p, dtype=float)
    out = np.zeros_like(p)
    for x in (p, 1.0 - p):
        mask = x > 0.0
        out[mask] -= x[mask] * np.log2(x[mask])
    return out if out.ndim else float(out)


def von_neumann_entropy(rho):
    rho = check_density(rho)
    w = np.clip(qlinalg.eigh(rho).eigenvalues, 0.0, None)
    w = w[w > 0.0]
    s = float(-np.sum(w * np.log2(w)))
    return min(max(s, 0.0), np.log2(rho.shape[0]))


def _require_region_one(g, lam):
    if lam == 0.0:
        return
    region = classify_region(ModelParams(g=g, lam=lam))
    if region is Region.REGION_II:
        raise WrongRegion(f"(g={g}, lambda={lam}) lies in Region II")


def entropy_region_I_closed(g, lam):
    """Reduced-state entropy of the Region I ground state.

    The one-qubit populations are 1/2 +- 1/sqrt(g^2 lam^2 + 4).
    """
    _require_region_one(g, lam)
    return binary_entropy(0.5 - 1.0 / np.sqrt(g * g * lam * lam + 4.0))


def concurrence_region_I_closed(g, lam):
    _require_region_one(g, lam)
    gl = g * lam
    return gl / np.sqrt(gl * gl + 4.0)


def ground_state_entropy(g, lam):
    """Entropy of the exact ground state for any ``lam >= 0`` (vectorized)."""
    lam = np.asarray(lam, dtype=float)
    s = binary_entropy(0.5 - 1.0 / np.sqrt((g * lam) ** 2 + 4.0))
    return np.where(lam > region_bound(g), 1.0, s)


def ground_state_concurrence(g, lam):
    lam = np.asarray(lam, dtype=float)
    c = g * lam / np.sqrt((g * lam) ** 2 + 4.0)
    return np.where(lam > region_bound(g), 1.0, c)


def spin_flip(rho):
    """rho~ = (s_y x s_y) rho* (s_y x s_y), conjugation in the computational basis."""
    return SPIN_FLIP @ np.conj(rho) @ SPIN_FLIP


def concurrence(rho):
    """Wootters concurrence of a two-qubit density matrix."""
    rho = check_density(rho)
    if rho.shape != (4, 4):
        raise InvalidDensity(f"concurrence needs a 4x4 matrix, got {rho.shape}")
    try:
        root = qlinalg.mat_sqrt(rho)
        r = qlinalg.mat_sqrt(root @ spin_flip(rho) @ root)
    except H2EntangleError as exc:
        raise InvalidDensity(f"R-matrix construction failed: {exc}") from None
    nu = np.sort(qlinalg.psd_eigenvalues(0.5 * (r + r.conj().T)))[::-1]
    return float(min(max(0.0, nu[0] - nu[1] - nu[2] - nu[3]), 1.0))


def purity(rho):
    rho = qlinalg.as_matrix(rho)
    return PurityReport(float(np.trace(rho).real), float(np.trace(rho @ rho).real))
