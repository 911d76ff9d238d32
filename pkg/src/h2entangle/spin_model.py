"""Two-qubit XY/Ising Hamiltonian in a transverse field, in units of the field B.

    H/B = -(lam/2)(1+g) s1 x s1 - (lam/2)(1-g) s2 x s2 - (s3 x s0 + s0 x s3)

with ``lam = J/B``. In the basis |00>,|01>,|10>,|11> the matrix has diagonal
(-2, 0, 0, 2), coupling ``-g*lam`` between |00> and |11> and ``-lam`` between
|01> and |10>.
"""
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import qlinalg
from .errors import LambdaZero
from .qlinalg import SIGMA_0, SIGMA_1, SIGMA_2, SIGMA_3

BOUNDARY_TOL = 1e-12


class Region(Enum):
    REGION_I = "I"
    REGION_II = "II"
    BOUNDARY = "boundary"


@dataclass(frozen=True)
class ModelParams:
    g: float = 1.0
    lam: float = 0.0
    b_field: float = 0.5

    def __post_init__(self):
        if not 0.0 <= self.g <= 1.0:
            raise ValueError(f"anisotropy g must lie in [0, 1], got {self.g}")
        if self.lam < 0.0:
            raise ValueError(f"coupling lambda must be >= 0, got {self.lam}")
        if self.b_field <= 0.0:
            raise ValueError(f"field B must be > 0, got {self.b_field}")

    @property
    def exchange(self):
        """Exchange constant J = lambda * B in the units of ``b_field``."""
        return self.lam * self.b_field


@dataclass(frozen=True)
class GroundState:
    energy: float
    state: np.ndarray
    region: Region


def region_bound(g):
    """Coupling at which the two lowest levels cross; ``inf`` for the Ising case."""
    if g >= 1.0:
        return np.inf
    return 2.0 / np.sqrt(1.0 - g * g)


def build_hamiltonian(p):
    lam, g = p.lam, p.g
    coupling = (-0.5 * lam * (1.0 + g) * qlinalg.kron(SIGMA_1, SIGMA_1)
                - 0.5 * lam * (1.0 - g) * qlinalg.kron(SIGMA_2, SIGMA_2))
    field = -(qlinalg.kron(SIGMA_3, SIGMA_0) + qlinalg.kron(SIGMA_0, SIGMA_3))
    h = coupling + field
    # the Pauli algebra is exact on these entries; drop +-0j noise
    return np.where(np.abs(h) < 1e-15, 0.0, h).astype(complex)


def classify_region(p):
    if p.lam == 0.0:
        raise LambdaZero("lambda = 0: decoupled spins in a product state")
    bound = region_bound(p.g)
    if np.isfinite(bound) and abs(p.lam - bound) <= BOUNDARY_TOL * max(1.0, bound):
        return Region.BOUNDARY
    return Region.REGION_I if p.lam < bound else Region.REGION_II


def ground_energy(g, lam):
    """Lowest eigenvalue in units of B, vectorized over ``lam``."""
    lam = np.asarray(lam, dtype=float)
    return -np.maximum(np.sqrt(4.0 + (g * lam) ** 2), lam)


def ground_state_closed(p):
    """Closed-form ground state. At the level crossing the Region I state is returned."""
    region = classify_region(p)
    g, lam = p.g, p.lam
    if region is Region.REGION_II:
        psi = np.array([0.0, 1.0, 1.0, 0.0], dtype=complex) / np.sqrt(2.0)
        return GroundState(-lam, psi, region)
    root = np.sqrt(g * g * lam * lam + 4.0)
    gl = g * lam
    if gl == 0.0:
        psi = np.array([1.0, 0.0, 0.0, 0.0], dtype=complex)
    else:
        # {(root + 2)/(g lam), 0, 0, 1} rescaled by g lam to avoid the 1/(g lam) blow-up
        psi = np.array([root + 2.0, 0.0, 0.0, gl], dtype=complex)
        psi /= np.linalg.norm(psi)
    return GroundState(-root, psi, region)


def ground_state_numeric(p):
    """Ground state from diagonalizing the Hamiltonian (eigenvector phase is arbitrary)."""
    dec = qlinalg.eigh(build_hamiltonian(p))
    return dec.eigenvalues[0], dec.eigenvectors[:, 0]
