"""Entanglement versus correlation energy in a two-qubit model of H2."""
from .deviation import MeasureKind, alpha_min, analyze, correlation_energy, minimize_residual, residual
from .errors import H2EntangleError
from .hydrogen import equilibrium_lengths, j_max_location, j_of_r
from .measures import concurrence, von_neumann_entropy
from .spin_model import ModelParams, Region, build_hamiltonian, classify_region, ground_state_closed

__version__ = "0.1.0"
