"""Dissipative ground-state cooling of 1D spin rings with periodically reset
auxiliary qubits, plus thermometry of the stabilized steady state.

The simulator evolves pure statevectors trajectory by trajectory: Trotterized
evolution under the problem Hamiltonian, weakly coupled auxiliary ("shadow")
qubits that are reset every cycle, and stochastic Pauli noise sampled per gate.
Steady-state temperature is estimated three independent ways (energy crossing,
Z-basis distribution fidelity, shadow-qubit excitation statistics).
"""

__version__ = "0.1.0"

from .qstate import PauliString, StateVector, new_basis_state
from .models import (
    CouplingMap,
    HamiltonianSpec,
    build_coupling,
    build_heisenberg,
    build_shadow_hamiltonian,
    build_tfim,
    build_xxz,
    initial_primary_state,
)
from .noise import NoiseModel
from .engine import RqeSchedule, TrajectoryResult, run_trajectory
from .spectra import ThermalEnsemble, diagonalize
from .config import ExperimentConfig, ModelConfig
from .harness import AggregateResult, run_experiment, run_sweep

__all__ = [
    "AggregateResult",
    "CouplingMap",
    "ExperimentConfig",
    "HamiltonianSpec",
    "ModelConfig",
    "NoiseModel",
    "PauliString",
    "RqeSchedule",
    "StateVector",
    "ThermalEnsemble",
    "TrajectoryResult",
    "build_coupling",
    "build_heisenberg",
    "build_shadow_hamiltonian",
    "build_tfim",
    "build_xxz",
    "diagonalize",
    "initial_primary_state",
    "new_basis_state",
    "run_experiment",
    "run_sweep",
    "run_trajectory",
]
