from .circuit import Gate, GateSetConfig, Layer, LayerConflictError, QuantumCircuit, coupling_pairs, generate_random_circuit
from .density import DensityMatrix, MAX_DENSITY_QUBITS, evolve_density, run_density_matrix
from .gates import NonUnitaryGateError
from .statevector import StateVector, born_probabilities, ideal_distribution, run_statevector, sample_ideal
from .trajectories import MAX_TRAJECTORY_QUBITS, sample_trajectories

__all__ = [
    "DensityMatrix",
    "Gate",
    "GateSetConfig",
    "Layer",
    "LayerConflictError",
    "MAX_DENSITY_QUBITS",
    "MAX_TRAJECTORY_QUBITS",
    "NonUnitaryGateError",
    "QuantumCircuit",
    "StateVector",
    "born_probabilities",
    "coupling_pairs",
    "evolve_density",
    "generate_random_circuit",
    "ideal_distribution",
    "run_density_matrix",
    "run_statevector",
    "sample_ideal",
    "sample_trajectories",
]
