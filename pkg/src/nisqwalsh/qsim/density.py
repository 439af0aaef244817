"""Exact noisy simulation on the density matrix (small registers only)."""
from dataclasses import dataclass, field

import numpy as np

from .. import kernels
from ..core import OutcomeDistribution
from ..noise import DistributionNoise, apply_bitflip_noise
from . import engine

MAX_DENSITY_QUBITS = 10
TRACE_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    n: int
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        dim = 1 << self.n
        if m.shape != (dim, dim):
            raise ValueError(f"density matrix must be {dim}x{dim}")
        if np.abs(m - m.conj().T).max() > TRACE_TOL:
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(m).real - 1.0) > TRACE_TOL:
            raise ValueError("density matrix trace is not 1")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def diagonal(self):
        return np.diag(self.matrix).real.copy()


def _apply_op(op, vec, n):
    # vec[r * 2**n + c] = rho[r, c]; row copy of qubit q is bit q + n
    if op.kind == "diag":
        vec *= np.outer(op.diag, op.diag.conj()).ravel()
    elif op.kind == "1q":
        if op.qubits.shape[0]:
            qubits = np.concatenate([op.qubits + n, op.qubits])
            mats = np.concatenate([op.mats, op.mats.conj()])
            kernels.apply_1q_layer(vec, qubits, mats)
    elif op.qubits.shape[0]:
        pairs = np.concatenate([op.qubits + n, op.qubits])
        mats = np.concatenate([op.mats, op.mats.conj()])
        kernels.apply_2q_layer(vec, pairs, mats)


def _rate(op, noise):
    return noise.r1 if op.kind == "1q" else noise.r2


def evolve_density(circuit, noise):
    """Final density matrix, depolarizing every participating qubit after each layer."""
    n = circuit.n
    if n > MAX_DENSITY_QUBITS:
        raise ValueError(
            f"density-matrix backend is limited to {MAX_DENSITY_QUBITS} qubits; "
            "use sample_trajectories for larger circuits"
        )
    dim = 1 << n
    vec = np.zeros(dim * dim, dtype=complex)
    vec[0] = 1.0
    diag_stride = dim + 1
    for k, op in enumerate(engine.lower(circuit)):
        _apply_op(op, vec, n)
        rate = _rate(op, noise)
        if rate > 0:
            for q in np.unique(op.qubits):
                kernels.depolarize_pair(vec, int(q) + n, int(q), rate)
        trace = vec[::diag_stride].sum().real
        if abs(trace - 1.0) > TRACE_TOL:
            raise ArithmeticError(f"trace drifted to {trace!r} after layer {k}")
    return DensityMatrix(n, vec.reshape(dim, dim))


def run_density_matrix(circuit, noise):
    rho = evolve_density(circuit, noise)
    p = OutcomeDistribution.normalized(circuit.n, rho.diagonal())
    if noise.eps_readout > 0:
        p = apply_bitflip_noise(p, DistributionNoise(noise.eps_readout))
    return p
