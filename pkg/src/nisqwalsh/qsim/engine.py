"""Circuit lowering and in-place layer application shared by all backends."""
from dataclasses import dataclass

import numpy as np

from .. import kernels


@dataclass(frozen=True)
class Op:
    kind: str  # "1q", "2q" or "diag"
    qubits: np.ndarray
    mats: np.ndarray | None = None
    diag: np.ndarray | None = None


def layer_diagonal(layer, n):
    idx = np.arange(1 << n)
    d = np.ones(1 << n, dtype=complex)
    for g in layer.gates:
        entries = np.diag(g.matrix)
        if len(g.qubits) == 1:
            d *= entries[(idx >> g.qubits[0]) & 1]
        else:
            a, b = g.qubits
            d *= entries[2 * ((idx >> a) & 1) + ((idx >> b) & 1)]
    return d


def lower(circuit):
    """One :class:`Op` per layer. Diagonal two-qubit layers become a phase vector."""
    n = circuit.n
    ops = []
    for layer in circuit.layers:
        qubits = np.array(layer.qubits, dtype=np.int64)
        if layer.kind == "two" and layer.diagonal:
            ops.append(Op("diag", qubits, diag=layer_diagonal(layer, n)))
        elif layer.kind == "single":
            mats = np.array([g.matrix for g in layer.gates], dtype=complex).reshape(-1, 2, 2)
            ops.append(Op("1q", qubits, mats))
        else:
            pairs = np.array([g.qubits for g in layer.gates], dtype=np.int64).reshape(-1, 2)
            mats = np.array([g.matrix for g in layer.gates], dtype=complex).reshape(-1, 4, 4)
            ops.append(Op("2q", pairs, mats))
    return ops


def apply(op, state):
    if op.kind == "diag":
        state *= op.diag
    elif op.kind == "1q":
        if op.qubits.shape[0]:
            kernels.apply_1q_layer(state, op.qubits, op.mats)
    elif op.qubits.shape[0]:
        kernels.apply_2q_layer(state, op.qubits, op.mats)


def zero_state(n):
    psi = np.zeros(1 << n, dtype=complex)
    psi[0] = 1.0
    return psi
