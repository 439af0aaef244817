"""Layered circuits on a qubit grid and the random-circuit generator."""
from dataclasses import dataclass, field

import numpy as np

from .. import rng
from ..core import MAX_BITS
from . import gates as G


@dataclass(frozen=True, eq=False)
class Gate:
    qubits: tuple
    matrix: np.ndarray = field(repr=False)
    name: str | None = None

    def __post_init__(self):
        qubits = tuple(int(q) for q in self.qubits)
        m = np.array(self.matrix, dtype=complex)
        dim = 1 << len(qubits)
        if len(qubits) not in (1, 2) or m.shape != (dim, dim):
            raise ValueError(f"gate on {qubits} needs a {dim}x{dim} matrix")
        m.setflags(write=False)
        object.__setattr__(self, "qubits", qubits)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def named(cls, name, *qubits):
        return cls(qubits, G.lookup(name, len(qubits)), name.lower())

    def __eq__(self, other):
        if not isinstance(other, Gate):
            return NotImplemented
        return (
            self.qubits == other.qubits
            and self.name == other.name
            and np.array_equal(self.matrix, other.matrix)
        )

    __hash__ = None


class LayerConflictError(ValueError):
    """Two gates of one layer share a qubit, or a pair is not grid-adjacent."""


@dataclass(frozen=True)
class Layer:
    """One round: disjoint 1-qubit gates (``single``) or 2-qubit gates (``two``)."""

    kind: str
    gates: tuple = ()

    def __post_init__(self):
        if self.kind not in ("single", "two"):
            raise ValueError(f"layer kind must be 'single' or 'two', not {self.kind!r}")
        object.__setattr__(self, "gates", tuple(self.gates))
        arity = 1 if self.kind == "single" else 2
        seen = set()
        for g in self.gates:
            if len(g.qubits) != arity:
                raise ValueError(f"{self.kind} layer holds a {len(g.qubits)}-qubit gate")
            for q in g.qubits:
                if q in seen:
                    raise LayerConflictError(f"qubit {q} used twice in one layer")
                seen.add(q)

    @property
    def qubits(self):
        return tuple(q for g in self.gates for q in g.qubits)

    @property
    def diagonal(self):
        return all(G.is_diagonal(g.matrix) for g in self.gates)


def grid_adjacent(a, b, cols):
    ra, ca = divmod(a, cols)
    rb, cb = divmod(b, cols)
    return abs(ra - rb) + abs(ca - cb) == 1


@dataclass(frozen=True)
class QuantumCircuit:
    """Qubit ``q`` sits at grid position ``divmod(q, cols)``."""

    rows: int
    cols: int
    layers: tuple = ()
    gateset: dict | None = field(default=None, compare=False)
    seed: int | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1 or self.rows * self.cols > MAX_BITS:
            raise ValueError(f"grid {self.rows}x{self.cols} exceeds {MAX_BITS} qubits")
        object.__setattr__(self, "layers", tuple(self.layers))
        n = self.n
        for li, layer in enumerate(self.layers):
            for g in layer.gates:
                if any(not 0 <= q < n for q in g.qubits):
                    raise ValueError(f"layer {li}: qubit index out of range in {g.qubits}")
                if len(g.qubits) == 2 and not grid_adjacent(*g.qubits, self.cols):
                    raise LayerConflictError(f"layer {li}: qubits {g.qubits} are not grid neighbours")
                G.check_unitary(g.matrix, f"layer {li} gate on {g.qubits}")

    @property
    def n(self):
        return self.rows * self.cols

    @property
    def depth(self):
        return len(self.layers)

    def gate_count(self):
        return sum(len(layer.gates) for layer in self.layers)


@dataclass(frozen=True)
class GateSetConfig:
    """Gate choices for :func:`generate_random_circuit`.

    Entries are gate names or explicit unitary matrices.
    """

    single: tuple = ("sqrt_x", "sqrt_y", "sqrt_w")
    two: object = "cz"

    def resolve_single(self):
        return [
            (s.lower(), G.lookup(s, 1)) if isinstance(s, str) else (None, np.asarray(s, complex))
            for s in self.single
        ]

    def resolve_two(self):
        if isinstance(self.two, str):
            return self.two.lower(), G.lookup(self.two, 2)
        return None, np.asarray(self.two, complex)

    def describe(self):
        def label(x):
            return x if isinstance(x, str) else "matrix"

        return {"single": [label(s) for s in self.single], "two": label(self.two)}


def coupling_pairs(rows, cols, direction):
    """Disjoint neighbour pairs for one of four grid coupling patterns."""
    pairs = []
    if direction in (0, 1):
        for r in range(rows):
            for c in range(direction, cols - 1, 2):
                pairs.append((r * cols + c, r * cols + c + 1))
    else:
        for r in range(direction - 2, rows - 1, 2):
            for c in range(cols):
                pairs.append((r * cols + c, (r + 1) * cols + c))
    return pairs


def generate_random_circuit(rows, cols, depth, gateset=None, seed=0):
    """Alternating random 1-qubit layers and 2-qubit coupling layers.

    Layer ``k`` is a single-qubit layer for even ``k``; the two-qubit layers
    cycle through the four coupling patterns. A qubit never receives the
    same single-qubit gate twice in a row.
    """
    if rows < 1 or cols < 1 or rows * cols > MAX_BITS:
        raise ValueError(f"grid {rows}x{cols} exceeds {MAX_BITS} qubits")
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    gateset = gateset or GateSetConfig()
    singles = gateset.resolve_single()
    two_name, two_matrix = gateset.resolve_two()
    n = rows * cols
    g = rng.generator(seed, "qsim.circuit")
    last = np.full(n, -1)
    layers = []
    for k in range(depth):
        if k % 2 == 0:
            gs = []
            for q in range(n):
                choices = [i for i in range(len(singles)) if i != last[q]] or [0]
                pick = choices[int(g.integers(len(choices)))]
                last[q] = pick
                name, m = singles[pick]
                gs.append(Gate((q,), m, name))
            layers.append(Layer("single", gs))
        else:
            direction = (k // 2) % 4
            pairs = coupling_pairs(rows, cols, direction)
            layers.append(Layer("two", [Gate(p, two_matrix, two_name) for p in pairs]))
    return QuantumCircuit(rows, cols, layers, gateset=gateset.describe(), seed=seed)
