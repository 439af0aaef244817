"""Boolean circuits of NOT and AND gates over fixed or random input bits."""
from dataclasses import dataclass

import numpy as np

from . import rng
from .core import BitString, OutcomeDistribution, SampleSet

MAX_EXACT_INPUTS = 20


@dataclass(frozen=True)
class BooleanCircuit:
    """Single-assignment wires: inputs are wires ``0..input_count-1`` and
    gate ``k`` writes wire ``input_count + k``.

    Gates are ``("NOT", a)`` or ``("AND", a, b)``.
    """

    input_count: int
    gates: tuple
    outputs: tuple

    def __post_init__(self):
        if self.input_count < 1:
            raise ValueError("circuit needs at least one input")
        gates = tuple(tuple(g) for g in self.gates)
        for k, g in enumerate(gates):
            wire = self.input_count + k
            op = str(g[0]).upper()
            arity = {"NOT": 1, "AND": 2}.get(op)
            if arity is None:
                raise ValueError(f"gate {k}: unsupported gate {g[0]!r} (only NOT and AND)")
            if len(g) != arity + 1:
                raise ValueError(f"gate {k}: {op} takes {arity} input(s)")
            if any(not 0 <= int(w) < wire for w in g[1:]):
                raise ValueError(f"gate {k}: references a wire not yet defined")
            gates = gates[:k] + ((op,) + tuple(int(w) for w in g[1:]),) + gates[k + 1 :]
        object.__setattr__(self, "gates", gates)
        outputs = tuple(int(w) for w in self.outputs)
        if not outputs:
            raise ValueError("circuit needs at least one output")
        if any(not 0 <= w < self.wire_count for w in outputs):
            raise ValueError("output references an undefined wire")
        object.__setattr__(self, "outputs", outputs)

    @property
    def wire_count(self):
        return self.input_count + len(self.gates)


class CircuitBuilder:
    """Incremental construction; each gate method returns its output wire."""

    def __init__(self, input_count):
        self.input_count = input_count
        self.gates = []

    def NOT(self, a):
        self.gates.append(("NOT", a))
        return self.input_count + len(self.gates) - 1

    def AND(self, a, b):
        self.gates.append(("AND", a, b))
        return self.input_count + len(self.gates) - 1

    def build(self, outputs):
        return BooleanCircuit(self.input_count, tuple(self.gates), tuple(outputs))


@dataclass(frozen=True)
class BitSource:
    """Independent input bits; ``p_one[i]`` is the probability that input ``i`` is 1.

    Fixed bits are the degenerate cases 0.0 and 1.0.
    """

    p_one: tuple

    def __post_init__(self):
        probs = tuple(float(p) for p in self.p_one)
        if any(not 0.0 <= p <= 1.0 for p in probs):
            raise ValueError("input probabilities must lie in [0, 1]")
        object.__setattr__(self, "p_one", probs)

    @classmethod
    def fixed(cls, bits):
        return cls(tuple(float(b) for b in bits))

    @classmethod
    def bernoulli(cls, *probs):
        return cls(probs)

    def __len__(self):
        return len(self.p_one)


def _run(c, inputs):
    """Evaluate on a ``(input_count, batch)`` bool array; returns all wires."""
    wires = list(inputs)
    for g in c.gates:
        if g[0] == "NOT":
            wires.append(~wires[g[1]])
        else:
            wires.append(wires[g[1]] & wires[g[2]])
    return wires


def _pack_outputs(c, wires):
    out = np.zeros(wires[0].shape, dtype=np.int64)
    for i, w in enumerate(c.outputs):
        out |= wires[w].astype(np.int64) << i
    return out


def evaluate(c, inputs):
    """Deterministic gate-by-gate evaluation on one input assignment."""
    if isinstance(inputs, BitString):
        bits = inputs.bits
    else:
        bits = tuple(int(b) for b in inputs)
    if len(bits) != c.input_count:
        raise ValueError(f"expected {c.input_count} input bits, got {len(bits)}")
    values = list(bits)
    for g in c.gates:
        values.append(1 - values[g[1]] if g[0] == "NOT" else values[g[1]] & values[g[2]])
    return BitString.from_bits(values[w] for w in c.outputs)


def _check_source(c, src):
    if len(src) != c.input_count:
        raise ValueError(f"source has {len(src)} bits, circuit has {c.input_count} inputs")


def output_distribution(c, src):
    """Exact output distribution by enumerating all input assignments."""
    _check_source(c, src)
    k = c.input_count
    if k > MAX_EXACT_INPUTS:
        raise ValueError(
            f"exact enumeration is limited to {MAX_EXACT_INPUTS} inputs; use sample_outputs"
        )
    idx = np.arange(1 << k, dtype=np.int64)
    inputs = [((idx >> i) & 1).astype(bool) for i in range(k)]
    weight = np.ones(1 << k)
    for i, p in enumerate(src.p_one):
        weight *= np.where(inputs[i], p, 1.0 - p)
    outs = _pack_outputs(c, _run(c, inputs))
    m = len(c.outputs)
    p = np.bincount(outs, weights=weight, minlength=1 << m)
    return OutcomeDistribution.normalized(m, p)


def sample_outputs(c, src, count, seed):
    """``count`` independent runs of the circuit on freshly drawn inputs."""
    _check_source(c, src)
    if count < 1:
        raise ValueError("count must be at least 1")
    probs = np.array(src.p_one)
    out = np.empty(count, dtype=np.int64)
    for b, start, stop in rng.blocks(count):
        u = rng.generator(seed, "boolsim.inputs", b).random((c.input_count, stop - start))
        wires = _run(c, list(u < probs[:, None]))
        out[start:stop] = _pack_outputs(c, wires)
    return SampleSet(len(c.outputs), out, source="boolsim", seed=seed)


def random_circuit(input_count, gate_count, output_count, seed):
    """A random NOT/AND circuit; outputs are drawn from the last wires."""
    g = rng.generator(seed, "boolsim.random")
    gates = []
    for k in range(gate_count):
        wires = input_count + k
        if g.random() < 0.3:
            gates.append(("NOT", int(g.integers(wires))))
        else:
            gates.append(("AND", int(g.integers(wires)), int(g.integers(wires))))
    total = input_count + gate_count
    outputs = g.choice(total, size=min(output_count, total), replace=False)
    return BooleanCircuit(input_count, tuple(gates), tuple(int(o) for o in outputs))
