"""Monte Carlo trajectories of Pauli-twirled depolarizing noise.

Each sample draws an error pattern (a Pauli X, Y or Z with probability
``3r/4`` on every qubit touched by a layer), is simulated as a pure state
and measured once. Samples that share a pattern share one simulation, and
patterns are visited in lexicographic order so common prefixes are
simulated once. Errors after the last non-diagonal layer commute to the
measurement as bit flips and are applied as an XOR mask.
"""
import numpy as np

from .. import rng
from ..core import SampleSet
from ..noise import flip_masks, schedule_values, stream_positions
from . import engine
from .gates import PAULIS
from .statevector import NORM_TOL

MAX_TRAJECTORY_QUBITS = 20
# budget (in amplitudes) for caching the noiseless state after every layer
_CACHE_AMPLITUDES = 1 << 24

_PAULI_MATS = np.array(PAULIS, dtype=complex)


def _op_is_diagonal(op):
    if op.kind == "diag" or op.qubits.shape[0] == 0:
        return True
    return not np.any(op.mats * (1 - np.eye(op.mats.shape[-1])))


def per_sample_rates(noise, schedule, count):
    """Arrays ``(r1, r2, eps_readout)`` for each stream position."""
    r1 = np.full(count, noise.r1)
    r2 = np.full(count, noise.r2)
    eps = np.full(count, noise.eps_readout)
    if schedule is not None:
        v = schedule_values(schedule, stream_positions(count))
        if schedule.target == "eps_readout":
            eps = v
        if schedule.target in ("r1", "gate"):
            r1 = v
        if schedule.target in ("r2", "gate"):
            r2 = v
    return r1, r2, eps


class _Plan:
    def __init__(self, circuit):
        self.n = circuit.n
        self.ops = engine.lower(circuit)
        nondiag = [k for k, op in enumerate(self.ops) if not _op_is_diagonal(op)]
        self.last = nondiag[-1] if nondiag else -1
        layer, qubit, two = [], [], []
        for k, op in enumerate(self.ops):
            for q in np.unique(op.qubits):
                layer.append(k)
                qubit.append(int(q))
                two.append(op.kind != "1q")
        self.slot_layer = np.array(layer, dtype=np.int64)
        self.slot_qubit = np.array(qubit, dtype=np.int64)
        self.slot_two = np.array(two, dtype=bool)
        self.sim = self.slot_layer < self.last
        self.sim_index = np.flatnonzero(self.sim)
        self.tail_index = np.flatnonzero(~self.sim)

    def evolve(self, state, start, stop):
        """Apply ops ``start..stop`` inclusive in place."""
        for k in range(start, stop + 1):
            engine.apply(self.ops[k], state)

    def noiseless_states(self):
        depth = self.last + 1
        if depth * (1 << self.n) > _CACHE_AMPLITUDES:
            return None
        states = []
        psi = engine.zero_state(self.n)
        for k in range(depth):
            engine.apply(self.ops[k], psi)
            states.append(psi.copy())
        return states


def _draw_block(plan, g, m, r1, r2, eps):
    n = plan.n
    k = plan.slot_layer.shape[0]
    u_err = g.random((m, k))
    u_meas = g.random(m)
    u_ro = g.random((m, n))
    rate = np.where(plan.slot_two[None, :], r2[:, None], r1[:, None])
    err = u_err < 0.75 * rate
    with np.errstate(divide="ignore", invalid="ignore"):
        pauli = np.clip(np.floor(u_err / (0.25 * rate)), 0, 2).astype(np.int64) + 1
    pauli = np.where(err, pauli, 0)

    # tail errors: X and Y flip the measured bit, Z is invisible
    tail_flip = (pauli[:, plan.tail_index] == 1) | (pauli[:, plan.tail_index] == 2)
    bitvals = np.int64(1) << plan.slot_qubit[plan.tail_index]
    mask = np.bitwise_xor.reduce(np.where(tail_flip, bitvals[None, :], 0), axis=1) if (
        plan.tail_index.size
    ) else np.zeros(m, dtype=np.int64)
    mask = mask ^ flip_masks(eps, n, u_ro)

    sim_p = pauli[:, plan.sim_index]
    hit = sim_p > 0
    counts = hit.sum(axis=1)
    width = int(counts.max()) if m else 0
    codes = np.full((m, width), -1, dtype=np.int64)
    rows, cols = np.nonzero(hit)
    if rows.size:
        start = np.cumsum(counts) - counts
        codes[rows, np.arange(rows.size) - start[rows]] = cols * 4 + sim_p[rows, cols]
    return codes, u_meas, mask


def _pattern_probabilities(plan, patterns, cache):
    """Yield the outcome distribution of each sorted error pattern."""
    sim_layer = plan.slot_layer[plan.sim_index]
    sim_qubit = plan.slot_qubit[plan.sim_index]
    path = []  # (code, layer, state) along the current pattern prefix

    def start_state(layer):
        if cache is not None:
            return cache[layer].copy()
        psi = engine.zero_state(plan.n)
        plan.evolve(psi, 0, layer)
        return psi

    for row in patterns:
        codes = [int(c) for c in row if c >= 0]
        common = 0
        while common < min(len(path), len(codes)) and path[common][0] == codes[common]:
            common += 1
        del path[common:]
        for code in codes[common:]:
            slot, p = divmod(code, 4)
            layer = int(sim_layer[slot])
            if path:
                psi = path[-1][2].copy()
                plan.evolve(psi, path[-1][1] + 1, layer)
            else:
                psi = start_state(layer)
            engine.kernels.apply_1q_layer(
                psi, sim_qubit[slot : slot + 1], _PAULI_MATS[p : p + 1]
            )
            path.append((code, layer, psi))
        if path:
            psi = path[-1][2].copy()
            plan.evolve(psi, path[-1][1] + 1, plan.last)
        elif plan.last >= 0:
            psi = start_state(plan.last)
        else:
            psi = engine.zero_state(plan.n)
        probs = np.square(np.abs(psi))
        total = probs.sum()
        if abs(total - 1.0) > NORM_TOL:
            raise ArithmeticError(f"trajectory norm drifted to {total!r}")
        yield probs


def sample_trajectories(circuit, noise, schedule, count, seed):
    """Sample a noisy circuit one trajectory per sample, in stream order.

    ``schedule`` (optional) overrides one noise parameter as a function of
    the sample's stream position.
    """
    if circuit.n > MAX_TRAJECTORY_QUBITS:
        raise ValueError(f"trajectory backend is limited to {MAX_TRAJECTORY_QUBITS} qubits")
    if count < 1:
        raise ValueError("count must be at least 1")
    plan = _Plan(circuit)
    r1, r2, eps = per_sample_rates(noise, schedule, count)

    parts = []
    for b, start, stop in rng.blocks(count):
        g = rng.generator(seed, "qsim.trajectories", b)
        parts.append(_draw_block(plan, g, stop - start, r1[start:stop], r2[start:stop], eps[start:stop]))
    width = max(p[0].shape[1] for p in parts)
    codes = np.concatenate(
        [np.pad(c, ((0, 0), (0, width - c.shape[1])), constant_values=-1) for c, _, _ in parts]
    )
    u_meas = np.concatenate([p[1] for p in parts])
    mask = np.concatenate([p[2] for p in parts])

    if width:
        patterns, inverse = np.unique(codes, axis=0, return_inverse=True)
        inverse = inverse.reshape(-1)
    else:
        patterns = np.zeros((1, 0), dtype=np.int64)
        inverse = np.zeros(count, dtype=np.int64)
    order = np.argsort(inverse, kind="stable")
    bounds = np.concatenate([[0], np.cumsum(np.bincount(inverse, minlength=len(patterns)))])

    out = np.empty(count, dtype=np.int64)
    cache = plan.noiseless_states()
    top = (1 << plan.n) - 1
    for g_idx, probs in enumerate(_pattern_probabilities(plan, patterns, cache)):
        members = order[bounds[g_idx] : bounds[g_idx + 1]]
        cdf = np.cumsum(probs)
        x = np.searchsorted(cdf, u_meas[members] * cdf[-1], side="right")
        out[members] = np.minimum(x, top)
    out ^= mask
    return SampleSet(circuit.n, out, source="trajectories", seed=seed)
