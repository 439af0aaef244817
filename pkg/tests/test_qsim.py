import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import stats

from conftest import circuit_unitary, full_gate_matrix
from nisqwalsh.core import empirical_distribution, tv_distance
from nisqwalsh.noise import DistributionNoise, GateNoise, NoiseSchedule, apply_bitflip_noise
from nisqwalsh.qsim import (
    Gate,
    GateSetConfig,
    Layer,
    LayerConflictError,
    MAX_DENSITY_QUBITS,
    NonUnitaryGateError,
    QuantumCircuit,
    born_probabilities,
    coupling_pairs,
    evolve_density,
    generate_random_circuit,
    ideal_distribution,
    run_density_matrix,
    run_statevector,
    sample_ideal,
    sample_trajectories,
)
from nisqwalsh.qsim import gates as G

PAULI = [np.eye(2), G.X, G.Y, G.Z]


def dense_noisy_distribution(circuit, noise):
    """Density matrix evolved with explicit Kraus operators, then readout flips."""
    n = circuit.n
    rho = np.zeros((1 << n, 1 << n), dtype=complex)
    rho[0, 0] = 1
    for layer in circuit.layers:
        for g in layer.gates:
            u = full_gate_matrix(n, g.qubits, g.matrix)
            rho = u @ rho @ u.conj().T
        r = noise.r1 if layer.kind == "single" else noise.r2
        for q in sorted(layer.qubits):
            ks = [full_gate_matrix(n, (q,), p) for p in PAULI]
            rho = (1 - 0.75 * r) * rho + 0.25 * r * sum(k @ rho @ k.conj().T for k in ks[1:])
    p = np.real(np.diag(rho))
    eps = noise.eps_readout
    if eps:
        size = 1 << n
        t = np.array([[eps ** bin(x ^ y).count("1") * (1 - eps) ** (n - bin(x ^ y).count("1"))
                       for x in range(size)] for y in range(size)])
        p = t @ p
    return p


def hadamard_circuit():
    return QuantumCircuit(1, 1, [Layer("single", [Gate.named("h", 0)])])


def test_hadamard_amplitudes():
    psi = run_statevector(hadamard_circuit())
    np.testing.assert_allclose(psi.amplitudes, [2**-0.5, 2**-0.5], atol=1e-15)
    np.testing.assert_allclose(ideal_distribution(hadamard_circuit()).p, [0.5, 0.5], atol=1e-15)


def test_born_rule_exact():
    # 0.64 has no exact binary form; the squares must be correctly rounded
    d = born_probabilities(np.array([0.6, 0.8j]))
    assert d.p[0] == 0.6 * 0.6 == 0.36
    assert d.p[1] == 0.8 * 0.8
    assert abs(d.p[1] - 0.64) <= np.spacing(0.64)


def test_empty_circuit_delta():
    c = generate_random_circuit(2, 2, 0, seed=1)
    assert c.gate_count() == 0
    psi = run_statevector(c).amplitudes
    assert psi[0] == 1 and not psi[1:].any()
    assert np.all(sample_ideal(c, 1000, seed=0).samples == 0)


def test_generator_structure():
    c = generate_random_circuit(3, 4, 14, seed=3)
    assert c.n == 12 and c.depth == 14
    last = {}
    for k, layer in enumerate(c.layers):
        if k % 2 == 0:
            assert layer.kind == "single" and len(layer.gates) == 12
            for g in layer.gates:
                assert g.name in ("sqrt_x", "sqrt_y", "sqrt_w")
                assert last.get(g.qubits[0]) != g.name
                last[g.qubits[0]] = g.name
        else:
            assert layer.kind == "two"
            assert [g.qubits for g in layer.gates] == coupling_pairs(3, 4, (k // 2) % 4)
    again = generate_random_circuit(3, 4, 14, seed=3)
    assert again == c
    assert generate_random_circuit(3, 4, 14, seed=4) != c


def test_coupling_patterns_cover_all_edges():
    rows, cols = 3, 4
    edges = set()
    for d in range(4):
        pairs = coupling_pairs(rows, cols, d)
        flat = [q for p in pairs for q in p]
        assert len(flat) == len(set(flat))
        edges.update(pairs)
    assert len(edges) == rows * (cols - 1) + (rows - 1) * cols


def test_generator_errors():
    with pytest.raises(ValueError):
        generate_random_circuit(5, 5, 4)
    with pytest.raises(ValueError):
        generate_random_circuit(2, 2, -1)


def test_custom_gateset_matrices():
    gs = GateSetConfig(single=(G.H, "t"), two=G.fsim(0.3, 0.7))
    c = generate_random_circuit(2, 2, 5, gateset=gs, seed=2)
    np.testing.assert_allclose(run_statevector(c).amplitudes, circuit_unitary(c)[:, 0], atol=1e-12)


@pytest.mark.parametrize("seed", range(5))
def test_matrix_chain_oracle(seed):
    c = generate_random_circuit(1, 3, 9, seed=seed)
    psi = run_statevector(c).amplitudes
    np.testing.assert_allclose(psi, circuit_unitary(c)[:, 0], atol=1e-10)


def test_matrix_chain_non_diagonal_two_qubit():
    for two in ("cnot", "iswap", "swap"):
        c = generate_random_circuit(2, 2, 7, gateset=GateSetConfig(two=two), seed=1)
        np.testing.assert_allclose(run_statevector(c).amplitudes, circuit_unitary(c)[:, 0], atol=1e-10)


def test_non_unitary_rejected():
    bad = np.array([[1, 0], [0, 1.0 + 1e-9]])
    with pytest.raises(NonUnitaryGateError):
        QuantumCircuit(1, 1, [Layer("single", [Gate((0,), bad)])])


def test_layer_conflicts():
    with pytest.raises(LayerConflictError):
        Layer("single", [Gate.named("h", 0), Gate.named("x", 0)])
    with pytest.raises(LayerConflictError):
        QuantumCircuit(2, 2, [Layer("two", [Gate.named("cz", 0, 3)])])
    with pytest.raises(ValueError):
        QuantumCircuit(1, 2, [Layer("single", [Gate.named("h", 2)])])


def test_distribution_normalized():
    for seed in range(3):
        p = ideal_distribution(generate_random_circuit(3, 4, 12, seed=seed)).p
        assert abs(p.sum() - 1) < 1e-10


def test_hadamard_sampling_fraction():
    s = sample_ideal(hadamard_circuit(), 10**6, seed=42)
    frac = np.mean(s.samples == 0)
    assert 0.498 <= frac <= 0.502


def expected_tv(p, count):
    """Normal approximation of E[TV] between ``p`` and its empirical version."""
    return 0.5 * np.sum(np.sqrt(2 * p * (1 - p) / (np.pi * count)))


def test_ideal_sampling_concentration():
    c = generate_random_circuit(3, 4, 14, seed=0)
    ideal = ideal_distribution(c)
    count = 5 * 10**5
    s = sample_ideal(c, count, seed=1)
    tv = tv_distance(empirical_distribution(s), ideal)
    # a scrambled 12-qubit circuit sits near TV 0.032 here, not below 0.02
    assert abs(tv - expected_tv(ideal.p, count)) < 0.002
    assert np.array_equal(s.samples, sample_ideal(c, 5 * 10**5, seed=1).samples)


def test_density_zero_noise_matches_ideal():
    for seed in range(3):
        c = generate_random_circuit(2, 3, 10, seed=seed)
        d = run_density_matrix(c, GateNoise())
        np.testing.assert_allclose(d.p, ideal_distribution(c).p, atol=1e-9)
        psi = run_statevector(c).amplitudes
        rho = evolve_density(c, GateNoise()).matrix
        assert np.linalg.norm(rho - np.outer(psi, psi.conj())) < 1e-9


def test_density_full_depolarization_uniform():
    d = run_density_matrix(hadamard_circuit(), GateNoise(r1=1.0))
    np.testing.assert_allclose(d.p, [0.5, 0.5], atol=1e-15)
    c = QuantumCircuit(1, 1, [Layer("single", [Gate.named("x", 0)])])
    np.testing.assert_allclose(run_density_matrix(c, GateNoise(r1=1.0)).p, [0.5, 0.5], atol=1e-15)


@pytest.mark.parametrize("noise", [GateNoise(0.05, 0.05), GateNoise(0.02, 0.1, 0.03)])
def test_density_matches_kraus_oracle(noise):
    c = generate_random_circuit(1, 3, 8, gateset=GateSetConfig(two="iswap"), seed=4)
    np.testing.assert_allclose(run_density_matrix(c, noise).p, dense_noisy_distribution(c, noise), atol=1e-12)


def test_density_invariants():
    c = generate_random_circuit(2, 3, 10, seed=5)
    rho = evolve_density(c, GateNoise(0.1, 0.2)).matrix
    assert np.abs(rho - rho.conj().T).max() < 1e-10
    assert abs(np.trace(rho) - 1) < 1e-10
    assert np.linalg.eigvalsh(rho).min() > -1e-8


def test_density_size_limit():
    c = generate_random_circuit(3, 4, 2, seed=0)
    assert c.n > MAX_DENSITY_QUBITS
    with pytest.raises(ValueError, match="trajectories"):
        run_density_matrix(c, GateNoise())


def test_trajectories_vs_density_tv():
    c = generate_random_circuit(1, 3, 10, seed=2)
    noise = GateNoise(0.05, 0.05)
    s = sample_trajectories(c, noise, None, 10**5, seed=3)
    assert tv_distance(empirical_distribution(s), run_density_matrix(c, noise)) < 0.01


@pytest.mark.parametrize("seed", range(3))
def test_trajectories_chi_square(seed):
    c = generate_random_circuit(2, 2, 9, gateset=GateSetConfig(two="cnot"), seed=seed)
    noise = GateNoise(0.03, 0.08, 0.02)
    count = 10**5
    s = sample_trajectories(c, noise, None, count, seed=seed)
    p = dense_noisy_distribution(c, noise)
    observed = np.bincount(s.samples, minlength=16)
    assert stats.chisquare(observed, p * count).pvalue > 0.001


def test_trajectories_zero_noise_matches_ideal():
    c = generate_random_circuit(2, 2, 9, seed=6)
    s = sample_trajectories(c, GateNoise(), NoiseSchedule.constant(0.0), 10**5, seed=1)
    assert tv_distance(empirical_distribution(s), ideal_distribution(c)) < 0.01


def test_trajectories_full_mixing():
    c = generate_random_circuit(1, 3, 6, seed=1)
    s = sample_trajectories(c, GateNoise(1.0, 1.0), None, 10**5, seed=2)
    assert np.abs(empirical_distribution(s).p - 1 / 8).sum() / 2 < 0.02


def test_trajectories_deterministic_and_ordered():
    c = generate_random_circuit(2, 2, 8, seed=3)
    sched = NoiseSchedule.linear(0.0, 0.3, target="gate")
    a = sample_trajectories(c, GateNoise(), sched, 30_000, seed=5)
    b = sample_trajectories(c, GateNoise(), sched, 30_000, seed=5)
    assert np.array_equal(a.samples, b.samples)
    # drift towards heavy noise shows up late in the stream
    ideal = ideal_distribution(c)
    early = tv_distance(empirical_distribution(a[:10_000]), ideal)
    late = tv_distance(empirical_distribution(a[-10_000:]), ideal)
    assert late > early + 0.05


def test_trajectories_readout_only():
    c = generate_random_circuit(1, 3, 6, seed=8)
    noise = GateNoise(eps_readout=0.1)
    s = sample_trajectories(c, noise, None, 10**5, seed=0)
    ref = apply_bitflip_noise(ideal_distribution(c), DistributionNoise(0.1))
    assert tv_distance(empirical_distribution(s), ref) < 0.01


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 9), st.randoms(use_true_random=False))
def test_gate_order_within_layer_irrelevant(seed, depth, rnd):
    c = generate_random_circuit(2, 3, depth, gateset=GateSetConfig(two="iswap"), seed=seed)
    shuffled = []
    for layer in c.layers:
        gs = list(layer.gates)
        rnd.shuffle(gs)
        shuffled.append(Layer(layer.kind, gs))
    d = QuantumCircuit(c.rows, c.cols, shuffled)
    np.testing.assert_allclose(
        run_statevector(d).amplitudes, run_statevector(c).amplitudes, atol=1e-12, rtol=0
    )
    noise = GateNoise(0.05, 0.1)
    np.testing.assert_allclose(run_density_matrix(d, noise).p, run_density_matrix(c, noise).p, atol=1e-12)
