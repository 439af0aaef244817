"""Config-driven pipeline: circuit -> samples -> spectrum -> statistics -> report."""
import os

from . import __version__, chaostats, fileio, kernels
from .core import sample_distribution
from .qsim import generate_random_circuit, ideal_distribution, run_density_matrix
from .qsim import sample_ideal, sample_trajectories
from .walsh import degree_profile, spectrum


def load_circuit(cfg):
    c = cfg.circuit
    if "file" in c:
        return fileio.parse_circuit(cfg.path(c["file"])), os.path.basename(c["file"])
    circuit = generate_random_circuit(int(c["rows"]), int(c["cols"]), int(c["depth"]), seed=int(c["seed"]))
    return circuit, None


def simulate(circuit, backend, noise, schedule, count, seed):
    if backend == "ideal":
        return sample_ideal(circuit, count, seed)
    if backend == "density":
        if schedule is not None:
            raise ValueError("the density backend does not support noise schedules")
        dist = run_density_matrix(circuit, noise)
        return sample_distribution(dist, count, seed, tag="qsim.density", source="density")
    return sample_trajectories(circuit, noise, schedule, count, seed)


def run(cfg):
    """Execute a :class:`RunConfig`; returns the report document."""
    circuit, circuit_ref = load_circuit(cfg)
    out = cfg.outputs
    if "circuit" in out:
        fileio.write_circuit(circuit, cfg.path(out["circuit"]))
        circuit_ref = os.path.basename(out["circuit"])
    samples = simulate(
        circuit, cfg.backend, cfg.gate_noise(), cfg.noise_schedule(), int(cfg.count), int(cfg.seed)
    )
    samples = samples.replace(circuit=circuit_ref)
    if "samples" in out:
        fileio.write_samples(samples, cfg.path(out["samples"]))

    a = cfg.analysis
    ideal = ideal_distribution(circuit)
    ref = degree_profile(spectrum(ideal))
    est = chaostats.estimate_degree_profile(
        samples, a.get("max_degree"), a.get("estimator", "fwht-debiased")
    )
    if "spectrum" in out:
        fileio.emit_spectrum_csv(est, cfg.path(out["spectrum"]), ref=ref)

    analysis_seed = int(a.get("seed", cfg.seed))
    stat = chaostats.stationarity_test(
        samples, int(a.get("B", 999)), a.get("metric", "l2"), analysis_seed
    )
    lo, hi = a.get("decay_degrees", [1, est.max_degree])
    try:
        decay = chaostats.decay_fit(est, ref, range(int(lo), int(hi) + 1))
    except ValueError as exc:
        decay = {"error": str(exc)}
    provenance = {
        "config_hash": fileio.config_hash(cfg.to_dict()),
        "seeds": {"circuit": cfg.circuit.get("seed"), "sampling": int(cfg.seed), "analysis": analysis_seed},
        "version": __version__,
        "kernels": kernels.BACKEND,
    }
    xeb = {
        "value": chaostats.xeb_fidelity(samples, ideal),
        "stderr": chaostats.xeb_stderr(samples, ideal),
    }
    sections = dict(config=cfg.to_dict(), stationarity=stat, decay=decay, xeb=xeb)
    if "report" in out:
        return fileio.emit_report(cfg.path(out["report"]), provenance, **sections)
    doc = {"format": fileio.REPORT_FORMAT, "provenance": provenance}
    doc.update({k: v.to_dict() if hasattr(v, "to_dict") else v for k, v in sections.items()})
    return doc
