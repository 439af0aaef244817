"""Ideal (noiseless) state-vector simulation."""
from dataclasses import dataclass, field

import numpy as np

from ..core import OutcomeDistribution, sample_distribution
from . import engine

NORM_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class StateVector:
    n: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        a = np.array(self.amplitudes, dtype=complex)
        if a.shape != (1 << self.n,):
            raise ValueError(f"state must have 2^{self.n} amplitudes")
        norm = float(np.vdot(a, a).real)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state norm^2 is {norm!r}, not 1")
        a.setflags(write=False)
        object.__setattr__(self, "amplitudes", a)

    def probabilities(self):
        return np.square(np.abs(self.amplitudes))


def born_probabilities(amplitudes):
    """Outcome probabilities ``|amplitude|**2``."""
    return OutcomeDistribution.normalized(
        int(np.log2(len(amplitudes))), np.square(np.abs(np.asarray(amplitudes)))
    )


def check_norm(psi, where):
    norm = float(np.vdot(psi, psi).real)
    if abs(norm - 1.0) > NORM_TOL:
        raise ArithmeticError(f"norm drifted to {norm!r} after {where}")


def run_statevector(circuit):
    """Evolve ``|0...0>`` through every layer."""
    psi = engine.zero_state(circuit.n)
    for k, op in enumerate(engine.lower(circuit)):
        engine.apply(op, psi)
        check_norm(psi, f"layer {k}")
    return StateVector(circuit.n, psi)


def ideal_distribution(circuit):
    return OutcomeDistribution.normalized(circuit.n, run_statevector(circuit).probabilities())


def sample_ideal(circuit, count, seed):
    return sample_distribution(
        ideal_distribution(circuit), count, seed, tag="qsim.ideal", source="ideal"
    )
