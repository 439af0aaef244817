"""Noise parameters, the bit-flip noise operator and drifting schedules."""
import math
from dataclasses import dataclass

import numpy as np

from . import rng
from .walsh import distribution_from_spectrum, popcounts, spectrum, WalshSpectrum


def _check_range(name, value, lo, hi):
    if not lo <= value <= hi:
        raise ValueError(f"{name}={value!r} outside [{lo}, {hi}]")


@dataclass(frozen=True)
class GateNoise:
    """Depolarizing rates after 1- and 2-qubit gates, plus readout flips."""

    r1: float = 0.0
    r2: float = 0.0
    eps_readout: float = 0.0

    def __post_init__(self):
        _check_range("r1", self.r1, 0.0, 1.0)
        _check_range("r2", self.r2, 0.0, 1.0)
        _check_range("eps_readout", self.eps_readout, 0.0, 0.5)

    @property
    def is_zero(self):
        return self.r1 == 0 and self.r2 == 0 and self.eps_readout == 0


@dataclass(frozen=True)
class DistributionNoise:
    """Independent per-bit flips with probability ``eps``."""

    eps: float

    def __post_init__(self):
        _check_range("eps", self.eps, 0.0, 0.5)

    @property
    def rho(self):
        return 1.0 - 2.0 * self.eps


# legal range of each parameter a schedule can drive
TARGET_RANGES = {
    "eps_readout": (0.0, 0.5),
    "r1": (0.0, 1.0),
    "r2": (0.0, 1.0),
    "gate": (0.0, 1.0),
}
SCHEDULE_KINDS = ("constant", "linear", "sinusoid", "random_walk")


@dataclass(frozen=True)
class NoiseSchedule:
    """A noise rate as a function of normalized stream position in [0, 1].

    ``target`` names the :class:`GateNoise` field the schedule overrides;
    ``gate`` drives ``r1`` and ``r2`` together.
    """

    kind: str
    params: tuple
    target: str = "eps_readout"

    def __post_init__(self):
        if self.kind not in SCHEDULE_KINDS:
            raise ValueError(f"unknown schedule kind {self.kind!r}")
        if self.target not in TARGET_RANGES:
            raise ValueError(f"unknown schedule target {self.target!r}")
        object.__setattr__(self, "params", tuple(self.params))
        expected = {"constant": 1, "linear": 2, "sinusoid": 3, "random_walk": 4}[self.kind]
        if len(self.params) != expected:
            raise ValueError(f"{self.kind} schedule takes {expected} parameters")

    @classmethod
    def constant(cls, value, target="eps_readout"):
        return cls("constant", (float(value),), target)

    @classmethod
    def linear(cls, start, stop, target="eps_readout"):
        return cls("linear", (float(start), float(stop)), target)

    @classmethod
    def sinusoid(cls, mean, amplitude, period, target="eps_readout"):
        if period <= 0:
            raise ValueError("period must be positive")
        return cls("sinusoid", (float(mean), float(amplitude), float(period)), target)

    @classmethod
    def random_walk(cls, start, step, seed, steps=1000, target="eps_readout"):
        return cls("random_walk", (float(start), float(step), int(seed), int(steps)), target)

    @property
    def bounds(self):
        return TARGET_RANGES[self.target]

    def to_dict(self):
        return {"kind": self.kind, "params": list(self.params), "target": self.target}

    @classmethod
    def from_dict(cls, d):
        return cls(d["kind"], tuple(d["params"]), d.get("target", "eps_readout"))


def _walk_path(start, step, seed, steps, lo, hi):
    signs = rng.generator(seed, "schedule.walk").integers(0, 2, size=steps) * 2 - 1
    path = np.empty(steps + 1)
    path[0] = min(max(start, lo), hi)
    for k in range(steps):
        path[k + 1] = min(max(path[k] + step * signs[k], lo), hi)
    return path


def schedule_values(sched, positions):
    pos = np.asarray(positions, dtype=np.float64)
    if np.any((pos < 0) | (pos > 1)) or np.any(np.isnan(pos)):
        raise ValueError("stream position must lie in [0, 1]")
    lo, hi = sched.bounds
    if sched.kind == "constant":
        out = np.full(pos.shape, sched.params[0])
    elif sched.kind == "linear":
        a, b = sched.params
        out = a + (b - a) * pos
    elif sched.kind == "sinusoid":
        mean, amp, period = sched.params
        out = mean + amp * np.sin(2.0 * math.pi * pos / period)
    else:
        start, step, seed, steps = sched.params
        path = _walk_path(start, step, seed, steps, lo, hi)
        out = path[np.rint(pos * steps).astype(np.int64)]
    return np.clip(out, lo, hi)


def schedule_value(sched, position):
    return float(schedule_values(sched, np.array([position]))[0])


def stream_positions(count):
    """Normalized position of each sample in a stream of ``count``."""
    if count <= 1:
        return np.zeros(count)
    return np.arange(count) / (count - 1)


def attenuate(spec, rho):
    """Scale each coefficient by ``rho ** |S|``."""
    factors = np.power(rho, popcounts(spec.n).astype(np.float64))
    return WalshSpectrum(spec.n, spec.coefficients * factors)


def apply_bitflip_noise(p, noise):
    """Distribution of ``x xor e`` with ``x ~ p`` and independent bit flips ``e``.

    Computed in the Walsh domain, where the operator is diagonal.
    """
    if noise.eps == 0.0:
        return p
    return distribution_from_spectrum(attenuate(spectrum(p), noise.rho))


def flip_masks(eps, n, u):
    """Bit masks with bit ``i`` set where ``u[:, i] < eps``."""
    eps = np.asarray(eps, dtype=np.float64)
    if eps.ndim == 1:
        eps = eps[:, None]
    hits = u < eps
    return hits.astype(np.int64) @ (np.int64(1) << np.arange(n, dtype=np.int64))


def corrupt_samples(s, noise, seed, schedule=None):
    """Flip each bit of each sample independently with probability ``eps``.

    With ``schedule`` the flip probability follows the stream position
    instead of ``noise.eps``.
    """
    count = len(s)
    if schedule is None:
        if noise.eps == 0.0:
            return s.replace(source=s.source)
        eps = np.full(count, noise.eps)
    else:
        eps = schedule_values(schedule, stream_positions(count))
        eps = np.clip(eps, 0.0, 0.5)
    u = rng.uniforms(seed, "noise.corrupt", count, s.n)
    masks = flip_masks(eps, s.n, u)
    return s.replace(samples=s.samples ^ masks)
