"""Fourier-Walsh spectra of distributions on n-bit strings.

Convention: a distribution ``p`` is represented by its density
``q = 2**n * p`` and

    coefficient(S) = 2**-n * sum_x q(x) * (-1)**popcount(x & S)

so ``coefficient(0) == 1`` for every distribution and each coefficient is
the expectation of the parity ``chi_S`` under ``p``.
"""
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import kernels
from .core import OutcomeDistribution


@lru_cache(maxsize=None)
def popcounts(n):
    """Read-only array of ``popcount(S)`` for every mask ``S < 2**n``."""
    idx = np.arange(1 << n, dtype=np.int64)
    deg = np.zeros(1 << n, dtype=np.int64)
    for i in range(n):
        deg += (idx >> i) & 1
    deg.setflags(write=False)
    return deg


def _log2_length(size):
    if size < 1 or size & (size - 1):
        raise ValueError(f"length must be a power of two, got {size}")
    return size.bit_length() - 1


@dataclass(frozen=True, eq=False)
class WalshSpectrum:
    n: int
    coefficients: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.array(self.coefficients, dtype=np.float64)
        if c.shape != (1 << self.n,):
            raise ValueError(f"spectrum must have length 2^{self.n}")
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)

    def __getitem__(self, mask):
        return self.coefficients[mask]

    @property
    def parseval_mass(self):
        return float(np.square(self.coefficients).sum())


@dataclass(frozen=True, eq=False)
class DegreeProfile:
    """Weight ``W_d`` per degree, optionally with standard errors."""

    n: int
    weights: np.ndarray
    stderr: np.ndarray | None = None

    def __post_init__(self):
        w = np.array(self.weights, dtype=np.float64)
        if w.ndim != 1 or w.shape[0] > self.n + 1:
            raise ValueError("weights must hold at most n + 1 degrees")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)
        if self.stderr is not None:
            se = np.array(self.stderr, dtype=np.float64)
            if se.shape != w.shape:
                raise ValueError("stderr must match weights")
            se.setflags(write=False)
            object.__setattr__(self, "stderr", se)

    @property
    def max_degree(self):
        return self.weights.shape[0] - 1

    @property
    def total(self):
        return float(self.weights.sum())


def fwht(values):
    """Normalized fast Walsh-Hadamard transform of a density vector."""
    a = np.array(values, dtype=np.float64)
    if a.ndim != 1:
        raise ValueError("expected a one-dimensional vector")
    n = _log2_length(a.shape[0])
    kernels.fwht_inplace(a)
    a *= 1.0 / a.shape[0]
    return WalshSpectrum(n, a)


def inverse_fwht(spec):
    """Density vector whose spectrum is ``spec``."""
    a = np.array(spec.coefficients, dtype=np.float64)
    kernels.fwht_inplace(a)
    return a


def spectrum(dist):
    """Spectrum of an :class:`OutcomeDistribution`."""
    return fwht(dist.p * float(1 << dist.n))


def distribution_from_spectrum(spec):
    q = inverse_fwht(spec)
    return OutcomeDistribution.normalized(spec.n, q)


def degree_profile(spec):
    sq = np.square(spec.coefficients)
    w = np.bincount(popcounts(spec.n), weights=sq, minlength=spec.n + 1)
    return DegreeProfile(spec.n, w)


def stable_sensitive_split(spec, cutoff):
    """Split into the part of degree <= cutoff and the rest."""
    if not 0 <= cutoff <= spec.n:
        raise ValueError(f"cutoff must lie in [0, {spec.n}]")
    low_mask = popcounts(spec.n) <= cutoff
    c = spec.coefficients
    return (
        WalshSpectrum(spec.n, np.where(low_mask, c, 0.0)),
        WalshSpectrum(spec.n, np.where(low_mask, 0.0, c)),
    )


def noise_stability(spec, rho):
    """``sum_d rho**d * W_d`` for a spectrum or a degree profile."""
    if not 0.0 <= rho <= 1.0:
        raise ValueError("rho must lie in [0, 1]")
    profile = spec if isinstance(spec, DegreeProfile) else degree_profile(spec)
    d = np.arange(profile.weights.shape[0])
    return float(np.sum(np.power(rho, d) * profile.weights))
