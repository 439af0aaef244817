"""Bitstrings, ordered sample streams, dense outcome distributions, distances.

Bit ``i`` of an outcome index is the value of position (qubit) ``i``.
"""
from dataclasses import dataclass, field

import numpy as np

from . import rng

MAX_BITS = 24


class EmptyInputError(ValueError):
    pass


def _check_n(n):
    if not isinstance(n, (int, np.integer)) or not 1 <= n <= MAX_BITS:
        raise ValueError(f"bit count must be an integer in [1, {MAX_BITS}], got {n!r}")
    return int(n)


def pack_bits(bits):
    """Pack a 0/1 sequence into an integer index (little-endian)."""
    index = 0
    for i, b in enumerate(bits):
        if b not in (0, 1):
            raise ValueError(f"bit {i} is {b!r}, expected 0 or 1")
        index |= int(b) << i
    return index


def unpack_bits(index, n):
    if not 0 <= index < (1 << n):
        raise ValueError(f"index {index} out of range for n={n}")
    return tuple((index >> i) & 1 for i in range(n))


def bits_to_str(index, n):
    return "".join("1" if (index >> i) & 1 else "0" for i in range(n))


def str_to_bits(text):
    return pack_bits(int(ch) if ch in "01" else ch for ch in text)


@dataclass(frozen=True)
class BitString:
    n: int
    index: int

    def __post_init__(self):
        _check_n(self.n)
        if not 0 <= self.index < (1 << self.n):
            raise ValueError(f"index {self.index} out of range for n={self.n}")

    @classmethod
    def from_bits(cls, bits):
        bits = tuple(bits)
        return cls(len(bits), pack_bits(bits))

    @classmethod
    def from_str(cls, text):
        return cls(len(text), str_to_bits(text))

    @property
    def bits(self):
        return unpack_bits(self.index, self.n)

    def __len__(self):
        return self.n

    def __str__(self):
        return bits_to_str(self.index, self.n)


def _frozen_array(values, dtype):
    arr = np.array(values, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class SampleSet:
    """Ordered stream of ``n``-bit outcomes stored as packed indices.

    Order is never changed: stationarity analysis depends on it.
    """

    n: int
    samples: np.ndarray
    source: str = ""
    seed: int | None = None
    batches: tuple = ()
    circuit: str | None = None
    ordered: bool = True

    def __post_init__(self):
        _check_n(self.n)
        arr = _frozen_array(self.samples, np.int64)
        if arr.ndim != 1:
            raise ValueError("samples must be one-dimensional")
        if arr.size and (arr.min() < 0 or arr.max() >= (1 << self.n)):
            raise ValueError(f"sample index out of range for n={self.n}")
        object.__setattr__(self, "samples", arr)
        object.__setattr__(self, "batches", tuple(int(b) for b in self.batches))

    def __len__(self):
        return self.samples.shape[0]

    def __getitem__(self, i):
        if isinstance(i, slice):
            return self.replace(samples=self.samples[i], batches=())
        return BitString(self.n, int(self.samples[i]))

    def __eq__(self, other):
        if not isinstance(other, SampleSet):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.samples, other.samples)
            and self.source == other.source
            and self.seed == other.seed
            and self.batches == other.batches
            and self.circuit == other.circuit
            and self.ordered == other.ordered
        )

    __hash__ = None

    def replace(self, **changes):
        fields = dict(
            n=self.n,
            samples=self.samples,
            source=self.source,
            seed=self.seed,
            batches=self.batches,
            circuit=self.circuit,
            ordered=self.ordered,
        )
        fields.update(changes)
        return SampleSet(**fields)

    @classmethod
    def from_strings(cls, lines, **meta):
        lines = list(lines)
        if not lines:
            raise EmptyInputError("empty input")
        n = len(lines[0])
        return cls(n, [str_to_bits(s) for s in lines], **meta)

    def bitstrings(self):
        return [bits_to_str(int(x), self.n) for x in self.samples]

    def concat(self, other):
        if other.n != self.n:
            raise ValueError("cannot concatenate sample sets of different n")
        return self.replace(samples=np.concatenate([self.samples, other.samples]), batches=())


@dataclass(frozen=True, eq=False)
class OutcomeDistribution:
    n: int
    p: np.ndarray = field(repr=False)

    def __post_init__(self):
        _check_n(self.n)
        p = _frozen_array(self.p, np.float64)
        if p.shape != (1 << self.n,):
            raise ValueError(f"probability vector must have length 2^{self.n}")
        if np.any(p < 0):
            raise ValueError("probabilities must be nonnegative")
        if abs(p.sum() - 1.0) > 1e-9:
            raise ValueError(f"probabilities sum to {p.sum()!r}, not 1")
        object.__setattr__(self, "p", p)

    @classmethod
    def uniform(cls, n):
        return cls(n, np.full(1 << n, 1.0 / (1 << n)))

    @classmethod
    def delta(cls, n, index=0):
        p = np.zeros(1 << n)
        p[index] = 1.0
        return cls(n, p)

    @classmethod
    def normalized(cls, n, weights):
        """Clip tiny negative round-off and renormalize."""
        w = np.clip(np.asarray(weights, dtype=np.float64), 0.0, None)
        return cls(n, w / w.sum())

    def __eq__(self, other):
        if not isinstance(other, OutcomeDistribution):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.p, other.p)

    __hash__ = None


def outcome_counts(s):
    if len(s) == 0:
        raise EmptyInputError("empty input")
    return np.bincount(s.samples, minlength=1 << s.n).astype(np.int64)


def empirical_distribution(s):
    """Relative outcome frequencies of a sample stream."""
    counts = outcome_counts(s)
    return OutcomeDistribution(s.n, counts / counts.sum())


def _pair(p, q):
    if p.n != q.n:
        raise ValueError(f"distributions over different bit counts ({p.n} vs {q.n})")
    return p.p, q.p


def tv_distance(p, q):
    a, b = _pair(p, q)
    return float(0.5 * np.abs(a - b).sum())


def l2_distance(p, q):
    a, b = _pair(p, q)
    return float(np.sqrt(np.square(a - b).sum()))


METRICS = {"tv": tv_distance, "l2": l2_distance}


def get_metric(name):
    try:
        return METRICS[name]
    except KeyError:
        raise ValueError(f"unknown metric {name!r}; choose from {sorted(METRICS)}") from None


def sample_distribution(dist, count, seed, tag="core.sample", source=""):
    """``count`` i.i.d. draws from ``dist``, reproducible from ``seed``."""
    if count < 1:
        raise ValueError("count must be at least 1")
    cdf = np.cumsum(dist.p)
    u = rng.uniforms(seed, tag, count)
    x = np.searchsorted(cdf, u * cdf[-1], side="right")
    np.minimum(x, (1 << dist.n) - 1, out=x)
    return SampleSet(dist.n, x, source=source, seed=seed)
