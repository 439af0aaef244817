"""Statistics on ordered sample streams.

* a sequential-halves vs. random-halves permutation test for stationarity,
* unbiased estimates of Fourier-Walsh degree weights from samples,
* an exponential decay fit of noisy vs. reference degree weights,
* the linear cross-entropy (XEB) fidelity estimator.
"""
from dataclasses import dataclass, field
from math import comb

import numpy as np

from . import kernels, rng
from .core import EmptyInputError, METRICS, outcome_counts
from .walsh import DegreeProfile, WalshSpectrum, fwht, inverse_fwht, popcounts

DEFAULT_METRIC = "l2"
DEFAULT_B = 999
ESTIMATORS = ("fwht-debiased", "cross-split")


def _check_metric(metric):
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}; choose from {sorted(METRICS)}")


def count_distance(ca, cb, m, metric):
    """Distance between two empirical distributions of ``m`` samples each."""
    diff = (ca - cb).astype(np.float64)
    if metric == "l2":
        return float(np.sqrt(np.dot(diff, diff)) / m)
    return float(0.5 * np.abs(diff).sum() / m)


def _halves(s):
    m = len(s) // 2
    first = np.bincount(s.samples[:m], minlength=1 << s.n)
    second = np.bincount(s.samples[m : 2 * m], minlength=1 << s.n)
    return first.astype(np.int64), second.astype(np.int64), m


def sequential_half_distance(s, metric=DEFAULT_METRIC):
    """Distance between the first and second half of the stream.

    With an odd length the last sample is dropped.
    """
    _check_metric(metric)
    if len(s) < 2:
        raise ValueError("need at least 2 samples")
    first, second, m = _halves(s)
    return count_distance(first, second, m, metric)


@dataclass(frozen=True, eq=False)
class StationarityReport:
    observed_distance: float
    null_distances: np.ndarray = field(repr=False)
    p_value: float
    metric: str
    B: int
    seed: int
    n_samples: int
    dropped: int

    def to_dict(self):
        return {
            "observed_distance": self.observed_distance,
            "null_distances": [float(x) for x in self.null_distances],
            "p_value": self.p_value,
            "metric": self.metric,
            "B": self.B,
            "seed": self.seed,
            "n_samples": self.n_samples,
            "dropped": self.dropped,
        }


def stationarity_test(s, B=DEFAULT_B, metric=DEFAULT_METRIC, seed=0):
    """Compare the sequential split against ``B`` uniformly random equal splits.

    The p-value uses the add-one convention ``(1 + #{null >= observed}) / (B + 1)``.
    """
    _check_metric(metric)
    if len(s) < 100:
        raise ValueError("stationarity_test needs at least 100 samples")
    if B < 99:
        raise ValueError("B must be at least 99")
    first, second, m = _halves(s)
    observed = count_distance(first, second, m, metric)
    total = first + second
    pooled = np.ascontiguousarray(s.samples[: 2 * m])
    size = 1 << s.n
    null = np.empty(B)
    for b in range(B):
        keys = rng.generator(seed, "chaostats.split", b).bit_generator.random_raw(2 * m)
        ca = kernels.half_counts(pooled, keys, m, size)
        null[b] = count_distance(ca, total - ca, m, metric)
    p = (1 + int(np.count_nonzero(null >= observed))) / (B + 1)
    return StationarityReport(observed, null, p, metric, B, seed, len(s), len(s) - 2 * m)


def _spectrum_of_counts(counts):
    n = counts.shape[0].bit_length() - 1
    return fwht(counts * (float(1 << n) / counts.sum())).coefficients


def _pair_counts(n, max_degree):
    """``pairs[d, k]``: ordered pairs (S, T), |S|=|T|=d, with |S xor T| = k."""
    out = np.zeros((max_degree + 1, n + 1))
    for d in range(max_degree + 1):
        for k in range(0, n + 1, 2):
            if k // 2 <= d:
                out[d, k] = comb(k, k // 2) * comb(n - k, d - k // 2)
    return out


def _projection_variances(coef, phat, deg, max_degree):
    """Variance under ``phat`` of ``x -> sum_{|S|=d} coef[S] chi_S(x)``, per d."""
    out = np.empty(max_degree + 1)
    for d in range(max_degree + 1):
        h1 = inverse_fwht(WalshSpectrum(deg.shape[0].bit_length() - 1, np.where(deg == d, coef, 0.0)))
        mean = np.dot(phat, h1)
        out[d] = max(np.dot(phat, h1 * h1) - mean * mean, 0.0)
    return out


def estimate_degree_profile(s, max_degree=None, estimator="fwht-debiased", seed=None):
    """Estimate ``W_d`` for ``d <= max_degree`` with per-degree standard errors.

    ``fwht-debiased`` removes the sampling bias ``(1 - c^2)/(N - 1)`` from
    each squared empirical coefficient. ``cross-split`` multiplies the
    coefficients of the first and second half of the stream; it is
    unbiased only when the stream is stationary. Both estimators are
    deterministic; ``seed`` is accepted for interface symmetry.
    """
    if estimator not in ESTIMATORS:
        raise ValueError(f"unknown estimator {estimator!r}; choose from {ESTIMATORS}")
    n = s.n
    max_degree = n if max_degree is None else int(max_degree)
    if not 0 <= max_degree <= n:
        raise ValueError(f"max_degree must lie in [0, {n}]")
    N = len(s)
    if N < 1000:
        raise ValueError("estimate_degree_profile needs at least 1000 samples")
    deg = popcounts(n)
    counts = outcome_counts(s)
    phat = counts / N
    c = _spectrum_of_counts(counts)

    if estimator == "fwht-debiased":
        c2 = c * c
        sq = (N * c2 - 1.0) / (N - 1)
        sq[0] = 1.0
    else:
        a, b, m = _halves(s)
        sq = _spectrum_of_counts(a) * _spectrum_of_counts(b)

    w_all = np.bincount(deg, weights=sq, minlength=n + 1)
    weights = w_all[: max_degree + 1]

    # Hoeffding decomposition of the U-statistic behind each estimator
    zeta1 = _projection_variances(c, phat, deg, max_degree)
    second_moment = _pair_counts(n, max_degree) @ np.clip(w_all, 0.0, None)
    zeta2 = np.clip(second_moment - np.square(weights), 0.0, None)
    if estimator == "fwht-debiased":
        var = 4.0 * (N - 2) / (N * (N - 1)) * zeta1 + 2.0 / (N * (N - 1)) * zeta2
    else:
        var = 2.0 * (m - 1) / m**2 * zeta1 + zeta2 / m**2
    var[0] = 0.0
    return DegreeProfile(n, weights, np.sqrt(var))


@dataclass(frozen=True, eq=False)
class DecayFit:
    degrees: np.ndarray
    log_ratios: np.ndarray
    log_ratio_stderr: np.ndarray
    slope: float
    intercept: float
    r_squared: float

    @property
    def rho(self):
        """Effective per-bit correlation implied by ``W_d ~ rho**(2d)``."""
        return float(np.exp(self.slope / 2.0))

    def to_dict(self):
        return {
            "degrees": [int(d) for d in self.degrees],
            "log_ratios": [float(v) for v in self.log_ratios],
            "log_ratio_stderr": [float(v) for v in self.log_ratio_stderr],
            "slope": self.slope,
            "intercept": self.intercept,
            "r_squared": self.r_squared,
            "rho": self.rho,
        }


def _stderr(profile):
    if profile.stderr is None:
        return np.zeros_like(profile.weights)
    return profile.stderr


def usable_degrees(noisy, ref, degrees=None, floor=10.0):
    """Degrees where both weights are positive and exceed ``floor`` standard errors."""
    top = min(noisy.max_degree, ref.max_degree)
    if degrees is None:
        degrees = range(1, top + 1)
    keep = []
    for d in degrees:
        if not 0 <= d <= top:
            raise ValueError(f"degree {d} outside both profiles")
        ok = True
        for prof in (noisy, ref):
            w, se = prof.weights[d], _stderr(prof)[d]
            ok = ok and w > 0 and w > floor * se
        if ok:
            keep.append(d)
    return np.array(keep, dtype=np.int64)


def _line_fit(x, y):
    x = np.asarray(x, dtype=np.float64)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum(np.square(y - y.mean())))
    ss_res = float(np.sum(np.square(resid)))
    if ss_tot <= 1e-300:
        r2 = 1.0
    else:
        r2 = min(max(1.0 - ss_res / ss_tot, 0.0), 1.0)
    return float(slope), float(intercept), r2


def _log_ratio(noisy, ref, degrees):
    wn, wr = noisy.weights[degrees], ref.weights[degrees]
    y = np.log(wn / wr)
    se = np.sqrt(np.square(_stderr(noisy)[degrees] / wn) + np.square(_stderr(ref)[degrees] / wr))
    return y, se


def decay_fit(noisy, ref, degrees=None, floor=10.0):
    """Least-squares line through ``(d, log(W_d noisy / W_d ref))``."""
    if noisy.n != ref.n:
        raise ValueError("profiles must have the same n")
    use = usable_degrees(noisy, ref, degrees, floor)
    if use.size < 2:
        raise ValueError("fewer than 2 usable degrees for the decay fit")
    y, se = _log_ratio(noisy, ref, use)
    slope, intercept, r2 = _line_fit(use, y)
    return DecayFit(use, y, se, slope, intercept, r2)


def pooled_decay_fit(pairs, degrees=None, floor=10.0):
    """One line through the log ratios of several (noisy, ref) profile pairs."""
    xs, ys, ses = [], [], []
    for noisy, ref in pairs:
        use = usable_degrees(noisy, ref, degrees, floor)
        y, se = _log_ratio(noisy, ref, use)
        xs.append(use)
        ys.append(y)
        ses.append(se)
    x = np.concatenate(xs) if xs else np.array([], dtype=np.int64)
    if np.unique(x).size < 2:
        raise ValueError("fewer than 2 usable degrees for the decay fit")
    y = np.concatenate(ys)
    slope, intercept, r2 = _line_fit(x, y)
    return DecayFit(x, y, np.concatenate(ses), slope, intercept, r2)


def average_profiles(profiles):
    """Mean profile (standard errors combined in quadrature)."""
    profiles = list(profiles)
    if not profiles:
        raise EmptyInputError("empty input")
    w = np.mean([p.weights for p in profiles], axis=0)
    se = None
    if all(p.stderr is not None for p in profiles):
        se = np.sqrt(np.sum([np.square(p.stderr) for p in profiles], axis=0)) / len(profiles)
    return DegreeProfile(profiles[0].n, w, se)


def xeb_fidelity(s, ideal):
    """Linear cross-entropy fidelity ``2**n * mean_i p_ideal(x_i) - 1``."""
    if s.n != ideal.n:
        raise ValueError(f"sample bit count {s.n} does not match distribution ({ideal.n})")
    if len(s) == 0:
        raise EmptyInputError("empty input")
    return float((1 << s.n) * ideal.p[s.samples].mean() - 1.0)


def xeb_stderr(s, ideal):
    vals = (1 << s.n) * ideal.p[s.samples]
    return float(vals.std(ddof=1) / np.sqrt(len(s)))
