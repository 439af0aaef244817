"""Compare the numba and pure-numpy kernel paths.

Part 1 times each kernel from both implementations in this process.
Part 2 runs end-to-end workloads in child processes, once per value of
NISQWALSH_DISABLE_NUMBA, since the path is fixed at import time.

    python benchmarks/bench_kernels.py [--repeat 5] [--quick]
"""
import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np

from nisqwalsh import _kernels_numpy
from nisqwalsh._accel import DISABLE_ENV, HAVE_NUMBA


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def kernel_cases(n, g):
    dim = 1 << n
    psi = (g.normal(size=dim) + 1j * g.normal(size=dim)) / np.sqrt(2 * dim)
    q1 = np.arange(n, dtype=np.int64)
    m1 = np.tile(np.array([[1, 1], [1, -1]], complex) / np.sqrt(2), (n, 1, 1))
    pairs = np.arange(n - n % 2, dtype=np.int64).reshape(-1, 2)
    m2 = np.tile(np.eye(4, dtype=complex)[[0, 1, 3, 2]], (len(pairs), 1, 1))
    dens = max(2, n // 2)
    rho = np.zeros(1 << (2 * dens), complex)
    rho[:: (1 << dens) + 1] = 1.0 / (1 << dens)
    samples = g.integers(0, dim, size=100_000)
    keys = g.integers(0, 2**64, size=samples.size, dtype=np.uint64)
    real = g.random(dim)
    return {
        f"apply_1q_layer n={n}": lambda k: k.apply_1q_layer(psi.copy(), q1, m1),
        f"apply_2q_layer n={n}": lambda k: k.apply_2q_layer(psi.copy(), pairs, m2),
        f"fwht_inplace n={n}": lambda k: k.fwht_inplace(real.copy()),
        f"depolarize_pair n={dens}": lambda k: [
            k.depolarize_pair(v, q + dens, q, 0.01) for v in [rho.copy()] for q in range(dens)
        ],
        "half_counts N=1e5": lambda k: k.half_counts(samples, keys, samples.size // 2, dim),
    }


WORKLOAD = r"""
import json, sys, time
from nisqwalsh import kernels
from nisqwalsh.noise import GateNoise
from nisqwalsh.qsim import generate_random_circuit, sample_ideal, sample_trajectories
from nisqwalsh.chaostats import stationarity_test
count, traj = int(sys.argv[1]), int(sys.argv[2])
c = generate_random_circuit(3, 4, 14, seed=0)
sample_trajectories(c, GateNoise(0.01, 0.01), None, 100, seed=0)  # warm-up / compile
out = {"backend": kernels.BACKEND}
t = time.perf_counter(); s = sample_ideal(c, count, seed=1); out["ideal samples"] = time.perf_counter() - t
t = time.perf_counter(); sample_trajectories(c, GateNoise(0.01, 0.01), None, traj, seed=1)
out["trajectories"] = time.perf_counter() - t
t = time.perf_counter(); stationarity_test(s[:100_000], B=199, seed=0); out["stationarity B=199"] = time.perf_counter() - t
print(json.dumps(out))
"""


def end_to_end(disable, count, traj):
    env = dict(os.environ, **{DISABLE_ENV: "1" if disable else "0"})
    r = subprocess.run(
        [sys.executable, "-c", WORKLOAD, str(count), str(traj)],
        env=env, capture_output=True, text=True, check=True,
    )
    return json.loads(r.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--n", type=int, default=16)
    ap.add_argument("--quick", action="store_true", help="smaller end-to-end workloads")
    args = ap.parse_args()

    impls = {"numpy": _kernels_numpy}
    if HAVE_NUMBA:
        from nisqwalsh import _kernels_numba

        impls["numba"] = _kernels_numba
    else:
        print("numba not installed: timing the numpy path only")

    g = np.random.default_rng(0)
    cases = kernel_cases(args.n, g)
    print(f"{'kernel':28s}" + "".join(f"{name:>12s}" for name in impls) + "     speedup")
    for label, fn in cases.items():
        row = {}
        for name, k in impls.items():
            fn(k)  # compile / warm caches
            row[name] = best_of(lambda: fn(k), args.repeat)
        line = f"{label:28s}" + "".join(f"{row[name] * 1e3:10.3f}ms" for name in impls)
        if "numba" in row:
            line += f"  {row['numpy'] / row['numba']:8.1f}x"
        print(line)

    count, traj = (100_000, 20_000) if args.quick else (500_000, 200_000)
    print(f"\nend to end (12 qubits, depth 14, {count} ideal samples, {traj} trajectories)")
    paths = [True] + ([False] if HAVE_NUMBA else [])
    results = [end_to_end(disable, count, traj) for disable in paths]
    for key in ("ideal samples", "trajectories", "stationarity B=199"):
        print(f"{key:28s}" + "".join(f"{r[key]:10.2f}s ({r['backend']})" for r in results))


if __name__ == "__main__":
    main()
