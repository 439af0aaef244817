"""Pure-numpy kernels. Reference path, and the fallback when numba is off."""
import numpy as np


def apply_1q_layer(state, qubits, mats):
    dim = state.shape[0]
    for k in range(qubits.shape[0]):
        q = int(qubits[k])
        psi = state.reshape(dim >> (q + 1), 2, 1 << q)
        u = mats[k]
        a = psi[:, 0, :].copy()
        b = psi[:, 1, :]
        psi[:, 0, :] = u[0, 0] * a + u[0, 1] * b
        psi[:, 1, :] = u[1, 0] * a + u[1, 1] * b


def apply_2q_layer(state, pairs, mats):
    dim = state.shape[0]
    n = dim.bit_length() - 1
    for k in range(pairs.shape[0]):
        qa, qb = int(pairs[k, 0]), int(pairs[k, 1])
        psi = state.reshape((2,) * n)
        ax_a, ax_b = n - 1 - qa, n - 1 - qb
        u = mats[k].reshape(2, 2, 2, 2)
        out = np.tensordot(u, psi, axes=([2, 3], [ax_a, ax_b]))
        out = np.moveaxis(out, [0, 1], [ax_a, ax_b])
        state[:] = out.reshape(dim)


def fwht_inplace(a):
    """Unnormalized Walsh-Hadamard butterfly, natural (bitmask) order."""
    size = a.shape[0]
    h = 1
    while h < size:
        v = a.reshape(-1, 2, h)
        x = v[:, 0, :].copy()
        v[:, 0, :] += v[:, 1, :]
        v[:, 1, :] = x - v[:, 1, :]
        h <<= 1


def depolarize_pair(vec, hi_bit, lo_bit, rate):
    """Depolarize one qubit of a vectorized density matrix.

    ``hi_bit`` indexes the row copy of the qubit and ``lo_bit`` the column
    copy inside the flattened 2n-bit index.
    """
    dim = vec.shape[0]
    v = vec.reshape(dim >> (hi_bit + 1), 2, 1 << (hi_bit - lo_bit - 1), 2, 1 << lo_bit)
    d0 = v[:, 0, :, 0, :].copy()
    d1 = v[:, 1, :, 1, :]
    half = 0.5 * rate
    v[:, 0, :, 0, :] = (1.0 - half) * d0 + half * d1
    v[:, 1, :, 1, :] = (1.0 - half) * d1 + half * d0
    v[:, 0, :, 1, :] *= 1.0 - rate
    v[:, 1, :, 0, :] *= 1.0 - rate


def half_counts(samples, keys, m, size):
    """Outcome counts of the ``m`` samples holding the smallest keys (uint64)."""
    thr = np.partition(keys, m - 1)[m - 1]
    return np.bincount(samples[keys <= thr], minlength=size).astype(np.int64)
