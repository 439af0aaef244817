"""numba-compiled kernels, mirroring ``_kernels_numpy`` one for one."""
import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def apply_1q_layer(state, qubits, mats):
    dim = state.shape[0]
    for k in range(qubits.shape[0]):
        stride = 1 << qubits[k]
        u00 = mats[k, 0, 0]
        u01 = mats[k, 0, 1]
        u10 = mats[k, 1, 0]
        u11 = mats[k, 1, 1]
        for base in range(0, dim, 2 * stride):
            for j in range(base, base + stride):
                a = state[j]
                b = state[j + stride]
                state[j] = u00 * a + u01 * b
                state[j + stride] = u10 * a + u11 * b


@njit(cache=True, nogil=True)
def apply_2q_layer(state, pairs, mats):
    dim = state.shape[0]
    for k in range(pairs.shape[0]):
        ma = 1 << pairs[k, 0]
        mb = 1 << pairs[k, 1]
        u = mats[k]
        for i in range(dim):
            if i & ma or i & mb:
                continue
            i01 = i | mb
            i10 = i | ma
            i11 = i | ma | mb
            v0 = state[i]
            v1 = state[i01]
            v2 = state[i10]
            v3 = state[i11]
            state[i] = u[0, 0] * v0 + u[0, 1] * v1 + u[0, 2] * v2 + u[0, 3] * v3
            state[i01] = u[1, 0] * v0 + u[1, 1] * v1 + u[1, 2] * v2 + u[1, 3] * v3
            state[i10] = u[2, 0] * v0 + u[2, 1] * v1 + u[2, 2] * v2 + u[2, 3] * v3
            state[i11] = u[3, 0] * v0 + u[3, 1] * v1 + u[3, 2] * v2 + u[3, 3] * v3


@njit(cache=True, nogil=True)
def fwht_inplace(a):
    size = a.shape[0]
    h = 1
    while h < size:
        for base in range(0, size, 2 * h):
            for j in range(base, base + h):
                x = a[j]
                y = a[j + h]
                a[j] = x + y
                a[j + h] = x - y
        h <<= 1


@njit(cache=True, nogil=True)
def depolarize_pair(vec, hi_bit, lo_bit, rate):
    dim = vec.shape[0]
    mh = 1 << hi_bit
    ml = 1 << lo_bit
    half = 0.5 * rate
    keep = 1.0 - rate
    for i in range(dim):
        if i & mh or i & ml:
            continue
        d0 = vec[i]
        d1 = vec[i | mh | ml]
        vec[i] = (1.0 - half) * d0 + half * d1
        vec[i | mh | ml] = (1.0 - half) * d1 + half * d0
        vec[i | mh] *= keep
        vec[i | ml] *= keep


@njit(cache=True, nogil=True)
def half_counts(samples, keys, m, size):
    # m-th smallest of uniform uint64 keys: bucket by the top bits, sort one bucket
    total = keys.shape[0]
    bits = 1
    while (2 << bits) * 16 <= total:
        bits += 1
    shift = np.uint64(64 - bits)
    fill = np.zeros(1 << bits, dtype=np.int64)
    for i in range(total):
        fill[np.int64(keys[i] >> shift)] += 1
    below = 0
    b = 0
    while below + fill[b] < m:
        below += fill[b]
        b += 1
    inside = np.empty(fill[b], dtype=np.uint64)
    j = 0
    for i in range(total):
        if np.int64(keys[i] >> shift) == b:
            inside[j] = keys[i]
            j += 1
    inside.sort()
    thr = inside[m - below - 1]
    counts = np.zeros(size, dtype=np.int64)
    for i in range(total):
        counts[samples[i]] += keys[i] <= thr
    return counts
