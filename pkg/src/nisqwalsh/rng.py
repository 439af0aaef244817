"""Counter-based random streams.

Every random draw in the package comes from a Philox generator keyed by
``(seed, tag)`` and positioned by a block counter. Work is cut into fixed
blocks of ``BLOCK`` items, so a stream is reproduced exactly whether the
blocks are produced sequentially or in parallel.
"""
import zlib

import numpy as np

BLOCK = 1 << 16


def _key(seed, tag):
    if seed is None or int(seed) < 0:
        raise ValueError("seed must be a nonnegative integer")
    ss = np.random.SeedSequence([int(seed), zlib.crc32(tag.encode())])
    return ss.generate_state(2, np.uint64)


def generator(seed, tag, counter=0):
    """Generator for block ``counter`` of stream ``(seed, tag)``."""
    bitgen = np.random.Philox(key=_key(seed, tag), counter=int(counter) << 128)
    return np.random.Generator(bitgen)


def blocks(count, block=BLOCK):
    """Yield ``(block_index, start, stop)`` covering ``range(count)``."""
    for k, start in enumerate(range(0, count, block)):
        yield k, start, min(start + block, count)


def uniforms(seed, tag, count, width=None, block=BLOCK):
    """``count`` rows of uniforms (optionally ``width`` per row), block keyed."""
    shape = (count,) if width is None else (count, width)
    out = np.empty(shape)
    for k, start, stop in blocks(count, block):
        g = generator(seed, tag, k)
        sub = (stop - start,) if width is None else (stop - start, width)
        out[start:stop] = g.random(sub)
    return out
