"""Select the compiled (numba) or pure-numpy kernel path.

Set ``NISQWALSH_DISABLE_NUMBA=1`` to force the numpy path. The two paths
agree to floating-point rounding; integer kernels agree exactly. Replays
are byte-identical only on the same path, which reports record.
"""
import os

DISABLE_ENV = "NISQWALSH_DISABLE_NUMBA"

try:
    import numba  # noqa: F401

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - depends on environment
    HAVE_NUMBA = False


def numba_requested():
    return os.environ.get(DISABLE_ENV, "").strip().lower() not in ("1", "true", "yes", "on")


USE_NUMBA = HAVE_NUMBA and numba_requested()
