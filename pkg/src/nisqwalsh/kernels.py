"""Hot loops behind one import; see ``_accel`` for the selection flag."""
from ._accel import USE_NUMBA

if USE_NUMBA:
    from ._kernels_numba import (  # noqa: F401
        apply_1q_layer,
        apply_2q_layer,
        depolarize_pair,
        fwht_inplace,
        half_counts,
    )

    BACKEND = "numba"
else:
    from ._kernels_numpy import (  # noqa: F401
        apply_1q_layer,
        apply_2q_layer,
        depolarize_pair,
        fwht_inplace,
        half_counts,
    )

    BACKEND = "numpy"
