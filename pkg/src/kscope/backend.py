"""Numerical backend selection.

The grid sweeps in :mod:`kscope.kernels` exist in two flavors: numba
``@njit`` kernels (fast, parallel) and plain numpy/LAPACK loops.  The
active flavor is chosen once at import time:

* ``KSCOPE_BACKEND=numpy``  forces the pure-numpy path,
* ``KSCOPE_BACKEND=numba``  requires numba (ImportError if missing),
* unset: numba if importable, numpy otherwise.

``KSCOPE_THREADS`` caps the parallelism of the numba kernels.
"""

import os

_env = os.environ.get("KSCOPE_BACKEND", "").strip().lower()

if _env == "numpy":
    HAVE_NUMBA = False
elif _env == "numba":
    import numba  # noqa: F401  -- fail loudly if requested but absent

    HAVE_NUMBA = True
elif _env == "":
    try:
        import numba  # noqa: F401

        HAVE_NUMBA = True
    except ImportError:
        HAVE_NUMBA = False
else:
    raise ValueError(f"KSCOPE_BACKEND must be 'numba' or 'numpy', got {_env!r}")

BACKEND = "numba" if HAVE_NUMBA else "numpy"

if HAVE_NUMBA:
    _threads = os.environ.get("KSCOPE_THREADS", "").strip()
    if _threads:
        import numba

        numba.set_num_threads(max(1, min(int(_threads), numba.config.NUMBA_NUM_THREADS)))
