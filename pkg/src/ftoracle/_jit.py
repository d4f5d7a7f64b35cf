"""Backend switch for the hot kernels.

Kernels are written in the numba-compatible subset of Python and decorated
with :func:`jit`.  With ``FTORACLE_NO_JIT=1`` in the environment (or when numba
is not importable) the decorator is a no-op and the same code runs in the
interpreter on numpy arrays.  The flag is read once, at import time.
"""
import os

_flag = os.environ.get("FTORACLE_NO_JIT", "").strip().lower()
JIT_REQUESTED = _flag in ("", "0", "false", "no", "off")

numba = None
if JIT_REQUESTED:
    try:
        import numba
    except ImportError:  # pragma: no cover - numba is a declared dependency
        numba = None

NUMBA_ENABLED = numba is not None
BACKEND = "numba" if NUMBA_ENABLED else "python"


def jit(func):
    if NUMBA_ENABLED:
        return numba.njit(cache=True, nogil=True)(func)
    # mirror numba's dispatcher attribute so callers can always reach the
    # interpreted version
    func.py_func = func
    return func
