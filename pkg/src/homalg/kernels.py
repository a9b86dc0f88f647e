"""Select the elimination kernels: compiled if available, else pure Python.

Set ``HOMALG_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernels_py

BACKEND = "python"
rref_q = _kernels_py.rref_q
rref_p = _kernels_py.rref_p

if os.environ.get("HOMALG_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        BACKEND = "cython"
        rref_q = _ckernels.rref_q
        rref_p = _ckernels.rref_p

# C kernel works on int64; larger primes go through the fallback.
_C_PRIME_LIMIT = 2**31


def rref_rows(rows, ncols, field, limit=-1):
    """Reduced row echelon form of ``rows`` over ``field``."""
    p = field.characteristic
    if p == 0:
        return rref_q(rows, ncols, limit)
    if p < _C_PRIME_LIMIT:
        return rref_p(rows, ncols, p, limit)
    return _kernels_py.rref_p(rows, ncols, p, limit)
