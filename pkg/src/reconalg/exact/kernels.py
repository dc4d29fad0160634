"""Sparse integer polynomial product kernels.

Two interchangeable backends multiply bivariate polynomials whose
coefficients fit in int64:

* ``numba``  -- compiled double loop + sort/reduce (default)
* ``numpy``  -- outer products + ``np.unique``/``np.add.at``

The backend is chosen once at import time from ``RECONALG_BACKEND``
(``numba`` or ``numpy``).  Setting ``RECONALG_DISABLE_NUMBA=1`` forces
``numpy``.  If numba cannot be imported the numpy path is used.

Callers are responsible for the overflow guard (see :func:`fits_int64`);
the kernels themselves do fixed-width arithmetic.
"""

from __future__ import annotations

import os

import numpy as np

INT64_MAX = 2**63 - 1


def _select_backend() -> str:
    if os.environ.get("RECONALG_DISABLE_NUMBA", "").strip() not in ("", "0"):
        return "numpy"
    wanted = os.environ.get("RECONALG_BACKEND", "numba").strip().lower()
    if wanted not in ("numba", "numpy"):
        raise ValueError(f"RECONALG_BACKEND must be 'numba' or 'numpy', got {wanted!r}")
    if wanted == "numba":
        try:
            import numba  # noqa: F401
        except ImportError:  # pragma: no cover - numba is a declared dependency
            return "numpy"
    return wanted


BACKEND = _select_backend()


def fits_int64(max_a: int, max_b: int, n_terms: int) -> bool:
    """True if every accumulated coefficient is bounded away from int64 overflow."""
    return max_a * max_b * n_terms <= INT64_MAX


def mul_numpy(
    akey: np.ndarray, acoef: np.ndarray, bkey: np.ndarray, bcoef: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    keys = np.add.outer(akey, bkey).ravel()
    coefs = np.multiply.outer(acoef, bcoef).ravel()
    uniq, inverse = np.unique(keys, return_inverse=True)
    out = np.zeros(uniq.shape[0], dtype=np.int64)
    np.add.at(out, inverse, coefs)
    keep = out != 0
    return uniq[keep], out[keep]


def _mul_loop(akey, acoef, bkey, bcoef):
    n = akey.shape[0]
    m = bkey.shape[0]
    keys = np.empty(n * m, dtype=np.int64)
    coefs = np.empty(n * m, dtype=np.int64)
    k = 0
    for i in range(n):
        ka = akey[i]
        ca = acoef[i]
        for j in range(m):
            keys[k] = ka + bkey[j]
            coefs[k] = ca * bcoef[j]
            k += 1
    order = np.argsort(keys, kind="mergesort")
    out_keys = np.empty(n * m, dtype=np.int64)
    out_coefs = np.empty(n * m, dtype=np.int64)
    count = 0
    for idx in order:
        key = keys[idx]
        if count > 0 and out_keys[count - 1] == key:
            out_coefs[count - 1] += coefs[idx]
        else:
            out_keys[count] = key
            out_coefs[count] = coefs[idx]
            count += 1
    nonzero = 0
    for i in range(count):
        if out_coefs[i] != 0:
            out_keys[nonzero] = out_keys[i]
            out_coefs[nonzero] = out_coefs[i]
            nonzero += 1
    return out_keys[:nonzero], out_coefs[:nonzero]


if BACKEND == "numba":
    import numba

    mul_numba = numba.njit(cache=True, nogil=True)(_mul_loop)
else:
    mul_numba = None

mul_python_loop = _mul_loop


def sparse_mul(
    akey: np.ndarray, acoef: np.ndarray, bkey: np.ndarray, bcoef: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Multiply two encoded sparse polynomials with the active backend.

    Keys encode exponent pairs as ``a * stride + b``; the caller picks a
    stride large enough that key addition never carries.
    """
    if mul_numba is not None:
        return mul_numba(akey, acoef, bkey, bcoef)
    return mul_numpy(akey, acoef, bkey, bcoef)
