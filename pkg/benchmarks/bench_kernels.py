"""Compare the sparse product backends on integer bivariate polynomials.

Usage: python3 benchmarks/bench_kernels.py [--repeats R] [--sizes 10 40 160]

Each size s multiplies (x + y + 1)^s by (x - y)^s.  Timings are the best
of R runs.  ``dict`` is the pure-Python fallback used for Fraction or
cyclotomic coefficients; ``numpy`` and ``numba`` are the int64 kernels.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from reconalg.exact import BivarPoly
from reconalg.exact import bivar as bivar_mod
from reconalg.exact import kernels


def _encode(p: BivarPoly, stride: int) -> tuple[np.ndarray, np.ndarray]:
    keys = np.fromiter((a * stride + b for a, b in p.terms), dtype=np.int64, count=len(p.terms))
    coefs = np.fromiter(p.terms.values(), dtype=np.int64, count=len(p.terms))
    return keys, coefs


def _best(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None) -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--sizes", type=int, nargs="+", default=[8, 16, 32, 64])
    args = parser.parse_args(argv)

    x, y = BivarPoly.x(), BivarPoly.y()
    numba_kernel = kernels.mul_numba
    if numba_kernel is None:
        import numba

        numba_kernel = numba.njit(cache=True)(kernels.mul_python_loop)
    print(f"active backend: {kernels.BACKEND}")
    print(f"{'size':>5} {'pairs':>9} {'dict ms':>9} {'numpy ms':>9} {'numba ms':>9} {'numba/numpy':>11}")
    for s in args.sizes:
        p = (x + y + 1) ** s
        q = (x - y) ** s
        if not kernels.fits_int64(max(map(abs, p.terms.values())), max(map(abs, q.terms.values())), min(len(p), len(q))):
            print(f"{s:>5} skipped: coefficients exceed the int64 guard")
            continue
        stride = 2 * s + 1
        ak, ac = _encode(p, stride)
        bk, bc = _encode(q, stride)
        numba_kernel(ak[:1], ac[:1], bk[:1], bc[:1])  # compile outside the timing
        ref_k, ref_c = kernels.mul_numpy(ak, ac, bk, bc)
        nb_k, nb_c = numba_kernel(ak, ac, bk, bc)
        assert ref_k.tolist() == nb_k.tolist() and ref_c.tolist() == nb_c.tolist()
        t_dict = _best(lambda: bivar_mod._dict_mul(p.terms, q.terms), args.repeats)
        t_np = _best(lambda: kernels.mul_numpy(ak, ac, bk, bc), args.repeats)
        t_nb = _best(lambda: numba_kernel(ak, ac, bk, bc), args.repeats)
        pairs = len(p) * len(q)
        print(f"{s:>5} {pairs:>9} {t_dict * 1e3:>9.2f} {t_np * 1e3:>9.2f} {t_nb * 1e3:>9.2f} {t_nb / t_np:>11.2f}")


if __name__ == "__main__":
    main()
