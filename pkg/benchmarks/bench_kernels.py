"""Timing comparison of the compiled and pure-Python series kernels.

Runs the exp-recurrence orbit counter and the Euler-product expansion on
FF(2) tables at a few sizes, once per backend. The arithmetic is all
big-integer work in both cases, so the compiled kernel's win is loop
overhead only; this script reports the actual ratio on this machine.

Usage: python3 benchmarks/bench_kernels.py
"""

import time

from orbitstat.kernels import pure
from orbitstat import kernels


def ff_sigma(q, X):
    out = [0] * (X + 1)
    acc = 1
    for k in range(1, X + 1):
        acc *= q
        out[k] = acc
    return out


def time_call(fn, *args, repeats=3):
    best = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn(*args)
        elapsed = time.perf_counter() - t0
        best = elapsed if best is None else min(best, elapsed)
    return best, result


def main():
    print(f"active backend: {kernels.BACKEND}")
    if kernels.BACKEND == "pure":
        print("compiled kernel unavailable; timing the pure backend against itself")
    for X in (256, 512, 1024):
        sigma = ff_sigma(2, X)
        t_active, n_active = time_call(kernels.exp_logderiv_series, sigma, X)
        t_pure, n_pure = time_call(pure.exp_logderiv_series, sigma, X)
        assert n_active == n_pure, "backends disagree"
        P = [0] * (X + 1)
        for ell in range(1, X + 1):
            # direct inversion only needs the result to be consistent, not fast
            total = sum(
                _mobius(ell // n) * sigma[n] for n in range(1, ell + 1) if ell % n == 0
            )
            P[ell] = total // ell
        t_euler_active, e_active = time_call(kernels.euler_product_series, P, X)
        t_euler_pure, e_pure = time_call(pure.euler_product_series, P, X)
        assert e_active == e_pure, "backends disagree"
        assert e_active == n_active, "routes disagree"
        print(
            f"X={X:5d}  exp-recurrence: active {t_active*1e3:8.2f} ms  "
            f"pure {t_pure*1e3:8.2f} ms  ({t_pure/t_active:4.2f}x)   "
            f"euler-product: active {t_euler_active*1e3:8.2f} ms  "
            f"pure {t_euler_pure*1e3:8.2f} ms  ({t_euler_pure/t_euler_active:4.2f}x)"
        )


def _mobius(n):
    result = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    if n > 1:
        result = -result
    return result


if __name__ == "__main__":
    main()
