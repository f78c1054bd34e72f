# cython: language_level=3
"""Cython twin of kernels.pure: same big-integer kernels with C loop frames.

Coefficients are arbitrary-precision Python ints, so the arithmetic itself
stays in CPython's bigint routines; the win is loop/index overhead, which
dominates at small coefficient sizes. Output must be bit-identical to the
pure versions.
"""

BACKEND = "cython"


def exp_logderiv_series(sigma, Py_ssize_t X):
    """Coefficients N_0..N_X of exp(sum sigma[k] z^k / k); see kernels.pure."""
    cdef Py_ssize_t n, k
    if len(sigma) < X + 1:
        raise ValueError("sigma table shorter than requested degree")
    cdef list sig = list(sigma[: X + 1])
    cdef list N = [0] * (X + 1)
    N[0] = 1
    cdef object acc
    for n in range(1, X + 1):
        acc = 0
        for k in range(1, n + 1):
            acc += sig[k] * N[n - k]
        q, r = divmod(acc, n)
        if r:
            raise ValueError(f"non-integral N_{n}")
        N[n] = q
    return N


def inverse_factor_multiply(coeffs, Py_ssize_t ell, count, Py_ssize_t X):
    """Multiply by (1 - z^ell)^(-count) truncated at degree X; see kernels.pure."""
    cdef Py_ssize_t n, m, shift
    if count < 0:
        raise ValueError("negative factor exponent")
    cdef list src = list(coeffs[: X + 1])
    if count == 0:
        return src
    cdef list out = list(src)
    cdef object binom = 1
    cdef object c
    m = 1
    while ell * m <= X:
        binom = binom * (count + m - 1) // m
        shift = ell * m
        for n in range(shift, X + 1):
            c = src[n - shift]
            if c:
                out[n] = out[n] + binom * c
        m += 1
    return out


def euler_product_series(P, Py_ssize_t X):
    """Coefficients of prod (1 - z^l)^(-P[l]) up to degree X; see kernels.pure."""
    cdef Py_ssize_t ell
    cdef list coeffs = [0] * (X + 1)
    coeffs[0] = 1
    cdef Py_ssize_t plen = len(P)
    for ell in range(1, X + 1):
        if ell < plen and P[ell]:
            coeffs = inverse_factor_multiply(coeffs, ell, P[ell], X)
    return coeffs
