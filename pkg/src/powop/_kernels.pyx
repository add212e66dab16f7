# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled dense coefficient kernels.

Moduli below 2**62 run on machine words with 128-bit accumulation; larger
moduli use Kronecker substitution on Python integers.
"""

from libc.stdlib cimport malloc, free

from powop._kernels_py import convolve_mod_kronecker, KRONECKER_THRESHOLD

ctypedef unsigned long long u64

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"

cdef object WORD_LIMIT = 1 << 62


cdef list _convolve_native(list a, list b, u64 m):
    cdef Py_ssize_t la = len(a), lb = len(b), i, j, k, lo, hi, size
    cdef u64 *xa
    cdef u64 *xb
    cdef u128 acc
    cdef int pending
    size = la + lb - 1
    xa = <u64 *> malloc(la * sizeof(u64))
    xb = <u64 *> malloc(lb * sizeof(u64))
    if xa == NULL or xb == NULL:
        free(xa)
        free(xb)
        raise MemoryError()
    out = [0] * size
    try:
        for i in range(la):
            xa[i] = <u64> a[i]
        for j in range(lb):
            xb[j] = <u64> b[j]
        for k in range(size):
            lo = k - lb + 1 if k >= lb else 0
            hi = k if k < la - 1 else la - 1
            acc = 0
            pending = 0
            for i in range(lo, hi + 1):
                acc += <u128> xa[i] * xb[k - i]
                pending += 1
                # products are < 2**124; reduce before the sum can overflow
                if pending == 15:
                    acc %= m
                    pending = 0
            out[k] = <u64> (acc % m)
    finally:
        free(xa)
        free(xb)
    return out


def convolve_mod(list a, list b, modulus):
    """Return the coefficient list of ``a * b`` reduced mod ``modulus``."""
    if not a or not b:
        return []
    if modulus < WORD_LIMIT:
        return _convolve_native(a, b, <u64> modulus)
    if len(a) * len(b) < KRONECKER_THRESHOLD:
        return _convolve_objects(a, b, modulus)
    return convolve_mod_kronecker(a, b, modulus)


cdef list _convolve_objects(list a, list b, object modulus):
    cdef Py_ssize_t la = len(a), lb = len(b), i, j
    out = [0] * (la + lb - 1)
    for i in range(la):
        x = a[i]
        if x:
            for j in range(lb):
                out[i + j] += x * b[j]
    return [c % modulus for c in out]


def axpy_mod(list acc, scalar, list x, Py_ssize_t offset, modulus):
    """In-place ``acc[offset + i] += scalar * x[i]`` followed by reduction."""
    cdef Py_ssize_t i, n = len(x)
    for i in range(n):
        acc[offset + i] = (acc[offset + i] + scalar * x[i]) % modulus
    return acc
