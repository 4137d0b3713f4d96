# cython: language_level=3
# cython: boundscheck=False, wraparound=False
"""Compiled t-norm kernels.

Hot-path twin of ``riskrules._pykernels``: identical operations in
identical order, so both backends return bit-identical doubles. Keep the
two files in sync; the pure module is the readable reference.
"""

from libc.math cimport INFINITY, log

LUKASIEWICZ = 0
PRODUCT = 1
GOEDEL = 2
LOGPRODUCT = 3

LOG_ZERO = -INFINITY


cpdef double tnorm_apply(int kind, double a, double b):
    """Binary t-norm; ``kind`` is one of the module-level operator codes."""
    cdef double t
    if kind == 0:  # lukasiewicz; 1.0 short-circuit keeps T(1, x) == x exact
        if a == 1.0:
            return b
        if b == 1.0:
            return a
        t = a + b - 1.0
        return t if t > 0.0 else 0.0
    if kind == 2:  # goedel
        return a if a < b else b
    return a * b   # product and logproduct share the exact product value


cpdef double tnorm_fold(int kind, list scores):
    """Left fold of the binary t-norm over a non-empty list of scores."""
    cdef Py_ssize_t i, n = len(scores)
    cdef double acc = scores[0]
    cdef double x
    if kind == 0:
        for i in range(1, n):
            x = scores[i]
            if acc == 1.0:
                acc = x
            elif x != 1.0:
                acc = acc + x - 1.0
                if acc < 0.0:
                    acc = 0.0
    elif kind == 2:
        for i in range(1, n):
            x = scores[i]
            if x < acc:
                acc = x
    else:
        for i in range(1, n):
            x = scores[i]
            acc = acc * x
    return acc


cpdef double tnorm_fold_log(list scores):
    """Sum of natural logs; ``LOG_ZERO`` marks an exact zero factor."""
    cdef Py_ssize_t i, n = len(scores)
    cdef double total = 0.0
    cdef double x
    for i in range(n):
        x = scores[i]
        if x == 0.0:
            return -INFINITY
        total += log(x)
    return total
