# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled pair-enumeration kernel for ordinal association statistics."""


def count_pairs(double[::1] ref, double[::1] pred):
    """Exact counts over all i<j pairs.

    Returns (concordant, discordant, tied_ref, tied_pred); tie counts
    include pairs tied on both sides.
    """
    cdef Py_ssize_t n = ref.shape[0]
    cdef Py_ssize_t i, j
    cdef long long c = 0, d = 0, tr = 0, tp = 0
    cdef double dr, dp
    for i in range(n):
        for j in range(i + 1, n):
            dr = ref[i] - ref[j]
            dp = pred[i] - pred[j]
            if dr == 0:
                tr += 1
            if dp == 0:
                tp += 1
            if dr != 0 and dp != 0:
                if (dr > 0) == (dp > 0):
                    c += 1
                else:
                    d += 1
    return c, d, tr, tp
