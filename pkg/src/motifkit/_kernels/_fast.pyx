# cython: boundscheck=False, wraparound=False, language_level=3
"""Compiled mask-sweep kernels; contracts match _slow.py exactly."""

import numpy as np

cimport cython
from libc.stdint cimport int64_t, uint32_t, uint64_t

BACKEND = "compiled"


def subset_sign_transform(values):
    """f'[T] = Σ_{A⊆T} f[A]·(−1)^{|T|−|A|}; big-int fallback on overflow risk."""
    n = len(values)
    if n & (n - 1):
        raise ValueError("length must be a power of two")
    m = n.bit_length() - 1
    if n == 0:
        return []
    hi = int(max(values))
    lo = int(min(values))
    if max(abs(hi), abs(lo)) >= (1 << (62 - m)):
        out = [int(v) for v in values]
        for i in range(m):
            bit = 1 << i
            for x in range(n):
                if x & bit:
                    out[x] -= out[x ^ bit]
        return out
    arr = np.array(values, dtype=np.int64)
    _sign_transform_i64(arr, m)
    return arr


@cython.cdivision(True)
cdef void _sign_transform_i64(int64_t[::1] f, int m) noexcept nogil:
    cdef Py_ssize_t n = f.shape[0]
    cdef Py_ssize_t bit, x
    cdef int i
    for i in range(m):
        bit = 1 << i
        for x in range(n):
            if x & bit:
                f[x] -= f[x ^ bit]


def popcount_signed_sum(values, int m):
    """Σ_A values[A]·(−1)^{m−popcount(A)}."""
    arr = np.ascontiguousarray(values, dtype=np.int64)
    if arr.shape[0] != (1 << m):
        raise ValueError(f"values must have length 2^{m}")
    return _pop_signed(arr, m)


cdef object _pop_signed(int64_t[::1] f, int m):
    cdef uint64_t x
    cdef Py_ssize_t i, n = f.shape[0]
    cdef int64_t total = 0
    cdef int pc
    with nogil:
        for i in range(n):
            x = <uint64_t> i
            pc = 0
            while x:
                x &= x - 1
                pc += 1
            if (pc & 1) == (m & 1):
                total += f[i]
            else:
                total -= f[i]
    return int(total)


def orbit_min_labels(perms, int m, chunk=None):
    """Minimum over {x} ∪ {g(x) : g ∈ perms} for every mask x; perms must
    enumerate the whole group for this to be the orbit minimum."""
    cdef Py_ssize_t n = 1 << m
    pmat = np.array([list(p) for p in perms], dtype=np.int32)
    labels = np.arange(n, dtype=np.uint32)
    if pmat.size:
        _orbit_min(labels, np.ascontiguousarray(pmat, dtype=np.int32), m)
    return labels


cdef void _orbit_min(uint32_t[::1] labels, int[:, ::1] perms, int m) noexcept nogil:
    cdef Py_ssize_t n = labels.shape[0]
    cdef Py_ssize_t g, ngroups = perms.shape[0]
    cdef Py_ssize_t x
    cdef uint32_t mapped, best
    cdef int i
    for x in range(n):
        best = labels[x]
        for g in range(ngroups):
            mapped = 0
            for i in range(m):
                if (x >> i) & 1:
                    mapped |= (<uint32_t> 1) << perms[g, i]
            if mapped < best:
                best = mapped
        labels[x] = best
