"""numpy fallback implementations of the mask-sweep kernels.

Same contracts as the compiled versions in _fast.pyx; selected at import
time by the package __init__ when the extension is unavailable.
"""

from __future__ import annotations

import numpy as np

BACKEND = "numpy"


def _sign_transform_int64(arr: np.ndarray) -> np.ndarray:
    n = arr.shape[0]
    m = n.bit_length() - 1
    for i in range(m):
        view = arr.reshape(-1, 2, 1 << i)
        view[:, 1, :] -= view[:, 0, :]
    return arr


def subset_sign_transform(values):
    """f'[T] = Σ_{A⊆T} f[A]·(−1)^{|T|−|A|}, in place over a copy.

    Falls back to exact big-int arithmetic when int64 could overflow.
    """
    n = len(values)
    if n & (n - 1):
        raise ValueError("length must be a power of two")
    m = n.bit_length() - 1
    try:
        hi = int(max(values))
        lo = int(min(values))
    except ValueError:
        return []
    # worst-case growth is 2^m · max|f|
    if max(abs(hi), abs(lo)) < (1 << (62 - m)):
        arr = np.array(values, dtype=np.int64)
        return _sign_transform_int64(arr)
    out = [int(v) for v in values]
    for i in range(m):
        bit = 1 << i
        for x in range(n):
            if x & bit:
                out[x] -= out[x ^ bit]
    return out


def popcount_signed_sum(values, m: int) -> int:
    """Σ_A values[A]·(−1)^{m−popcount(A)} without materializing a transform."""
    arr = np.asarray(values, dtype=np.int64)
    n = 1 << m
    if arr.shape[0] != n:
        raise ValueError(f"values must have length 2^{m}")
    total = 0
    chunk = 1 << 22
    for start in range(0, n, chunk):
        stop = min(start + chunk, n)
        idx = np.arange(start, stop, dtype=np.uint64)
        pc = np.zeros(stop - start, dtype=np.uint64)
        x = idx
        while x.any():
            pc += x & 1
            x = x >> np.uint64(1)
        sign = np.where((pc.astype(np.int64) & 1) == (m & 1), 1, -1)
        total += int(np.dot(sign, arr[start:stop]))
    return total


def orbit_min_labels(perms, m: int, chunk: int = 1 << 22) -> np.ndarray:
    """Minimum of each mask's orbit under bit-permutations.

    perms must list EVERY group element (identity optional): the result for
    mask x is min over {x} ∪ {g(x) : g ∈ perms}, which is the orbit minimum
    only when the whole group is supplied.
    """
    n = 1 << m
    labels = np.empty(n, dtype=np.uint32)
    plist = [np.asarray(p, dtype=np.uint32) for p in perms]
    for start in range(0, n, chunk):
        stop = min(start + chunk, n)
        base = np.arange(start, stop, dtype=np.uint32)
        best = base.copy()
        for p in plist:
            mapped = np.zeros(stop - start, dtype=np.uint32)
            for i in range(m):
                mapped |= ((base >> np.uint32(i)) & np.uint32(1)) << np.uint32(
                    int(p[i])
                )
            np.minimum(best, mapped, out=best)
        labels[start:stop] = best
    return labels
