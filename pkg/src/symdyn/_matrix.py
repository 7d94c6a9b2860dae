"""Exact integer matrix helpers.

Powers go through int64 numpy when the entries provably fit, and through
object arrays of Python ints otherwise, so results are always exact.
"""

import numpy as np

_INT64_SAFE = 2**62


def as_array(rows, n=None):
    n = len(rows) if n is None else n
    return np.array(rows, dtype=np.int64).reshape(n, n)


def _fits(a: np.ndarray, k: int) -> bool:
    n = a.shape[0]
    m = int(np.abs(a).max()) if a.size else 0
    return max(n * m, 1) ** max(k, 1) < _INT64_SAFE


def matpow(a, k: int) -> np.ndarray:
    """A^k exactly; the result has dtype int64 or object."""
    a = np.asarray(a)
    n = a.shape[0]
    if k == 0:
        return np.eye(n, dtype=np.int64)
    if _fits(a, k):
        return np.linalg.matrix_power(a.astype(np.int64), k)
    base = a.astype(object)
    result = np.eye(n, dtype=np.int64).astype(object)
    while k:
        if k & 1:
            result = result.dot(base)
        base = base.dot(base)
        k >>= 1
    return result


def trace(a) -> int:
    return int(sum(int(a[i, i]) for i in range(a.shape[0])))


def total(a) -> int:
    return int(sum(int(v) for v in np.asarray(a).ravel()))
