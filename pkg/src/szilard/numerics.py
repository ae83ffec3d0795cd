"""Base-2 log-domain helpers.

Everything downstream works in log2 space so that supports of size 2^1000
and per-string probabilities of order 2^-1000 stay representable.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.special import gammaln

LN2 = math.log(2.0)

# largest n for which log2 C(n, k) is taken from exact big-int binomials;
# above this, log-gamma is used (absolute error ~1e-9 bits at n = 1e5)
EXACT_BINOMIAL_MAX_N = 2048


def logsumexp2(values) -> float:
    """log2(sum(2**v)) with max-subtraction; -inf for an empty or all -inf input."""
    a = np.asarray(values, dtype=float)
    if a.size == 0:
        return -np.inf
    m = float(np.max(a))
    if not np.isfinite(m):
        return m
    return m + math.log2(float(np.sum(np.exp2(a - m))))


def log2_one_minus_exp2(x: float) -> float:
    """log2(1 - 2**x) for x < 0, stable near both ends of the range."""
    if x >= 0.0:
        raise ValueError("argument must be negative")
    return math.log2(-math.expm1(x * LN2))


def log2_one_minus_exp2_vec(x: np.ndarray) -> np.ndarray:
    """Vectorized log2(1 - 2**x) for x < 0 elementwise."""
    return np.log2(-np.expm1(x * LN2))


def log2_binomials(n: int) -> np.ndarray:
    """log2 C(n, k) for k = 0..n.

    Exact big-int binomials for n <= EXACT_BINOMIAL_MAX_N (math.log2 of a
    Python int is correctly rounded); log-gamma beyond that.
    """
    if n <= EXACT_BINOMIAL_MAX_N:
        row = 1
        out = np.empty(n + 1)
        for k in range(n + 1):
            out[k] = math.log2(row)
            row = row * (n - k) // (k + 1)
        return out
    k = np.arange(n + 1, dtype=float)
    return (gammaln(n + 1.0) - gammaln(k + 1.0) - gammaln(n - k + 1.0)) / LN2


_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)


def popcount(values: np.ndarray) -> np.ndarray:
    """Number of set bits per element of a nonnegative int64/uint64 array."""
    x = values.astype(np.uint64)
    x = x - ((x >> np.uint64(1)) & _M1)
    x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
    x = (x + (x >> np.uint64(4))) & _M4
    return ((x * _H01) >> np.uint64(56)).astype(np.int64)


def xlog2x(p: np.ndarray) -> np.ndarray:
    """p * log2(p) with the 0 log 0 = 0 convention."""
    p = np.asarray(p, dtype=float)
    out = np.zeros_like(p)
    mask = p > 0.0
    out[mask] = p[mask] * np.log2(p[mask])
    return out
