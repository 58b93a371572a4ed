"""Sieve kernels producing dense arithmetic-function value arrays.

All kernels share the same indexing convention: position ``i`` of the output
array holds the value at the integer ``n = i + 1``.  Marking loops run
block-by-block so large tables stay cache-friendly; the block decomposition
never changes the result, only the order in which slices are touched, and a
``segment_size`` at least as large as the span degenerates to one block.
"""

from __future__ import annotations

import math

import numpy as np

# Entries per marking block.  Large enough that desk-scale tables sieve in a
# single block; small enough to keep the working set near cache size at 10^8.
DEFAULT_SEGMENT_SIZE = 1 << 26


def _blocks(span: int, segment_size: int):
    """Yield (lo, hi) position ranges covering [0, span)."""
    step = max(1, segment_size)
    for lo in range(0, span, step):
        yield lo, min(lo + step, span)


def _first_multiple_pos(q: int, lo: int) -> int:
    """Smallest array position >= lo holding a multiple of q."""
    return ((lo + q) // q) * q - 1


def primes_upto(span: int, segment_size: int = DEFAULT_SEGMENT_SIZE) -> np.ndarray:
    """All primes <= span, via a segmented Eratosthenes sieve."""
    if span < 2:
        return np.zeros(0, dtype=np.int64)
    root = math.isqrt(span)
    base = np.ones(root + 1, dtype=bool)
    base[:2] = False
    for p in range(2, math.isqrt(root) + 1):
        if base[p]:
            base[p * p :: p] = False
    base_primes = np.nonzero(base)[0]

    flags = np.ones(span, dtype=bool)  # flags[i] <=> i+1 prime
    flags[0] = False
    for lo, hi in _blocks(span, segment_size):
        for p in base_primes:
            p = int(p)
            start = max(p * p - 1, _first_multiple_pos(p, lo))
            if start < hi:
                flags[start:hi:p] = False
        # base primes themselves were struck as p*p's divisors only from p*p
        # onward, so they survive; nothing to restore.
    return np.nonzero(flags)[0].astype(np.int64) + 1


def constant_one(span: int, segment_size: int = DEFAULT_SEGMENT_SIZE) -> np.ndarray:
    return np.ones(span, dtype=np.int64)


def divisor_convolve(
    f: np.ndarray, segment_size: int = DEFAULT_SEGMENT_SIZE
) -> np.ndarray:
    """Dirichlet convolution with the constant-one function.

    Returns g with g(n) = sum over divisors d of n of f(d); iterating this
    from f = 1 builds the divisor-tower functions.
    """
    span = f.size
    g = np.zeros(span, dtype=f.dtype)
    for lo, hi in _blocks(span, segment_size):
        for d in range(1, hi + 1):
            start = _first_multiple_pos(d, lo)
            if start < hi:
                g[start:hi:d] += f[d - 1]
    return g


def divisor_tower(
    span: int, order: int, segment_size: int = DEFAULT_SEGMENT_SIZE
) -> np.ndarray:
    """d_l values: the number of ordered l-tuples multiplying to n."""
    f = np.ones(span, dtype=np.int64)
    for _ in range(order - 1):
        f = divisor_convolve(f, segment_size)
    return f


def euler_phi(span: int, segment_size: int = DEFAULT_SEGMENT_SIZE) -> np.ndarray:
    """Euler totient via the multiplicative subtraction sieve.

    Each prime p strikes its multiples m with phi[m] -= phi[m] // p; the
    division is exact at every step, so the block order is irrelevant.
    """
    phi = np.arange(1, span + 1, dtype=np.int64)
    primes = primes_upto(span, segment_size)
    for lo, hi in _blocks(span, segment_size):
        for p in primes:
            p = int(p)
            if p > hi:
                break
            start = _first_multiple_pos(p, lo)
            if start < hi:
                seg = phi[start:hi:p]
                seg -= seg // p
    return phi


def mu_squared(span: int, segment_size: int = DEFAULT_SEGMENT_SIZE) -> np.ndarray:
    """Squarefree indicator: zero exactly at multiples of a square > 1."""
    out = np.ones(span, dtype=np.int64)
    root = math.isqrt(span)
    for lo, hi in _blocks(span, segment_size):
        for a in range(2, root + 1):
            q = a * a
            if q > hi:
                break
            start = _first_multiple_pos(q, lo)
            if start < hi:
                out[start:hi:q] = 0
    return out


def big_omega(span: int, segment_size: int = DEFAULT_SEGMENT_SIZE) -> np.ndarray:
    """Number of prime factors with multiplicity, one slice pass per p^k."""
    om = np.zeros(span, dtype=np.int64)
    primes = primes_upto(span, segment_size)
    for lo, hi in _blocks(span, segment_size):
        for p in primes:
            p = int(p)
            if p > hi:
                break
            q = p
            while q <= hi:
                start = _first_multiple_pos(q, lo)
                if start < hi:
                    om[start:hi:q] += 1
                q *= p
    return om


def von_mangoldt(span: int, segment_size: int = DEFAULT_SEGMENT_SIZE) -> np.ndarray:
    """log p at prime powers p^k, zero elsewhere."""
    lam = np.zeros(span, dtype=np.float64)
    for p in primes_upto(span, segment_size):
        p = int(p)
        logp = math.log(p)
        q = p
        while q <= span:
            lam[q - 1] = logp
            q *= p
    return lam


def smallest_prime_factor(
    span: int, segment_size: int = DEFAULT_SEGMENT_SIZE
) -> np.ndarray:
    """spf[i] = least prime factor of i+1 (spf of 1 is set to 1)."""
    spf = np.zeros(span, dtype=np.int64)
    spf[0] = 1
    primes = primes_upto(span, segment_size)
    for lo, hi in _blocks(span, segment_size):
        for p in primes:
            p = int(p)
            if p > hi:
                break
            start = _first_multiple_pos(p, lo)
            if start < hi:
                seg = spf[start:hi:p]
                seg[seg == 0] = p
    return spf


def liouville(span: int, segment_size: int = DEFAULT_SEGMENT_SIZE) -> np.ndarray:
    """(-1)^[number of prime factors], by peeling least prime factors.

    Independent of the big_omega sieve on purpose: cross-checking the two
    routes is a meaningful consistency test.
    """
    spf = smallest_prime_factor(span, segment_size).tolist()
    lam = [0] * (span + 1)
    if span >= 1:
        lam[1] = 1
    for v in range(2, span + 1):
        lam[v] = -lam[v // spf[v - 1]]
    return np.array(lam[1:], dtype=np.int64)


def master_upsilon(span: int, segment_size: int = DEFAULT_SEGMENT_SIZE) -> np.ndarray:
    """log n on integers with exactly two prime factors (with multiplicity)."""
    om = big_omega(span, segment_size)
    logs = np.log(np.arange(1, span + 1, dtype=np.float64))
    return np.where(om == 2, logs, 0.0)
