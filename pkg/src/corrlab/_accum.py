"""Exact and compensated accumulation primitives.

Integer paths return Python ints and are exact regardless of magnitude:
products are formed in int64 only when a conservative bound proves they
cannot overflow, and otherwise the operands are split into high/low digits
(or, past the recursion depth, handed to object-dtype arithmetic).

Float paths bound the relative error of long reductions by combining
blockwise ``numpy`` kernels with ``math.fsum`` across block totals.
"""

from __future__ import annotations

import math

import numpy as np

# int64 dot products are proven safe when max|a| * max|b| * len < 2**62,
# leaving two guard bits under the 2**63 signed limit.
_SAFE_PRODUCT_BITS = 62

# Top-level chunk for exact_dot: keeps the per-chunk object/int conversion
# bounded while the safe-int64 fast path covers almost all real tables.
_EXACT_CHUNK = 1 << 21

# Digit width for the high/low split of oversized operands.
_SPLIT_BITS = 20

# Block length over which a single np.dot / np.cumsum is accumulated before
# the block result is handed to math.fsum.
_FLOAT_BLOCK = 4096


def _max_abs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    return int(max(int(a.max()), -int(a.min())))


def _dot_exact_core(a: np.ndarray, b: np.ndarray, depth: int) -> int:
    """Exact dot product of two int64 arrays as a Python int."""
    n = a.size
    if n == 0:
        return 0
    ma, mb = _max_abs(a), _max_abs(b)
    if ma == 0 or mb == 0:
        return 0
    if ma.bit_length() + mb.bit_length() + n.bit_length() <= _SAFE_PRODUCT_BITS:
        return int(np.dot(a, b))
    if depth <= 0:
        return int(np.dot(a.astype(object), b.astype(object)))
    # Split the wider operand into high/low digits and recurse: the halves
    # are strictly narrower, so the recursion terminates.
    if ma >= mb:
        hi = a >> _SPLIT_BITS
        lo = a - (hi << _SPLIT_BITS)
        return (_dot_exact_core(hi, b, depth - 1) << _SPLIT_BITS) + _dot_exact_core(
            lo, b, depth - 1
        )
    hi = b >> _SPLIT_BITS
    lo = b - (hi << _SPLIT_BITS)
    return (_dot_exact_core(a, hi, depth - 1) << _SPLIT_BITS) + _dot_exact_core(
        a, lo, depth - 1
    )


def exact_dot(a: np.ndarray, b: np.ndarray) -> int:
    """Return ``sum(a[i] * b[i])`` exactly as a Python int.

    Args:
        a, b: equal-length integer arrays (any integer dtype).

    Returns:
        The exact dot product, free of overflow.
    """
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    if a.dtype == object or b.dtype == object:
        return int(np.dot(a.astype(object), b.astype(object))) if a.size else 0
    a64 = np.ascontiguousarray(a, dtype=np.int64)
    b64 = np.ascontiguousarray(b, dtype=np.int64)
    total = 0
    for start in range(0, a64.size, _EXACT_CHUNK):
        stop = start + _EXACT_CHUNK
        total += _dot_exact_core(a64[start:stop], b64[start:stop], depth=3)
    return total


def exact_sum(a: np.ndarray) -> int:
    """Return ``sum(a)`` exactly as a Python int."""
    if a.size == 0:
        return 0
    if a.dtype == object:
        return int(a.sum())
    a64 = np.ascontiguousarray(a, dtype=np.int64)
    ma = _max_abs(a64)
    if ma == 0:
        return 0
    if ma.bit_length() + a64.size.bit_length() <= _SAFE_PRODUCT_BITS:
        return int(a64.sum())
    hi = a64 >> _SPLIT_BITS
    lo = a64 - (hi << _SPLIT_BITS)
    return (exact_sum(hi) << _SPLIT_BITS) + exact_sum(lo)


def exact_cumsum(a: np.ndarray) -> np.ndarray:
    """Exact running sums of an integer array.

    Returns an int64 array when every partial sum provably fits, otherwise
    an object-dtype array of Python ints.
    """
    if a.size == 0:
        return np.zeros(0, dtype=np.int64)
    if a.dtype != object:
        a64 = np.ascontiguousarray(a, dtype=np.int64)
        ma = _max_abs(a64)
        if ma == 0 or ma.bit_length() + a64.size.bit_length() <= _SAFE_PRODUCT_BITS:
            return np.cumsum(a64)
        a = a64.astype(object)
    return np.cumsum(a)


def compensated_dot(a: np.ndarray, b: np.ndarray) -> float:
    """Dot product of float arrays with compensated cross-block summation.

    Each block of ``_FLOAT_BLOCK`` terms is reduced by ``np.dot``; the block
    totals are then combined by ``math.fsum``, so the error of the final
    reduction does not grow with the number of blocks.
    """
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    if a.size == 0:
        return 0.0
    af = np.ascontiguousarray(a, dtype=np.float64)
    bf = np.ascontiguousarray(b, dtype=np.float64)
    partials = [
        float(np.dot(af[s : s + _FLOAT_BLOCK], bf[s : s + _FLOAT_BLOCK]))
        for s in range(0, af.size, _FLOAT_BLOCK)
    ]
    return math.fsum(partials)


def compensated_sum(a: np.ndarray) -> float:
    """Correctly rounded sum of a float array (``math.fsum`` semantics)."""
    if a.size == 0:
        return 0.0
    af = np.ascontiguousarray(a, dtype=np.float64)
    return math.fsum(af.tolist())


def compensated_cumsum(a: np.ndarray) -> np.ndarray:
    """Running sums of a float array with per-block compensation.

    Within each block a plain ``np.cumsum`` runs; the offset carried into
    each block is the fsum of all previous block totals, keeping the
    relative error of every prefix far below ordinary cumsum drift.
    """
    af = np.ascontiguousarray(a, dtype=np.float64)
    out = np.empty_like(af)
    carried: list[float] = []
    for s in range(0, af.size, _FLOAT_BLOCK):
        block = af[s : s + _FLOAT_BLOCK]
        out[s : s + block.size] = np.cumsum(block) + math.fsum(carried)
        carried.append(float(block.sum()))
    return out
