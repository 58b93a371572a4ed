"""The sequence identity and the bilinear decomposition of correlation sums.

The load-bearing fact: summing f(n)·f(n+j) over every n and every positive
shift j with n + j <= x equals the bilinear form

    sum_{2<=n<=x} f(n) · sum_{m<=n-1} f(m),

and the underlying two-sequence identity holds for arbitrary finite real
sequences.  Each side is computable by independent routes so the code can
cross-validate itself exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._accum import (
    compensated_cumsum,
    compensated_dot,
    exact_cumsum,
    exact_dot,
    exact_sum,
)
from .errors import BudgetExceeded, RangeError
from .tables import FunctionTable, PayloadMode, PrefixSums

#: Largest x the quadratic-cost oracle will accept by default.
DEFAULT_ORACLE_CAP = 100_000

#: Default relative tolerance for floating identity comparisons.
DEFAULT_TOLERANCE = 1e-9


@dataclass(frozen=True, eq=False)
class SequencePair:
    """Two equal-length finite sequences r_1..r_n and h_1..h_n."""

    r: np.ndarray
    h: np.ndarray

    def __post_init__(self) -> None:
        r = np.asarray(self.r)
        h = np.asarray(self.h)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "h", h)
        if r.ndim != 1 or h.ndim != 1:
            raise ValueError("sequences must be one-dimensional")
        if r.shape != h.shape:
            raise ValueError(f"length mismatch: {r.size} vs {h.size}")
        if r.size < 1:
            raise ValueError("sequences must have length >= 1")
        for arr in (r, h):
            if np.issubdtype(arr.dtype, np.floating) and not np.all(
                np.isfinite(arr)
            ):
                raise ValueError("sequence values must be finite")

    @property
    def n(self) -> int:
        return self.r.size

    @property
    def exact(self) -> bool:
        return np.issubdtype(self.r.dtype, np.integer) and np.issubdtype(
            self.h.dtype, np.integer
        )


@dataclass(frozen=True)
class IdentityCheckResult:
    """Both sides of an identity plus the comparison verdict."""

    lhs: int | float
    rhs: int | float
    equal: bool
    mode: PayloadMode
    tolerance: float | None = None


def _relative_equal(lhs: float, rhs: float, tolerance: float) -> bool:
    return abs(lhs - rhs) <= tolerance * max(1.0, abs(lhs), abs(rhs))


def general_area_identity(
    pair: SequencePair, tolerance: float = DEFAULT_TOLERANCE
) -> IdentityCheckResult:
    """Evaluate both sides of the two-sequence identity

        sum_{j=2}^{n} r_j h_j
            = sum_{j=2}^{n} h_j (S_j + S_{j-1})
              - 2 sum_{j=1}^{n-1} r_j (H_n - H_j)

    where S and H are the running sums of r and h.  The right side costs
    O(n) via one prefix pass per sequence.  Holds for every finite pair;
    no constraint relating the sequences' magnitudes is required.
    """
    if pair.exact:
        r = pair.r.tolist()
        h = pair.h.tolist()
        n = len(r)
        lhs = sum(r[j] * h[j] for j in range(1, n))
        S = [0] * (n + 1)
        H = [0] * (n + 1)
        for j in range(1, n + 1):
            S[j] = S[j - 1] + r[j - 1]
            H[j] = H[j - 1] + h[j - 1]
        first = sum(h[j - 1] * (S[j] + S[j - 1]) for j in range(2, n + 1))
        second = sum(r[j - 1] * (H[n] - H[j]) for j in range(1, n))
        rhs = first - 2 * second
        return IdentityCheckResult(lhs, rhs, lhs == rhs, PayloadMode.EXACT)

    r = pair.r.astype(np.float64)
    h = pair.h.astype(np.float64)
    n = r.size
    lhs = compensated_dot(r[1:], h[1:])
    S = np.concatenate([[0.0], compensated_cumsum(r)])
    H = np.concatenate([[0.0], compensated_cumsum(h)])
    first = compensated_dot(h[1:], S[2:] + S[1:-1])
    second = compensated_dot(r[:-1], H[-1] - H[1:-1]) if n > 1 else 0.0
    rhs = first - 2.0 * second
    return IdentityCheckResult(
        lhs, rhs, _relative_equal(lhs, rhs, tolerance), PayloadMode.FLOATING, tolerance
    )


def _check_range(table: FunctionTable, x: int) -> None:
    if x < 1:
        raise ValueError(f"x must be >= 1, got {x}")
    if x > table.limit:
        raise RangeError(
            f"{table.kind.label}: x={x} exceeds table limit {table.limit}"
        )


def bilinear_rhs(
    table: FunctionTable, x: int, prefix: PrefixSums | None = None
) -> int | float:
    """sum_{2<=n<=x} f(n) · S(n-1), the bilinear form of the decomposition.

    O(x) given the running prefix sums; exact for exact payloads.  An
    optional precomputed ``prefix`` (for the same table, limit >= x) skips
    the cumulative pass when sweeping many x.
    """
    _check_range(table, x)
    if x == 1:
        return 0 if table.is_exact else 0.0
    vals = table.values[1:x]  # f(n) for n = 2..x
    if prefix is not None:
        if prefix.kind != table.kind or prefix.mode != table.mode:
            raise ValueError("prefix sums were built from a different table")
        if prefix.limit < x - 1:
            raise RangeError(f"prefix sums cover only 0..{prefix.limit}, need {x - 1}")
        sums = prefix.sums[1:x]  # S(n-1) for n = 2..x
    elif table.is_exact:
        sums = exact_cumsum(table.values[: x - 1])
    else:
        sums = compensated_cumsum(table.values[: x - 1])
    if table.is_exact:
        return exact_dot(vals, sums)
    return compensated_dot(vals, sums)


def double_sum_lhs_oracle(
    table: FunctionTable, x: int, oracle_cap: int = DEFAULT_ORACLE_CAP
) -> int | float:
    """sum_{n<=x-1} sum_{j<=x-n} f(n)·f(n+j) by direct summation.

    The independent quadratic-cost route: each outer n sums its inner range
    directly from the value array, never touching the prefix-sum machinery.
    """
    _check_range(table, x)
    if x > oracle_cap:
        raise BudgetExceeded(
            f"oracle is quadratic; x={x} exceeds its cap {oracle_cap}"
        )
    vals = table.values
    if table.is_exact:
        total = 0
        for n in range(1, x):
            inner = exact_sum(vals[n:x])  # f(n+1) + ... + f(x)
            total += int(vals[n - 1]) * inner
        return total
    rows = [float(vals[n - 1]) * float(np.sum(vals[n:x])) for n in range(1, x)]
    return math.fsum(rows)


def pair_sum_closed_form(table: FunctionTable, x: int) -> int | float:
    """sum over unordered pairs m < n <= x of f(m)·f(n), via ((Σf)² − Σf²)/2."""
    _check_range(table, x)
    vals = table.values[:x]
    if table.is_exact:
        s = exact_sum(vals)
        q = exact_dot(vals, vals)
        num = s * s - q
        # s² and q have the same parity, so the pair count is integral.
        return num // 2
    s = float(np.sum(vals))
    q = compensated_dot(vals, vals)
    return (s * s - q) / 2.0


def identity_check(
    table: FunctionTable,
    x: int,
    tolerance: float = DEFAULT_TOLERANCE,
    oracle_cap: int = DEFAULT_ORACLE_CAP,
) -> IdentityCheckResult:
    """Cross-validate the decomposition: quadratic oracle vs bilinear form."""
    lhs = double_sum_lhs_oracle(table, x, oracle_cap)
    rhs = bilinear_rhs(table, x)
    if table.is_exact:
        return IdentityCheckResult(lhs, rhs, lhs == rhs, PayloadMode.EXACT)
    return IdentityCheckResult(
        lhs, rhs, _relative_equal(lhs, rhs, tolerance), PayloadMode.FLOATING, tolerance
    )
