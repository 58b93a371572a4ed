"""Shifted (type-1) and representation-style (type-2) correlation sums.

Type 1 is sum_{n<=x} f(n)·f(n+l) at a fixed shift l; type 2 is
sum_{n<x/2} f(n)·f(x-n) at a fixed total x.  Reads never wrap and never
zero-pad: a shifted read beyond the table's headroom is an error, because
silent padding would bias every constant derived from these sums.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from ._accum import compensated_dot, exact_dot
from .errors import DegenerateSum, RangeError
from .identity import bilinear_rhs
from .tables import FunctionKind, FunctionTable


@dataclass(frozen=True)
class CorrelationResult:
    """One correlation measurement.

    ``shift`` is the type-1 shift l, or None for a type-2 sum.  For even-x
    type-2 sums the diagonal term f(x/2)² is reported in ``middle_term`` and
    is never folded into ``value``; ``terms`` counts the nonzero products in
    the sum proper.
    """

    kind: FunctionKind
    x: int
    shift: int | None
    value: int | float
    terms: int
    middle_term: int | float | None = None

    @property
    def is_type2(self) -> bool:
        return self.shift is None

    @property
    def shift_label(self) -> str:
        return "type2" if self.shift is None else str(self.shift)


def type1(table: FunctionTable, x: int, l: int) -> CorrelationResult:
    """sum_{n<=x} f(n)·f(n+l); needs the table built with headroom >= l."""
    if x < 1:
        raise ValueError(f"x must be >= 1, got {x}")
    if l < 1:
        raise ValueError(f"shift must be >= 1, got {l}")
    if x + l > table.span:
        raise RangeError(
            f"{table.kind.label}: shift {l} needs f up to {x + l}, but the "
            f"table covers only 1..{table.span}; rebuild with more headroom"
        )
    a = table.values[:x]
    b = table.values[l : l + x]
    terms = int(np.count_nonzero((a != 0) & (b != 0)))
    value = exact_dot(a, b) if table.is_exact else compensated_dot(a, b)
    return CorrelationResult(table.kind, x, l, value, terms)


def type2(table: FunctionTable, x: int) -> CorrelationResult:
    """sum_{n<x/2} f(n)·f(x-n), strictly below the midpoint.

    For even x the midpoint contribution f(x/2)² goes to ``middle_term``;
    keeping it out of ``value`` is what makes the type-2 sum and the
    off-diagonal remainder an exact partition of the bilinear form.
    """
    if x < 2:
        raise ValueError(f"x must be >= 2, got {x}")
    if x > table.limit:
        raise RangeError(
            f"{table.kind.label}: x={x} exceeds table limit {table.limit}"
        )
    half = (x - 1) // 2  # last n strictly below x/2
    a = table.values[:half]
    b = table.values[x - half - 1 : x - 1][::-1]  # f(x-n) for n = 1..half
    terms = int(np.count_nonzero((a != 0) & (b != 0)))
    value = exact_dot(a, b) if table.is_exact else compensated_dot(a, b)
    middle = None
    if x % 2 == 0:
        mid = table.value(x // 2)
        middle = mid * mid
    return CorrelationResult(table.kind, x, None, value, terms, middle)


def type1_sweep(
    table: FunctionTable, x: int, shifts: Sequence[int], threads: int = 1
) -> list[CorrelationResult]:
    """type1 at each shift, in input order.

    All shifts are validated before any work so a bad entry is reported by
    name up front.  With ``threads`` > 1 the shifts evaluate concurrently;
    results keep input order and are bitwise independent of thread count
    because each evaluation is self-contained.
    """
    for l in shifts:
        if l < 1:
            raise ValueError(f"shift must be >= 1, got {l}")
        if x + l > table.span:
            raise RangeError(
                f"{table.kind.label}: shift {l} of sweep needs f up to {x + l}, "
                f"but the table covers only 1..{table.span}"
            )
    if threads > 1 and len(shifts) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(lambda l: type1(table, x, l), shifts))
    return [type1(table, x, l) for l in shifts]


def diagonal_ratio(table: FunctionTable, x: int) -> Fraction | float:
    """Fraction of the bilinear form NOT hit by the type-2 diagonal:
    1 − type2(x)/bilinear(x).

    Exact payloads return an exact Fraction so downstream partition checks
    can demand literal equality; floating payloads return a float.
    """
    b = bilinear_rhs(table, x)
    if b == 0:
        raise DegenerateSum(
            f"{table.kind.label}: bilinear form vanishes at x={x}; "
            "the diagonal split is undefined"
        )
    t2 = type2(table, x).value
    if table.is_exact:
        return Fraction(b - t2, b)
    return 1.0 - t2 / b
