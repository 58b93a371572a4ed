"""The minimum-overlap problem: split {1..n} into equal halves A and B so
that no difference k = a − b is over-represented.

M(n) is the min over splittings of the max over k of M_k, where M_k counts
solutions of a − b = k.  The module offers an exhaustive search (small n),
a seeded annealing search (any even n), and a comparison table against the
known bounds on M(n)/n.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, replace
from itertools import combinations

import numpy as np

from .errors import CapExceeded

#: Default ceiling for the exhaustive search; the space is C(n-1, n/2-1).
DEFAULT_EXACT_CAP = 24

#: Default move budget for the annealing search.
DEFAULT_BUDGET = 100_000

#: Below this n, face-value comparison against asymptotic bounds is noise,
#: so those rows are marked exempt instead of true/false.
SMALL_N_EXEMPT = 16


@dataclass(frozen=True, eq=False)
class Splitting:
    """A partition of {1..n} into halves A and B (B is the complement).

    ``mask`` has bit i set exactly when i+1 is in A.
    """

    n: int
    mask: int

    def __post_init__(self) -> None:
        if self.n < 2 or self.n % 2 != 0:
            raise ValueError(f"n must be even and >= 2, got {self.n}")
        if not 0 <= self.mask < (1 << self.n):
            raise ValueError("membership mask has bits outside 1..n")
        if self.mask.bit_count() != self.n // 2:
            raise ValueError(
                f"A must have exactly {self.n // 2} elements, "
                f"got {self.mask.bit_count()}"
            )

    @classmethod
    def from_a(cls, n: int, elements) -> "Splitting":
        mask = 0
        for e in elements:
            if not 1 <= e <= n:
                raise ValueError(f"element {e} outside 1..{n}")
            if mask >> (e - 1) & 1:
                raise ValueError(f"duplicate element {e}")
            mask |= 1 << (e - 1)
        return cls(n, mask)

    @classmethod
    def from_bits(cls, bits: str) -> "Splitting":
        if set(bits) - {"0", "1"}:
            raise ValueError("bits must be a 0/1 string")
        mask = 0
        for i, ch in enumerate(bits):
            if ch == "1":
                mask |= 1 << i
        return cls(len(bits), mask)

    @property
    def a_elements(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(self.n) if self.mask >> i & 1)

    @property
    def b_elements(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(self.n) if not self.mask >> i & 1)

    @property
    def bits(self) -> str:
        """Membership sequence b_1..b_n as a 0/1 string."""
        return "".join("1" if self.mask >> i & 1 else "0" for i in range(self.n))


@dataclass(frozen=True, eq=False)
class DifferenceHistogram:
    """Counts M_k of solutions a − b = k, for k in [−n, n]."""

    n: int
    counts: np.ndarray  # length 2n + 1; position k + n holds M_k

    def __post_init__(self) -> None:
        self.counts.setflags(write=False)

    def count(self, k: int) -> int:
        # Differences a - b with a, b in {1..n} cannot leave [-n, n], so the
        # count at any k outside the stored window is genuinely zero.
        if not -self.n <= k <= self.n:
            return 0
        return int(self.counts[k + self.n])

    @property
    def max_value(self) -> int:
        return int(self.counts.max())

    @property
    def argmax(self) -> tuple[int, ...]:
        m = self.counts.max()
        return tuple(int(i) - self.n for i in np.nonzero(self.counts == m)[0])


@dataclass(frozen=True)
class BoundRow:
    """One comparison row: the witness max against a published bound."""

    name: str
    formula: str
    value: float
    direction: str  # "upper" | "lower" | "shape-only"
    ok: str  # "true" | "false" | "exempt" | "shape-only"
    note: str = ""


@dataclass(frozen=True, eq=False)
class OverlapResult:
    """Outcome of one search: the achieved max and its witness splitting.

    Exhaustive results are optimal; heuristic results upper-bound the true
    minimum.
    """

    n: int
    m: int
    witness: Splitting
    method: str  # "exhaustive" | "heuristic"
    budget: int | None = None
    seed: int | None = None
    bounds: tuple[BoundRow, ...] = ()


def difference_histogram(s: Splitting) -> DifferenceHistogram:
    """Count every difference a − b over A × B (total mass (n/2)²)."""
    a = np.array(s.a_elements, dtype=np.int64)
    b = np.array(s.b_elements, dtype=np.int64)
    diffs = (a[:, None] - b[None, :]).ravel()
    counts = np.bincount(diffs + s.n, minlength=2 * s.n + 1)
    return DifferenceHistogram(n=s.n, counts=counts.astype(np.int64))


def indicator_correlation(s: Splitting, k: int) -> int:
    """Literal count of c in 1..n with both c and c+k inside 1..n.

    The union indicator of a splitting is identically 1 on {1..n}, so this
    shifted sum depends only on n and k and deliberately carries no
    information about the halves themselves; the meaningful per-splitting
    quantity is M_k.  It exists so the indicator bookkeeping around the
    histogram has a well-defined, testable meaning.
    """
    lo = max(1, 1 - k)
    hi = min(s.n, s.n - k)
    return max(0, hi - lo + 1)


def _reverse_mask(mask: int, n: int) -> int:
    out = 0
    for _ in range(n):
        out = (out << 1) | (mask & 1)
        mask >>= 1
    return out


def _lex_key(mask: int, n: int) -> int:
    """Numeric key whose order equals lexicographic order of the bit string."""
    return _reverse_mask(mask, n)


def _hist_max_bitmask(mask_a: int, mask_b: int, n: int, abort_above: int) -> int:
    """Max M_k via shifted popcounts; bails out once it exceeds the cutoff."""
    best = 0
    for k in range(1, n):
        c = (mask_a & (mask_b << k)).bit_count()  # solutions of a - b = k
        if c > best:
            best = c
            if best > abort_above:
                return best
        c = (mask_a & (mask_b >> k)).bit_count()  # solutions of a - b = -k
        if c > best:
            best = c
            if best > abort_above:
                return best
    return best


def bounds_table(n: int, result: "OverlapResult") -> list[BoundRow]:
    """Compare a search result against the published bounds on M(n).

    Upper/lower rows get a face-value true/false at this n; asymptotic rows
    are marked exempt below ``SMALL_N_EXEMPT``.  The final row's constant is
    a free parameter > 1, so it is reported shape-only.
    """
    m = result.m
    rows_spec = [
        ("upper-half", "M(n) < (1+o(1))·n/2", n / 2.0, "upper", True),
        ("lower-quarter", "M(n) > n/4", n / 4.0, "lower", False),
        (
            "lower-one-minus-invsqrt2",
            "M(n) > (1−2^(−1/2))·n",
            (1.0 - 2.0**-0.5) * n,
            "lower",
            True,
        ),
        (
            "lower-sqrt4-minus-sqrt15",
            "M(n) > sqrt(4−sqrt(15))·n",
            math.sqrt(4.0 - math.sqrt(15.0)) * n,
            "lower",
            True,
        ),
        ("upper-two-fifths", "M(n) < (1+o(1))·2n/5", 0.4 * n, "upper", True),
        (
            "upper-best-known",
            "M(n) < (1+o(1))·0.38093·n",
            0.38093 * n,
            "upper",
            True,
        ),
    ]
    out: list[BoundRow] = []
    for name, formula, value, direction, asymptotic in rows_spec:
        note = ""
        if asymptotic and n < SMALL_N_EXEMPT:
            ok = "exempt"
            note = "asymptotic, small-n exempt"
        else:
            holds = m < value if direction == "upper" else m > value
            ok = "true" if holds else "false"
            if not holds and direction == "lower":
                if n < SMALL_N_EXEMPT:
                    note = "strict lower bound not yet binding at this n"
                else:
                    # Any achieved splitting upper-bounds M(n), so a witness
                    # below a claimed lower bound is a definitive refutation.
                    note = (
                        f"witness refutes the catalogued bound: "
                        f"M(n) <= {m} < {value:.6g}"
                    )
            elif not holds and direction == "upper" and result.method == "heuristic":
                note = (
                    "heuristic max upper-bounds the true minimum; "
                    "a face-value failure here is inconclusive"
                )
        out.append(BoundRow(name, formula, value, direction, ok, note))
    out.append(
        BoundRow(
            name="upper-free-constant-quarter",
            formula="M(n) < D(k)·(1−o(1))·n/4",
            value=n / 4.0,
            direction="shape-only",
            ok="shape-only",
            note="constant D(k) > 1 is a free parameter; value shown at D(k)=1",
        )
    )
    return out


def _finalize(result: OverlapResult) -> OverlapResult:
    return replace(result, bounds=tuple(bounds_table(result.n, result)))


def exact_Mn(n: int, cap: int = DEFAULT_EXACT_CAP) -> OverlapResult:
    """Optimal M(n) with a witness, by exhaustive search.

    Fixing 1 ∈ A loses nothing: swapping the halves reflects the histogram
    (k to −k) and leaves its max unchanged.  Each splitting is also
    equivalent to its reversal (i to n+1−i), so of every such pair only the
    lexicographically smaller membership sequence is scored.  Ties at the
    optimum keep the lexicographically smallest witness.
    """
    if n < 2 or n % 2 != 0:
        raise ValueError(f"n must be even and >= 2, got {n}")
    if n > cap:
        raise CapExceeded(
            f"exhaustive search over C({n - 1},{n // 2 - 1}) splittings "
            f"refused: n={n} exceeds cap {cap}"
        )
    full = (1 << n) - 1
    half = n // 2
    best_m = n * n  # above any achievable max
    best_mask = 0
    best_key = None
    for rest in combinations(range(2, n + 1), half - 1):
        mask_a = 1
        for e in rest:
            mask_a |= 1 << (e - 1)
        # Reversal partner (swapped back into the 1-in-A convention when
        # needed); skip the lexicographically larger of the pair.
        if mask_a >> (n - 1) & 1:
            partner = _reverse_mask(mask_a, n)
        else:
            partner = _reverse_mask(full ^ mask_a, n)
        key = _lex_key(mask_a, n)
        if _lex_key(partner, n) < key:
            continue
        mask_b = full ^ mask_a
        m = _hist_max_bitmask(mask_a, mask_b, n, abort_above=best_m)
        if m < best_m or (m == best_m and (best_key is None or key < best_key)):
            best_m = m
            best_mask = mask_a
            best_key = key
    witness = Splitting(n, best_mask)
    return _finalize(
        OverlapResult(n=n, m=best_m, witness=witness, method="exhaustive")
    )


def _swap_delta_arrays(a: int, b: int, a_arr: np.ndarray, b_arr: np.ndarray, n: int):
    """Index updates to the difference counts for swapping a (in A) with b."""
    subs = [a - b_arr + n, a_arr - b + n]
    adds = [b - b_arr + n, a_arr - a + n]
    scalar = [(a - b + n, 1), (b - a + n, 1), (n, -2)]
    return subs, adds, scalar


def _apply_delta(counts: np.ndarray, subs, adds, scalar) -> None:
    for idx in subs:
        np.subtract.at(counts, idx, 1)
    for idx in adds:
        np.add.at(counts, idx, 1)
    for pos, v in scalar:
        counts[pos] += v


def heuristic_Mn(
    n: int, budget: int = DEFAULT_BUDGET, seed: int = 0
) -> OverlapResult:
    """Annealed swap search for a low-max splitting; deterministic per seed.

    Moves exchange one element of A with one of B; the difference counts
    update incrementally.  Cooling is geometric from a temperature chosen so
    roughly half the uphill moves seen in a short warmup would accept.  The
    achieved max is always an upper bound on the true M(n); element 1 stays
    pinned in A, which costs no generality.
    """
    if n < 2 or n % 2 != 0:
        raise ValueError(f"n must be even and >= 2, got {n}")
    if budget < 1:
        raise ValueError(f"budget must be >= 1, got {budget}")
    rng = random.Random(seed)
    half = n // 2

    a_list = [1] + rng.sample(range(2, n + 1), half - 1)
    a_set = set(a_list)
    b_list = [v for v in range(1, n + 1) if v not in a_set]
    a_arr = np.array(a_list, dtype=np.int64)
    b_arr = np.array(b_list, dtype=np.int64)
    counts = difference_histogram(Splitting.from_a(n, a_list)).counts.copy()
    cur_max = int(counts.max())

    mask = 0
    for e in a_list:
        mask |= 1 << (e - 1)
    best_max = cur_max
    best_mask = mask
    best_key = _lex_key(mask, n)

    if half == 1:
        # Only one splitting exists; nothing to search.
        witness = Splitting(n, best_mask)
        return _finalize(
            OverlapResult(
                n=n,
                m=best_max,
                witness=witness,
                method="heuristic",
                budget=budget,
                seed=seed,
            )
        )

    def propose():
        i = rng.randrange(1, half)  # never moves the pinned element 1
        j = rng.randrange(half)
        return i, j

    def candidate_max(i: int, j: int) -> tuple[np.ndarray, int]:
        a = int(a_arr[i])
        b = int(b_arr[j])
        cand = counts.copy()
        subs, adds, scalar = _swap_delta_arrays(a, b, a_arr, b_arr, n)
        _apply_delta(cand, subs, adds, scalar)
        return cand, int(cand.max())

    # Warmup: size the starting temperature from observed uphill deltas.
    uphill: list[int] = []
    for _ in range(min(100, budget)):
        i, j = propose()
        _, m_new = candidate_max(i, j)
        if m_new > cur_max:
            uphill.append(m_new - cur_max)
    if uphill:
        uphill.sort()
        t0 = max(0.5, uphill[len(uphill) // 2] / math.log(2.0))
    else:
        t0 = 1.0
    t_end = 0.05

    for step in range(budget):
        frac = step / max(1, budget - 1)
        temp = t0 * (t_end / t0) ** frac
        i, j = propose()
        cand, m_new = candidate_max(i, j)
        delta = m_new - cur_max
        if delta <= 0 or rng.random() < math.exp(-delta / temp):
            a = int(a_arr[i])
            b = int(b_arr[j])
            counts = cand
            cur_max = m_new
            a_arr[i] = b
            b_arr[j] = a
            mask ^= (1 << (a - 1)) | (1 << (b - 1))
            if cur_max < best_max:
                best_max = cur_max
                best_mask = mask
                best_key = _lex_key(mask, n)
            elif cur_max == best_max:
                key = _lex_key(mask, n)
                if key < best_key:
                    best_mask = mask
                    best_key = key

    witness = Splitting(n, best_mask)
    return _finalize(
        OverlapResult(
            n=n,
            m=best_max,
            witness=witness,
            method="heuristic",
            budget=budget,
            seed=seed,
        )
    )
