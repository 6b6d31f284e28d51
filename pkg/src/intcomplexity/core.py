"""Core types and closed-form quantities for integer complexity.

The complexity of a positive integer is the least number of 1s in an
arithmetic expression for it over {1, +, *} (OEIS A005245).  Everything
else in the package is built on the exact bounds and closed forms here:
the 3*log3 lower bound, the largest-value-per-ones sequence (A000792),
the integer logarithm (A001414), logarithmic complexity, defect, and the
smallest-addend bound used by the builders.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

LN3 = math.log(3.0)

ALGORITHM_TAGS = ("sieve", "dp", "oracle")

# widest value the one-byte table layout can hold
MAX_COMPLEXITY = 255

# smallest number whose shortest expressions all require a first
# operation other than "+1" or a product split (found by M. N. Fuller)
FIRST_SUM_NECESSARY = 353942783


def lower_bound(n: int) -> int:
    """Ceiling of 3*log3(n), decided by exact power-of-three comparison.

    Floating logs round the wrong way at powers of three, which would
    break the exactness of the bound there, so the final choice compares
    3**c against n**3 in integer arithmetic.
    """
    if n < 2:
        raise ValueError(f"lower_bound requires n >= 2, got {n}")
    cube = n * n * n
    c = max(1, math.ceil(3.0 * math.log(n) / LN3) - 2)
    while 3**c < cube:
        c += 1
    while c > 1 and 3 ** (c - 1) >= cube:
        c -= 1
    return c


def upper_bound(n: int) -> float:
    """3*log2(n), valid for every n > 1."""
    if n < 2:
        raise ValueError(f"upper_bound requires n >= 2, got {n}")
    return 3.0 * math.log2(n)


@dataclass(frozen=True)
class BoundPair:
    lower: float
    upper: float

    def __post_init__(self) -> None:
        if self.lower > self.upper:
            raise ValueError(f"lower bound {self.lower} exceeds upper {self.upper}")


def complexity_bounds(n: int) -> BoundPair:
    """Both analytic bounds on the complexity of n (n > 1)."""
    return BoundPair(lower=float(lower_bound(n)), upper=upper_bound(n))


def max_expressible(k: int) -> int:
    """Largest integer whose complexity is k (A000792).

    Closed form: 1 for k = 1, then 2*3^j, 3*3^j, 4*3^j for
    k = 3j+2, 3j+3, 3j+4.
    """
    if k < 1:
        raise ValueError(f"max_expressible requires k >= 1, got {k}")
    if k == 1:
        return 1
    r = k % 3
    if r == 2:
        return 2 * 3 ** ((k - 2) // 3)
    if r == 0:
        return 3 ** (k // 3)
    return 4 * 3 ** ((k - 4) // 3)


def second_max_expressible(k: int) -> int:
    """Second-largest integer of complexity at most k; equals 8/9 of the
    largest for every k >= 8, and the division is exact there."""
    if k < 8:
        raise ValueError(f"second_max_expressible requires k >= 8, got {k}")
    top = 8 * max_expressible(k)
    q, rem = divmod(top, 9)
    if rem:  # impossible for k >= 8; guards the closed form
        raise ArithmeticError(f"8*E({k}) not divisible by 9")
    return q


def integer_logarithm(n: int) -> int:
    """Sum of prime factors with multiplicity (A001414): the ones count
    of the flat product-of-sums expression for n."""
    if n < 2:
        raise ValueError(f"integer_logarithm requires n >= 2, got {n}")
    total = 0
    m = n
    d = 2
    while d * d <= m:
        while m % d == 0:
            total += d
            m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        total += m
    return total


def log_complexity(n: int, c: int) -> float:
    """c / log3(n) where c is the complexity of n; always in [3, 4.755]."""
    if n < 2:
        raise ValueError(f"log_complexity requires n >= 2, got {n}")
    return c * LN3 / math.log(n)


def defect(n: int, c: int) -> float:
    """c - 3*log3(n); zero exactly at powers of three."""
    if n < 1:
        raise ValueError(f"defect requires n >= 1, got {n}")
    return c - 3.0 * math.log(n) / LN3


def addend_bound(n: int, c_upper: int) -> int:
    """Largest value the smaller addend of a minimal sum split of n can take.

    For any valid upper estimate c_upper >= complexity(n) the smaller
    addend a of a split n = a + b with additive complexities satisfies
    a <= (n - sqrt(n^2 - 4*E(c_upper))) / 2 with E the closed-form
    largest-value sequence.  Returns the floor of that quantity, or
    n // 2 when the discriminant is negative (small-n regime).
    """
    if n < 2:
        raise ValueError(f"addend_bound requires n >= 2, got {n}")
    y = max_expressible(c_upper)
    disc = n * n - 4 * y
    if disc < 0:
        return n // 2
    s = math.isqrt(disc)
    ceil_s = s if s * s == disc else s + 1
    return (n - ceil_s) // 2


def hamming_weight(n: int) -> int:
    return int(n).bit_count()


def mersenne_upper_bound(n: int) -> int:
    """Upper bound 2n + floor(log2 n) + H(n) - 3 on the complexity of 2^n - 1,
    H being the binary Hamming weight."""
    if n < 2:
        raise ValueError(f"mersenne_upper_bound requires n >= 2, got {n}")
    return 2 * n + n.bit_length() - 1 + hamming_weight(n) - 3


def is_power_of_3(n: int) -> bool:
    if n < 1:
        return False
    while n % 3 == 0:
        n //= 3
    return n == 1


@dataclass(frozen=True)
class ComplexityTable:
    """Densely packed complexity values for n = 1..limit.

    ``complexity`` (and ``rank`` when present) are byte strings of length
    limit + 1 with index 0 unused, so the value for n sits at index n.
    Immutable after construction; safe to share between threads.
    """

    limit: int
    complexity: bytes
    rank: bytes | None = None
    algorithm_tag: str = "sieve"

    def __post_init__(self) -> None:
        if self.limit < 1:
            raise ValueError(f"limit must be >= 1, got {self.limit}")
        if self.algorithm_tag not in ALGORITHM_TAGS:
            raise ValueError(f"unknown algorithm tag {self.algorithm_tag!r}")
        if len(self.complexity) != self.limit + 1:
            raise ValueError(
                f"complexity array has {len(self.complexity)} bytes, "
                f"expected limit + 1 = {self.limit + 1}"
            )
        if self.rank is not None and len(self.rank) != self.limit + 1:
            raise ValueError("rank array length does not match limit")
        if self.complexity[1] != 1:
            raise ValueError("complexity of 1 must be 1")

    @property
    def has_ranks(self) -> bool:
        return self.rank is not None

    def value(self, n: int) -> int:
        if not 1 <= n <= self.limit:
            raise ValueError(f"n = {n} outside table range [1, {self.limit}]")
        return self.complexity[n]

    def rank_of(self, n: int) -> int:
        if self.rank is None:
            raise ValueError("table was built without ranks")
        if not 1 <= n <= self.limit:
            raise ValueError(f"n = {n} outside table range [1, {self.limit}]")
        return self.rank[n]

    def __len__(self) -> int:
        return self.limit
