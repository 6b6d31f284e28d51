"""Everything derived from a finished complexity table.

Sequence extraction (least/greatest value per complexity, least value
per rank), shortest-expression reconstruction, verification of the
power/prime/defect facts the tables are expected to satisfy, collapse
and first-operation scans, Cunningham chain detection over the
least-value sequence, and the least-squares fit of its logarithmic
growth.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field

import numpy as np

from .core import (
    LN3,
    ComplexityTable,
    FIRST_SUM_NECESSARY,
    addend_bound,
    defect,
    hamming_weight,
    log_complexity,
    max_expressible,
    mersenne_upper_bound,
)
from .expr import ExprTree, ONE, add, mul
from .primality import is_prime, primes_up_to
from .reporting import Report

_DEFECT_RANK_COEF = 1.0 + 3.0 * math.log(6.0 / 7.0) / LN3
_REAL_TOL = 1e-9


def _comp_array(t: ComplexityTable) -> np.ndarray:
    return np.frombuffer(t.complexity, dtype=np.uint8)


def _rank_array(t: ComplexityTable) -> np.ndarray:
    return np.frombuffer(t.rank, dtype=np.uint8)


def _provenance(t: ComplexityTable) -> dict:
    return {"limit": t.limit, "algorithm": t.algorithm_tag}


# -- derived sequences -------------------------------------------------


@dataclass(frozen=True)
class SequenceSet:
    """Least/greatest values by complexity and least value by rank.

    ``smallest[k]``/``largest[k]`` are the least/greatest n with
    complexity exactly k; ``second_largest[k]`` is the second-greatest n
    with complexity at most k.  Entries beyond the reliable bounds may
    be artifacts of the table edge and are excluded from them.
    """

    limit: int
    algorithm_tag: str
    smallest: dict[int, int]
    largest: dict[int, int]
    second_largest: dict[int, int]
    rank_firsts: dict[int, int] | None
    reliable_smallest_max: int
    reliable_largest_max: int
    reliable_rank_max: int | None

    def reliable_smallest(self) -> dict[int, int]:
        return {k: v for k, v in self.smallest.items() if k <= self.reliable_smallest_max}


def derive_sequences(
    t: ComplexityTable, include_rank_sequence: bool | None = None
) -> SequenceSet:
    """Single-scan extraction of the derived sequences from a table."""
    if include_rank_sequence is None:
        include_rank_sequence = t.has_ranks
    if include_rank_sequence and not t.has_ranks:
        raise ValueError("rank sequence requested but the table has no ranks")

    c = _comp_array(t)[1:]  # complexity of n = i + 1
    firsts_idx = np.unique(c, return_index=True)
    smallest = {int(k): int(i) + 1 for k, i in zip(*firsts_idx)}
    rev = c[::-1]
    lasts_idx = np.unique(rev, return_index=True)
    largest = {int(k): t.limit - int(i) for k, i in zip(*lasts_idx)}

    # second-greatest value with complexity <= k: merge per-k exact tops
    top2: dict[int, int] = {}
    second_exact: dict[int, int] = {}
    kmax = int(c.max())
    lut = np.zeros(kmax + 1, dtype=np.int64)
    for k, v in largest.items():
        lut[k] = v
    rev_pos = t.limit - np.arange(len(rev))
    mask = rev_pos != lut[rev]
    rev2 = rev[mask]
    if len(rev2):
        for k, i in zip(*np.unique(rev2, return_index=True)):
            second_exact[int(k)] = int(rev_pos[mask][i])
    best1 = best2 = 0
    for k in range(1, kmax + 1):
        cands = [v for v in (largest.get(k), second_exact.get(k)) if v is not None]
        for v in cands:
            if v > best1:
                best1, best2 = v, best1
            elif v > best2:
                best2 = v
        if best2:
            top2[k] = best2

    rank_firsts = None
    reliable_rank_max = None
    if include_rank_sequence:
        r = _rank_array(t)[1:]
        pairs = np.unique(r, return_index=True)
        rank_firsts = {int(k): int(i) + 1 for k, i in zip(*pairs)}
        reliable_rank_max = 0
        while rank_firsts.get(reliable_rank_max + 1) is not None:
            reliable_rank_max += 1

    reliable_smallest_max = 0
    while (reliable_smallest_max + 1) in smallest:
        reliable_smallest_max += 1
    reliable_largest_max = 0
    while max_expressible(reliable_largest_max + 1) <= t.limit:
        reliable_largest_max += 1

    return SequenceSet(
        limit=t.limit,
        algorithm_tag=t.algorithm_tag,
        smallest=smallest,
        largest=largest,
        second_largest=top2,
        rank_firsts=rank_firsts,
        reliable_smallest_max=reliable_smallest_max,
        reliable_largest_max=reliable_largest_max,
        reliable_rank_max=reliable_rank_max,
    )


# -- reconstruction ----------------------------------------------------


class Reconstructor:
    """Rebuilds shortest expressions from a finished table.

    The minimum-height policy performs a secondary minimization over all
    complexity-optimal decompositions (products merge into enclosing
    products and sums into sums, so part heights compose by maximum).
    Ties break deterministically: product over sum, then the smallest
    divisor, then the smallest addend.
    """

    _INF = float("inf")

    def __init__(self, t: ComplexityTable):
        self.t = t
        self._c = t.complexity
        self._pairs: dict[int, list[int]] = {}
        self._splits: dict[int, list[int]] = {}
        self._sum_h: dict[int, float] = {}
        self._prod_h: dict[int, float] = {}
        self._fh: dict[int, float] = {}
        self._ah: dict[int, float] = {}
        self._any: dict[int, ExprTree] = {}
        if sys.getrecursionlimit() < 50_000:
            sys.setrecursionlimit(50_000)

    # optimal decompositions ------------------------------------------

    def divisor_splits(self, n: int) -> list[int]:
        """Divisors d (2 <= d <= sqrt(n)) with additive complexities."""
        got = self._pairs.get(n)
        if got is None:
            c = self._c
            cn = c[n]
            got = [
                d
                for d in range(2, math.isqrt(n) + 1)
                if n % d == 0 and c[d] + c[n // d] == cn
            ]
            self._pairs[n] = got
        return got

    def addend_splits(self, n: int) -> list[int]:
        """Smaller addends a with additive complexities, ascending."""
        got = self._splits.get(n)
        if got is None:
            c = self._c
            cn = c[n]
            cap = min(n // 2, addend_bound(n, cn)) if n >= 2 else 0
            got = [a for a in range(1, cap + 1) if c[a] + c[n - a] == cn]
            self._splits[n] = got
        return got

    # minimum-height bookkeeping ---------------------------------------

    def _factor_h(self, e: int) -> float:
        """Least possible max-height of e's factors inside a flat product."""
        got = self._fh.get(e)
        if got is None:
            got = self._sum_height(e)
            for d in self.divisor_splits(e):
                got = min(got, max(self._factor_h(d), self._factor_h(e // d)))
            self._fh[e] = got
        return got

    def _part_h(self, x: int) -> float:
        """Least possible max-height of x's parts inside a flat sum."""
        got = self._ah.get(x)
        if got is None:
            got = 0.0 if x == 1 else self._prod_height(x)
            for a in self.addend_splits(x):
                got = min(got, max(self._part_h(a), self._part_h(x - a)))
            self._ah[x] = got
        return got

    def _prod_height(self, n: int) -> float:
        got = self._prod_h.get(n)
        if got is None:
            self._prod_h[n] = got = min(
                (
                    1 + max(self._factor_h(d), self._factor_h(n // d))
                    for d in self.divisor_splits(n)
                ),
                default=self._INF,
            )
        return got

    def _sum_height(self, n: int) -> float:
        got = self._sum_h.get(n)
        if got is None:
            if n == 1:
                got = self._INF
            else:
                got = min(
                    (
                        1 + max(self._part_h(a), self._part_h(n - a))
                        for a in self.addend_splits(n)
                    ),
                    default=self._INF,
                )
            self._sum_h[n] = got
        return got

    def min_height(self, n: int) -> int:
        """Rank of n computed from the table (no rank column needed)."""
        if n == 1:
            return 0
        h = min(self._prod_height(n), self._sum_height(n))
        if math.isinf(h):
            raise AssertionError(f"no optimal decomposition found for {n}; table corrupt?")
        return int(h)

    # tree builders -----------------------------------------------------

    def _factors_min(self, e: int) -> list[ExprTree]:
        target = self._factor_h(e)
        if self._sum_height(e) == target:
            return [self._build_sum(e)]
        for d in self.divisor_splits(e):
            if max(self._factor_h(d), self._factor_h(e // d)) == target:
                return self._factors_min(d) + self._factors_min(e // d)
        raise AssertionError("factor bookkeeping inconsistent")

    def _parts_min(self, x: int) -> list[ExprTree]:
        if x == 1:
            return [ONE]
        target = self._part_h(x)
        if self._prod_height(x) == target:
            return [self._build_prod(x)]
        for a in self.addend_splits(x):
            if max(self._part_h(a), self._part_h(x - a)) == target:
                return self._parts_min(a) + self._parts_min(x - a)
        raise AssertionError("part bookkeeping inconsistent")

    def _build_prod(self, n: int) -> ExprTree:
        target = self._prod_height(n)
        for d in self.divisor_splits(n):
            if 1 + max(self._factor_h(d), self._factor_h(n // d)) == target:
                return mul(self._factors_min(d) + self._factors_min(n // d))
        raise AssertionError("product bookkeeping inconsistent")

    def _build_sum(self, n: int) -> ExprTree:
        target = self._sum_height(n)
        for a in self.addend_splits(n):
            if 1 + max(self._part_h(a), self._part_h(n - a)) == target:
                return add(self._parts_min(a) + self._parts_min(n - a))
        raise AssertionError("sum bookkeeping inconsistent")

    def tree_min_height(self, n: int) -> ExprTree:
        if n == 1:
            return ONE
        ph, sh = self._prod_height(n), self._sum_height(n)
        return self._build_prod(n) if ph <= sh else self._build_sum(n)

    def tree_any(self, n: int) -> ExprTree:
        got = self._any.get(n)
        if got is not None:
            return got
        if n == 1:
            tree = ONE
        else:
            ds = self.divisor_splits(n)
            if ds:
                d = ds[0]
                tree = mul((self.tree_any(d), self.tree_any(n // d)))
            else:
                splits = self.addend_splits(n)
                if not splits:
                    raise AssertionError(f"no optimal decomposition for {n}; table corrupt?")
                a = splits[0]
                tree = add((self.tree_any(a), self.tree_any(n - a)))
        self._any[n] = tree
        return tree


def reconstruct(t: ComplexityTable, n: int, policy: str = "any_shortest") -> ExprTree:
    """A shortest canonical expression for n from the table.

    ``min_height`` additionally minimizes the expression height (the
    result's height equals the rank of n); ``any_shortest`` follows the
    deterministic product-first tie-breaking only.
    """
    if not 1 <= n <= t.limit:
        raise ValueError(f"n = {n} outside table range [1, {t.limit}]")
    rec = Reconstructor(t)
    if policy == "any_shortest":
        tree = rec.tree_any(n)
    elif policy == "min_height":
        tree = rec.tree_min_height(n)
    else:
        raise ValueError(f"unknown policy {policy!r}")
    if tree.ones != t.value(n):
        raise AssertionError("reconstructed tree does not match the table")
    return tree


# -- verification checks ----------------------------------------------


def check_products(t: ComplexityTable, kind: str) -> Report:
    """Power laws: products of 1+1s / 1+1+1s / mixed 2-3-5 powers."""
    c = t.complexity
    limit = t.limit
    counterexamples: list[dict] = []
    checked = 0
    if kind == "pow2":
        a = 1
        while 2**a <= limit:
            checked += 1
            if c[2**a] != 2 * a:
                counterexamples.append({"n": 2**a, "expected": 2 * a, "actual": c[2**a]})
            a += 1
    elif kind == "pow3":
        b = 1
        while 3**b <= limit:
            checked += 1
            if c[3**b] != 3 * b:
                counterexamples.append({"n": 3**b, "expected": 3 * b, "actual": c[3**b]})
            b += 1
    elif kind == "pow235":
        a = 0
        while 2**a <= limit:
            b = 0
            while 2**a * 3**b <= limit:
                for cc in range(0, 6):
                    n = 2**a * 3**b * 5**cc
                    if n > limit:
                        break
                    if a + b + cc == 0:
                        continue
                    checked += 1
                    want = 2 * a + 3 * b + 5 * cc
                    if c[n] != want:
                        counterexamples.append({"n": n, "expected": want, "actual": c[n]})
                b += 1
            a += 1
    else:
        raise ValueError(f"unknown product check {kind!r}")
    return Report(
        name=f"products-{kind}",
        passed=not counterexamples,
        checked=checked,
        counterexamples=counterexamples,
        details=_provenance(t),
    )


def check_pow2_plus1(t: ComplexityTable) -> Report:
    """2^n + 1 needs 2n+1 ones, except the two threes-heavy cases n = 3, 9."""
    c = t.complexity
    counterexamples: list[dict] = []
    checked = 0
    exceptions = {3: 6, 9: 18}  # 9 = 3*3, 513 = (3*3*2+1)*3*3*3
    n = 1
    while 2**n + 1 <= t.limit:
        v = 2**n + 1
        want = exceptions.get(n, 2 * n + 1)
        checked += 1
        if c[v] != want:
            counterexamples.append({"n": v, "expected": want, "actual": c[v]})
        n += 1
    return Report(
        name="pow2-plus1",
        passed=not counterexamples,
        checked=checked,
        counterexamples=counterexamples,
        details=_provenance(t),
    )


def check_prime_plus1(t: ComplexityTable) -> Report:
    """Every prime's complexity is 1 + that of its predecessor (below the
    first sum-necessary number)."""
    limit = min(t.limit, FIRST_SUM_NECESSARY - 1)
    ps = np.array(primes_up_to(limit), dtype=np.int64)
    c = _comp_array(t)
    bad = ps[c[ps] != c[ps - 1] + 1]
    counterexamples = [
        {"n": int(p), "expected": int(c[p - 1] + 1), "actual": int(c[p])} for p in bad
    ]
    return Report(
        name="prime-plus1",
        passed=not counterexamples,
        checked=len(ps),
        counterexamples=counterexamples,
        details=_provenance(t),
    )


def check_defect_rank(t: ComplexityTable) -> Report:
    """Defect dominates floor((rank-1)/2) * (1 + 3*log3(6/7))."""
    if not t.has_ranks:
        raise ValueError("defect-rank check requires a table with ranks")
    c = _comp_array(t)[1:].astype(np.float64)
    r = _rank_array(t)[1:].astype(np.int64)
    n = np.arange(1, t.limit + 1, dtype=np.float64)
    d = c - 3.0 * np.log(n) / LN3
    rhs = ((r - 1) // 2).astype(np.float64) * _DEFECT_RANK_COEF
    bad = np.nonzero(d + _REAL_TOL < rhs)[0]
    counterexamples = [
        {
            "n": int(i) + 1,
            "defect": float(d[i]),
            "bound": float(rhs[i]),
            "rank": int(r[i]),
        }
        for i in bad[:100]
    ]
    return Report(
        name="defect-rank",
        passed=not len(bad),
        checked=t.limit,
        counterexamples=counterexamples,
        details={**_provenance(t), "violations": int(len(bad))},
    )


def mersenne_table(t: ComplexityTable) -> Report:
    """Excesses A(n), B(n) of 2^n -+ 1 over 2n, with their bound and
    recurrence checks.

    Rows (n, A, B, bound) land in details["rows"]; B and bound are None
    where out of range.  Checked facts: A(n) <= floor(log2 n) + H(n) - 3,
    A(2n) <= A(n) + B(n), A(3n) <= A(n) + B(n) + 1, A(n+1) <= A(n) + 1,
    and the doubling-exponent identity A(2^k) = k - 2 for k >= 1.
    """
    c = t.complexity
    limit = t.limit
    A: dict[int, int] = {}
    B: dict[int, int] = {}
    n = 1
    while 2**n - 1 <= limit:
        A[n] = c[2**n - 1] - 2 * n
        if 2**n + 1 <= limit:
            B[n] = c[2**n + 1] - 2 * n
        n += 1
    rows = []
    counterexamples: list[dict] = []
    checked = 0
    for n, a_val in A.items():
        bound = mersenne_upper_bound(n) - 2 * n if n >= 2 else None
        rows.append((n, a_val, B.get(n), bound))
        if bound is not None:
            checked += 1
            if a_val > bound:
                counterexamples.append(
                    {"fact": "excess-bound", "n": n, "excess": a_val, "bound": bound}
                )
    for n in A:
        if 2 * n in A and n in B:
            checked += 1
            if A[2 * n] > A[n] + B[n]:
                counterexamples.append({"fact": "double", "n": n, "lhs": A[2 * n], "rhs": A[n] + B[n]})
        if 3 * n in A and n in B:
            checked += 1
            if A[3 * n] > A[n] + B[n] + 1:
                counterexamples.append({"fact": "triple", "n": n, "lhs": A[3 * n], "rhs": A[n] + B[n] + 1})
        if n + 1 in A:
            checked += 1
            if A[n + 1] > A[n] + 1:
                counterexamples.append({"fact": "step", "n": n, "lhs": A[n + 1], "rhs": A[n] + 1})
    k = 1
    while 2**k in A:
        checked += 1
        if A[2**k] != k - 2:
            counterexamples.append(
                {"fact": "power-of-two-exponent", "k": k, "excess": A[2**k], "expected": k - 2}
            )
        k += 1
    return Report(
        name="mersenne",
        passed=not counterexamples,
        checked=checked,
        counterexamples=counterexamples,
        details={**_provenance(t), "rows": rows},
    )


# -- scans --------------------------------------------------------------


@dataclass(frozen=True)
class CollapseRecord:
    """Whether powers of p stop costing multiples of p's complexity."""

    p: int
    collapses_at: int | None  # least exponent k with c(p^k) < k*c(p); None = open
    checked_up_to: int  # largest exponent with p^k inside the table
    complexity: int
    rank: int | None
    log_complexity: float


def collapse_scan(t: ComplexityTable, prime_cap: int) -> list[CollapseRecord]:
    c = t.complexity
    out = []
    for p in primes_up_to(min(prime_cap, t.limit)):
        cp = c[p]
        collapses = None
        k = 2
        pk = p * p
        while pk <= t.limit:
            if c[pk] < k * cp:
                collapses = k
                break
            k += 1
            pk *= p
        checked = k if collapses else k - 1
        out.append(
            CollapseRecord(
                p=p,
                collapses_at=collapses,
                checked_up_to=checked,
                complexity=cp,
                rank=t.rank[p] if t.has_ranks else None,
                log_complexity=log_complexity(p, cp),
            )
        )
    return out


@dataclass(frozen=True)
class FirstOpRecord:
    """How the outermost operation of n's shortest expressions must look."""

    n: int
    has_product_decomposition: bool
    minimal_addend: int | None
    classification: str  # product, sub1, sub6, sub8, sub9, sub_other


def classify_first_operation(t: ComplexityTable, n: int) -> FirstOpRecord:
    if not 2 <= n <= t.limit:
        raise ValueError(f"n = {n} outside classification range [2, {t.limit}]")
    c = t.complexity
    cn = c[n]
    has_product = False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0 and c[d] + c[n // d] == cn:
            has_product = True
            break
    minimal = None
    cap = min(n // 2, addend_bound(n, cn))
    for a in range(1, cap + 1):
        if c[a] + c[n - a] == cn:
            minimal = a
            break
    if has_product:
        cls = "product"
    elif minimal == 1:
        cls = "sub1"
    elif minimal in (6, 8, 9):
        cls = f"sub{minimal}"
    else:
        cls = "sub_other"
    return FirstOpRecord(
        n=n, has_product_decomposition=has_product, minimal_addend=minimal, classification=cls
    )


def first_operation_scan(t: ComplexityTable) -> list[FirstOpRecord]:
    """All n whose optimum forces a first subtraction of 6 or more.

    Numbers whose optimum is reachable by a product split or by +1 are
    filtered out; the survivors are classified individually.  Empty at
    any limit below the first sum-necessary number.
    """
    c = _comp_array(t)
    plus1 = np.nonzero(c[2:] != c[1:-1] + 1)[0] + 2
    out = []
    for n in plus1:
        rec = classify_first_operation(t, int(n))
        if rec.classification not in ("product", "sub1"):
            out.append(rec)
    return out


@dataclass(frozen=True)
class ChainRecord:
    """Backward doubling chain of primes ending at a least-value entry."""

    n: int  # complexity whose least value this is
    end: int
    chain: list[int]  # p_1 .. p_k with p_{i+1} = 2 p_i + 1, last = end
    length: int
    end_is_prime: bool
    near_prime: dict[int, bool | None] = field(default_factory=dict)


def _backward_chain(p: int) -> list[int]:
    chain = [p]
    while p % 2 == 1 and is_prime((p - 1) // 2):
        p = (p - 1) // 2
        chain.append(p)
    chain.reverse()
    return chain


def chain_scan(seq: SequenceSet) -> list[ChainRecord]:
    """Chain and divisibility structure of every reliable least value."""
    out = []
    for k in sorted(seq.reliable_smallest().keys()):
        e = seq.smallest[k]
        prime = is_prime(e)
        near: dict[int, bool | None] = {}
        for kk in (1, 2, 3):
            q, r = divmod(e - kk, kk + 1)
            near[kk] = is_prime(q) if r == 0 else None
        chain = _backward_chain(e) if prime else []
        out.append(
            ChainRecord(
                n=k,
                end=e,
                chain=chain,
                length=len(chain),
                end_is_prime=prime,
                near_prime=near,
            )
        )
    return out


# -- least-value asymptote ----------------------------------------------


@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    residuals: dict[int, float]
    n_range: tuple[int, int]


def fit_e_asymptote(
    seq: SequenceSet, n_range: tuple[int, int] | None = None
) -> FitResult:
    """Ordinary least squares of log3(smallest[k]) against k."""
    ks = sorted(seq.reliable_smallest().keys())
    if n_range is not None:
        ks = [k for k in ks if n_range[0] <= k <= n_range[1]]
    if len(ks) < 10:
        raise ValueError(f"need at least 10 reliable points, have {len(ks)}")
    x = np.array(ks, dtype=np.float64)
    y = np.array([math.log(seq.smallest[k]) / LN3 for k in ks])
    xbar, ybar = x.mean(), y.mean()
    slope = float(((x - xbar) * (y - ybar)).sum() / ((x - xbar) ** 2).sum())
    intercept = float(ybar - slope * xbar)
    residuals = {k: float(yv - (slope * k + intercept)) for k, yv in zip(ks, y)}
    return FitResult(
        slope=slope,
        intercept=intercept,
        residuals=residuals,
        n_range=(ks[0], ks[-1]),
    )


# -- logarithmic complexity ranking --------------------------------------


@dataclass(frozen=True)
class TopLogEntry:
    n: int
    complexity: int
    log_complexity: float
    rank: int | None
    unique: bool  # no other n in range shares this value (within 1e-12)


def top_log_complexity(t: ComplexityTable, count: int) -> list[TopLogEntry]:
    """The ``count`` largest values of complexity/log3(n), descending,
    ties broken toward smaller n."""
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    if t.limit < 2:
        return []
    c = _comp_array(t)[2:].astype(np.float64)
    ns = np.arange(2, t.limit + 1, dtype=np.float64)
    logc = c * LN3 / np.log(ns)
    count = min(count, len(logc))
    take = min(count + 64, len(logc))  # margin absorbs boundary ties
    part = np.argpartition(-logc, take - 1)[:take]
    order = part[np.lexsort((part, -logc[part]))][:count]
    svals = np.sort(logc)
    out = []
    for i in order:
        v = float(logc[i])
        lo = np.searchsorted(svals, v - 1e-12, side="left")
        hi = np.searchsorted(svals, v + 1e-12, side="right")
        out.append(
            TopLogEntry(
                n=int(i) + 2,
                complexity=int(c[i]),
                log_complexity=v,
                rank=t.rank[int(i) + 2] if t.has_ranks else None,
                unique=bool(hi - lo == 1),
            )
        )
    return out
