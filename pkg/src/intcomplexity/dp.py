"""Sequential by-definition builder with incremental factorization.

For n = 2, 3, ... the complexity is the minimum of 1 + f[n-1], the best
divisor split f[d] + f[n/d], and the best sum split f[a] + f[n-a] with
the smaller addend a scanned from 6 up to the addend bound (addends 2-5
never beat the 1 + f[n-1] route, since a split off 2..5 can always be
rewritten to split off 1).  The bound is re-derived whenever the
running minimum improves, which keeps the scan a handful of steps for
almost every n.

Factorization rides a priority queue of eliminators: one entry per
prime p <= sqrt(limit), keyed by the smallest multiple of p not yet
passed.  Each prime enters the queue when the scan reaches p*p, so the
queue stays small and every composite is taken apart by popping its due
eliminators; whatever remains after division is a prime cofactor.

Builds can persist periodic checkpoints and resume bit-identically.
"""

from __future__ import annotations

import math
from heapq import heappop, heappush

from .core import ComplexityTable, MAX_COMPLEXITY
from .primality import primes_up_to
from .sieve import _addend_cap, _e_table
from . import storage


class EliminatorQueue:
    """Incremental factorization for a strictly increasing scan position."""

    def __init__(self, limit: int, start: int = 2):
        if limit < 1:
            raise ValueError(f"limit must be >= 1, got {limit}")
        if start < 2:
            raise ValueError(f"scan starts at 2, got {start}")
        self._limit = limit
        self._pos = start - 1
        self._primes = primes_up_to(math.isqrt(limit))
        self._heap: list[tuple[int, int]] = []
        self._next = 0
        # reconstruct the queue state as if the scan had already passed start-1
        while self._next < len(self._primes) and self._primes[self._next] ** 2 <= self._pos:
            p = self._primes[self._next]
            first = ((self._pos // p) + 1) * p
            heappush(self._heap, (first, p))
            self._next += 1

    def factorize_at(self, n: int) -> list[int]:
        """Prime factors of n with multiplicity; n must increase between calls."""
        if n <= self._pos:
            raise ValueError(
                f"factorize_at positions must be strictly increasing "
                f"(got {n} after {self._pos})"
            )
        self._pos = n
        heap = self._heap
        primes = self._primes
        while self._next < len(primes) and primes[self._next] ** 2 <= n:
            p = primes[self._next]
            heappush(heap, (p * p, p))
            self._next += 1
        # skipped positions leave entries behind the scan; advance them
        while heap and heap[0][0] < n:
            m, p = heappop(heap)
            heappush(heap, (((n + p - 1) // p) * p, p))
        out: list[int] = []
        rem = n
        while heap and heap[0][0] == n:
            _, p = heappop(heap)
            while rem % p == 0:
                rem //= p
                out.append(p)
            heappush(heap, (n + p, p))
        if rem > 1:
            out.append(rem)  # prime cofactor: no eliminator <= sqrt(limit) claimed it
        out.sort()
        return out


def factorize_at(queue: EliminatorQueue, n: int) -> list[int]:
    return queue.factorize_at(n)


def _divisor_splits(factors: list[int], n: int) -> list[int]:
    """All divisors d of n with 2 <= d <= sqrt(n), from the prime multiset."""
    root = math.isqrt(n)
    divs = [1]
    i = 0
    while i < len(factors):
        p = factors[i]
        e = 1
        while i + e < len(factors) and factors[i + e] == p:
            e += 1
        i += e
        cur = list(divs)
        pk = 1
        for _ in range(e):
            pk *= p
            for d in cur:
                v = d * pk
                if v <= root:
                    divs.append(v)
    return divs[1:]


def _run(
    f: bytearray,
    start: int,
    limit: int,
    queue: EliminatorQueue,
    E: list[int],
    scan_floor: list[int],
    addend_start: int,
    on_checkpoint,
) -> None:
    elen = len(E)
    for n in range(start, limit + 1):
        c = 1 + f[n - 1]
        factors = queue.factorize_at(n)
        if len(factors) > 1:
            nn = n
            fl = f
            for d in _divisor_splits(factors, n):
                w = fl[d] + fl[nn // d]
                if w < c:
                    c = w
        # sum scan; the floor test is "addend bound >= addend_start" rewritten
        if c < elen and scan_floor[c] >= n:
            a = _addend_cap(n, c, E)
            j = addend_start
            while j <= a:
                w = f[j] + f[n - j]
                if w < c:
                    c = w
                    a = _addend_cap(n, c, E)
                j += 1
        f[n] = c
        if on_checkpoint is not None:
            on_checkpoint(n)


def _scan_floor(E: list[int], addend_start: int) -> list[int]:
    # addend bound >= s  <=>  E[c] >= s*n - s*s  <=>  n <= (E[c] + s*s) // s
    s = addend_start
    return [0] + [(e + s * s) // s for e in E[1:]]


def build_dp(
    limit: int,
    checkpoint_every: int = 0,
    out: str | None = None,
    *,
    _addend_start: int = 6,
    _stop_at: int | None = None,
) -> ComplexityTable | storage.Checkpoint:
    """Build the complexity table for [1, limit] sequentially.

    When ``out`` is given, the table is persisted there; with
    ``checkpoint_every`` > 0, partial snapshots land at the same path
    every that-many entries (atomically, newest wins).  ``_stop_at``
    halts the build after that position and returns the checkpoint:
    a testing/operations hook for exercising resume.
    """
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    if limit > 2 and 3.0 * math.log2(limit) > MAX_COMPLEXITY:
        raise ValueError("limit too large for one-byte complexity storage")
    if checkpoint_every and not out:
        raise ValueError("checkpointing requires an output path")

    f = bytearray(limit + 1)
    f[1] = 1
    queue = EliminatorQueue(limit)
    E = _e_table(limit)
    floor6 = _scan_floor(E, _addend_start)

    stop = min(_stop_at, limit) if _stop_at is not None else limit

    def on_checkpoint(n: int) -> None:
        if checkpoint_every and n % checkpoint_every == 0 and n < limit:
            storage.save_checkpoint(out, limit, n, bytes(f[: n + 1]))

    _run(f, 2, stop, queue, E, floor6,
         _addend_start, on_checkpoint if out else None)

    if _stop_at is not None and stop < limit:
        if out:
            storage.save_checkpoint(out, limit, stop, bytes(f[: stop + 1]))
        return storage.Checkpoint(limit=limit, position=stop, complexity=bytes(f[: stop + 1]))

    table = ComplexityTable(
        limit=limit, complexity=bytes(f[: limit + 1]), rank=None, algorithm_tag="dp"
    )
    if out:
        storage.save(table, out)
    return table


def resume_dp(
    checkpoint: str,
    limit: int,
    out: str | None = None,
    checkpoint_every: int = 0,
) -> ComplexityTable:
    """Continue an interrupted build; the result is bit-identical to a
    one-shot build of the same limit.

    A limit at or below the stored position returns the truncated prefix
    without recomputing anything.
    """
    got = storage.load(checkpoint)
    if isinstance(got, ComplexityTable):
        position, prefix = got.limit, got.complexity
    else:
        position, prefix = got.position, got.complexity
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    if checkpoint_every and not out:
        raise ValueError("checkpointing requires an output path")

    if limit <= position:
        table = ComplexityTable(
            limit=limit, complexity=prefix[: limit + 1], rank=None, algorithm_tag="dp"
        )
        if out:
            storage.save(table, out)
        return table

    f = bytearray(limit + 1)
    f[: position + 1] = prefix
    queue = EliminatorQueue(limit, start=position + 1)
    E = _e_table(limit)
    floor6 = _scan_floor(E, 6)

    def on_checkpoint(n: int) -> None:
        if checkpoint_every and n % checkpoint_every == 0 and n < limit:
            storage.save_checkpoint(out, limit, n, bytes(f[: n + 1]))

    _run(f, position + 1, limit, queue, E, floor6, 6,
         on_checkpoint if out else None)

    table = ComplexityTable(
        limit=limit, complexity=bytes(f), rank=None, algorithm_tag="dp"
    )
    if out:
        storage.save(table, out)
    return table
