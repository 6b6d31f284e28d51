import numpy as np
import pytest

from golden import FIRST_FIFTEEN
from intcomplexity.enumerator import oracle_table
from intcomplexity.sieve import (
    MAX_SIEVE_LIMIT,
    _e_table,
    _product_pass,
    _sum_pass,
    _upper_profile,
    bootstrap_addends,
    build_sieve,
)


def test_first_fifteen():
    t = build_sieve(15)
    assert [t.value(n) for n in range(1, 16)] == FIRST_FIFTEEN


def test_rank_small():
    t = build_sieve(10, with_ranks=True)
    assert t.rank_of(7) == 3
    assert t.rank_of(1) == 0
    assert [t.rank_of(n) for n in (2, 3, 4, 5)] == [1, 1, 1, 1]


def test_matches_oracle():
    sv = build_sieve(600, with_ranks=True)
    oc = oracle_table(600)
    assert sv.complexity == oc.complexity
    assert sv.rank == oc.rank


def test_tiny_limits():
    assert build_sieve(1).value(1) == 1
    t = build_sieve(2, with_ranks=True)
    assert t.value(2) == 2 and t.rank_of(2) == 1
    t = build_sieve(3)
    assert [t.value(n) for n in (1, 2, 3)] == [1, 2, 3]


def test_extra_passes_change_nothing(sieve_5k):
    limit = sieve_5k.limit
    f = np.frombuffer(sieve_5k.complexity, dtype=np.uint8).astype(np.uint32)
    E_np = np.array(_e_table(limit), dtype=np.int64)
    profile = _upper_profile(limit)
    idx = np.arange(limit + 1, dtype=np.int64)
    assert not _product_pass(f, None, 98, limit)
    assert not _sum_pass(f, None, 99, limit, E_np, profile, idx, None)


def test_upper_bound_init_same_table():
    for limit in (100, 2000, 20_000):
        a = build_sieve(limit)
        b = build_sieve(limit, init_upper=True)
        assert a.complexity == b.complexity


def test_bootstrap_same_table():
    for limit in (100, 2000, 20_000):
        a = build_sieve(limit, with_ranks=True)
        b = build_sieve(limit, with_ranks=True, bootstrap=True)
        assert a.complexity == b.complexity
        assert a.rank == b.rank


def test_bootstrap_addend_set():
    conv = build_sieve(50)
    cands = set(bootstrap_addends(conv.complexity, 50))
    assert 1 in cands
    assert 6 in cands  # 2*3 beats any sum split
    assert 7 not in cands  # 7 = 1 + 2*3 is additive-optimal


def test_configuration_errors():
    with pytest.raises(ValueError):
        build_sieve(0)
    with pytest.raises(ValueError):
        build_sieve(10, with_ranks=True, init_upper=True)
    with pytest.raises(ValueError, match="dp builder"):
        build_sieve(MAX_SIEVE_LIMIT + 1)
