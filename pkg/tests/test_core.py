import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from intcomplexity.core import (
    BoundPair,
    ComplexityTable,
    addend_bound,
    complexity_bounds,
    defect,
    integer_logarithm,
    is_power_of_3,
    log_complexity,
    lower_bound,
    max_expressible,
    mersenne_upper_bound,
    second_max_expressible,
    upper_bound,
)


def naive_lower_bound(n: int) -> int:
    # least c with 3^c >= n^3, grown by repeated multiplication
    cube = n**3
    c, p = 0, 1
    while p < cube:
        p *= 3
        c += 1
    return max(c, 1)


def test_lower_bound_examples():
    assert lower_bound(3) == 3
    assert lower_bound(81) == 12
    assert lower_bound(1439) == 20


def test_lower_bound_exact_at_powers_of_three():
    for b in range(1, 40):
        assert lower_bound(3**b) == 3 * b
        assert lower_bound(3**b + 1) == 3 * b + 1


@given(st.integers(2, 10**12))
def test_lower_bound_matches_naive(n):
    assert lower_bound(n) == naive_lower_bound(n)


@given(st.integers(2, 10**9))
def test_bounds_order(n):
    assert lower_bound(n) <= upper_bound(n) + 1e-9
    bp = complexity_bounds(n)
    assert bp.lower <= bp.upper


def test_lower_bound_domain():
    with pytest.raises(ValueError):
        lower_bound(1)


def test_bound_pair_validates():
    with pytest.raises(ValueError):
        BoundPair(lower=2.0, upper=1.0)


def test_max_expressible_values():
    assert max_expressible(1) == 1
    assert max_expressible(2) == 2
    assert max_expressible(3) == 3
    assert max_expressible(4) == 4
    assert max_expressible(5) == 6
    assert max_expressible(8) == 18
    assert max_expressible(11) == 54
    with pytest.raises(ValueError):
        max_expressible(0)


def test_max_expressible_monotone():
    vals = [max_expressible(k) for k in range(1, 200)]
    assert all(a < b for a, b in zip(vals, vals[1:]))


@given(st.integers(1, 60), st.integers(1, 60))
def test_max_expressible_supermultiplicative(x, y):
    assert max_expressible(x) * max_expressible(y) <= max_expressible(x + y)


def test_second_max_expressible():
    assert second_max_expressible(8) == 16
    assert second_max_expressible(9) == 24
    assert second_max_expressible(10) == 32
    with pytest.raises(ValueError):
        second_max_expressible(7)


def test_integer_logarithm():
    assert integer_logarithm(6) == 5
    assert integer_logarithm(12) == 7
    assert integer_logarithm(125) == 15
    assert integer_logarithm(97) == 97
    with pytest.raises(ValueError):
        integer_logarithm(1)


def test_log_complexity_values():
    assert abs(log_complexity(2, 2) - 3.1699) < 5e-4
    assert log_complexity(3, 3) == pytest.approx(3.0)
    assert abs(log_complexity(1439, 26) - 3.928) < 5e-4


def test_defect_values():
    assert defect(3, 3) == pytest.approx(0.0)
    assert defect(1, 1) == pytest.approx(1.0)
    assert abs(defect(2, 2) - 0.107) < 1e-3


def naive_addend_bound(n: int, c_upper: int) -> int:
    y = max_expressible(c_upper)
    if n * n < 4 * y:
        return n // 2
    best = 0
    for a in range(0, n // 2 + 1):
        if n - 2 * a >= 0 and (n - 2 * a) ** 2 >= n * n - 4 * y:
            best = a
    return best


def test_addend_bound_examples():
    # discriminant positive here: the bound is tight, not the clamp
    assert addend_bound(10, 7) == naive_addend_bound(10, 7) == 1
    # true clamp case: E(10) = 36 makes the discriminant negative
    assert addend_bound(10, 10) == 5
    assert addend_bound(1000, 30) == naive_addend_bound(1000, 30) == 63
    assert addend_bound(1000, 30) <= int(2 * 1000**0.585) + 1
    c29 = int(upper_bound(29))
    assert addend_bound(29, c29) <= int(2 * 29**0.585) + 1
    with pytest.raises(ValueError):
        addend_bound(1, 5)


@given(st.integers(2, 10**6), st.integers(1, 60))
def test_addend_bound_matches_naive(n, c):
    assert addend_bound(n, c) == naive_addend_bound(n, c)


def test_mersenne_upper_bound():
    assert mersenne_upper_bound(2) == 3
    assert mersenne_upper_bound(10) == 22  # excess bound 2 over 2n
    assert mersenne_upper_bound(32) == 67  # excess bound 3
    with pytest.raises(ValueError):
        mersenne_upper_bound(1)


def test_is_power_of_3():
    powers = {3**b for b in range(0, 20)}
    for n in range(1, 1000):
        assert is_power_of_3(n) == (n in powers)


# -- table invariants ----------------------------------------------------


def test_table_validation():
    with pytest.raises(ValueError):
        ComplexityTable(limit=2, complexity=b"\x00\x01", algorithm_tag="sieve")
    with pytest.raises(ValueError):
        ComplexityTable(limit=2, complexity=b"\x00\x01\x02", algorithm_tag="wat")
    with pytest.raises(ValueError):
        ComplexityTable(limit=2, complexity=b"\x00\x02\x02", algorithm_tag="dp")


def test_table_accessors(sieve_5k):
    assert sieve_5k.value(1) == 1
    assert len(sieve_5k) == 5000
    assert sieve_5k.has_ranks
    with pytest.raises(ValueError):
        sieve_5k.value(0)
    with pytest.raises(ValueError):
        sieve_5k.value(5001)


@settings(max_examples=300)
@given(st.integers(2, 5000))
def test_table_bounds_invariant(sieve_5k, n):
    c = sieve_5k.value(n)
    assert lower_bound(n) <= c <= upper_bound(n)
    assert c <= sieve_5k.value(n - 1) + 1
    assert n <= max_expressible(c)


@settings(max_examples=200)
@given(st.integers(2, 70), st.integers(2, 70))
def test_table_submultiplicative(sieve_5k, a, b):
    assert sieve_5k.value(a * b) <= sieve_5k.value(a) + sieve_5k.value(b)


def test_rank_one_exactly_two_to_five(sieve_5k):
    ones = [n for n in range(1, 5001) if sieve_5k.rank_of(n) == 1]
    assert ones == [2, 3, 4, 5]
    assert sieve_5k.rank_of(1) == 0


def test_defect_zero_iff_power_of_three(sieve_5k):
    for n in range(2, 5001):
        d = defect(n, sieve_5k.value(n))
        assert d >= -1e-9
        assert (abs(d) < 1e-9) == is_power_of_3(n)


def test_lowest_complexity_at_powers_of_three(sieve_5k):
    b = 1
    while 3**b <= 5000:
        assert sieve_5k.value(3**b) == 3 * b == lower_bound(3**b)
        b += 1
