"""Published reference values used as golden fixtures.

Sources are the OEIS entries for the sequences involved (A005245
complexities, A005520 least values, A000792 greatest values, A001414
integer logarithm) and the published desk-scale computations derived
from them.  Values here are exact integers; nothing is computed.
"""

# complexities of 1..15
FIRST_FIFTEEN = [1, 2, 3, 4, 5, 5, 6, 6, 6, 7, 8, 7, 8, 8, 8]

# A005520: least value of each complexity, through 48
LEAST_VALUE = {
    1: 1, 2: 2, 3: 3, 4: 4, 5: 5, 6: 7, 7: 10, 8: 11, 9: 17, 10: 22,
    11: 23, 12: 41, 13: 47, 14: 59, 15: 89, 16: 107, 17: 167, 18: 179,
    19: 263, 20: 347, 21: 467, 22: 683, 23: 719, 24: 1223, 25: 1438,
    26: 1439, 27: 2879, 28: 3767, 29: 4283, 30: 6299, 31: 10079,
    32: 11807, 33: 15287, 34: 21599, 35: 33599, 36: 45197, 37: 56039,
    38: 81647, 39: 98999, 40: 163259, 41: 203999, 42: 241883,
    43: 371447, 44: 540539, 45: 590399, 46: 907199, 47: 1081079,
    48: 1851119,
}

# least value of each rank, through 19
LEAST_BY_RANK = {
    1: 2, 2: 6, 3: 7, 4: 14, 5: 23, 6: 86, 7: 179, 8: 538, 9: 1439,
    10: 9566, 11: 21383, 12: 122847, 13: 777419, 14: 1965374,
    15: 6803099, 16: 19860614, 17: 26489579, 18: 269998838, 19: 477028439,
}

# largest logarithmic complexities: (n, complexity, printed 3-decimal value, rank)
TOP_LOG = [
    (1439, 26, 3.928, 9),
    (23, 11, 3.854, 5),
    (719, 23, 3.841, 7),
    (179, 18, 3.812, 7),
    (4283, 29, 3.809, 7),
    (1438, 25, 3.777, 8),
    (59, 14, 3.772, 5),
    (6299, 30, 3.767, 7),
    (15287, 33, 3.763, 9),
    (107, 16, 3.762, 5),
    (347, 20, 3.756, 7),
    (1499, 25, 3.756, 7),
    (467, 21, 3.754, 5),
    (11807, 32, 3.749, 7),
    (263, 19, 3.746, 5),
    (21599, 34, 3.743, 7),
]

# excess of the complexity of 2^n - 1 over 2n, for n = 1..39
MERSENNE_EXCESS = {
    1: -1, 2: -1, 3: 0, 4: 0, 5: 1, 6: 0, 7: 1, 8: 1, 9: 1, 10: 2,
    11: 3, 12: 1, 13: 2, 14: 2, 15: 2, 16: 2, 17: 3, 18: 1, 19: 2,
    20: 2, 21: 2, 22: 3, 23: 4, 24: 2, 25: 3, 26: 3, 27: 2, 28: 3,
    29: 4, 30: 3, 31: 4, 32: 3, 33: 4, 34: 4, 35: 4, 36: 2, 37: 2,
    38: 2, 39: 3,
}

# primes below 1000 with a definitely known collapse exponent
COLLAPSE_POWER = {
    5: 6, 7: 9, 19: 6, 37: 5, 73: 6, 97: 6, 127: 2, 181: 3, 193: 4,
    241: 3, 271: 4, 331: 3, 337: 3, 457: 3, 631: 2, 641: 4, 653: 2,
    661: 3, 673: 3, 769: 3, 877: 3, 881: 2, 883: 3, 919: 3, 937: 3,
    977: 2,
}

# complexities where the least value ends a doubling chain of length
# exactly 4, within the published range (complexity <= 89)
CHAIN4_COMPLEXITIES = {
    11, 23, 34, 49, 51, 60, 61, 65, 66, 67, 70, 72, 73, 74, 77, 84,
    86, 87, 89,
}

# complexities whose least value ends a longer chain, with that length
CHAIN_LONG = {13: 5, 26: 5, 27: 6, 80: 5}

# complexities whose least value is not prime (1, 2^2, 2*5, 2*11, 2*719)
COMPOSITE_LEAST = {1, 4, 7, 10, 25}

# smallest number whose shortest expressions all start by subtracting 6
FIRST_SUB6 = 353942783
