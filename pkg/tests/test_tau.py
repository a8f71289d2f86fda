import math

import pytest

from lcentral.tau import (hecke_eigenvalue_defect, tau_table,
                          tau_table_bigint)

TABLE = tau_table(5000)


def test_small_values_frozen():
    # direct expansion of the eta product to O(q^14)
    assert TABLE[1:14] == [1, -24, 252, -1472, 4830, -6048, -16744, 84480,
                           -113643, -115920, 534612, -370944, -577738]


def test_tau_691_frozen():
    assert TABLE[691] == -2747313442193908


def test_ntt_route_matches_bigint_route():
    assert TABLE == tau_table_bigint(5000)


def test_691_congruence():
    # tau(n) = sigma_11(n) mod 691
    for n in range(1, 2000):
        sigma11 = sum(d ** 11 for d in range(1, n + 1) if n % d == 0)
        assert (TABLE[n] - sigma11) % 691 == 0


def test_hecke_multiplicativity():
    for m, n in [(2, 3), (3, 4), (5, 7), (8, 9), (25, 49), (11, 13)]:
        assert math.gcd(m, n) == 1
        assert TABLE[m * n] == TABLE[m] * TABLE[n]
        assert hecke_eigenvalue_defect(TABLE, m, n) == 0


def test_hecke_prime_square_recursion():
    for p in (2, 3, 5, 7, 11, 13, 17):
        assert TABLE[p * p] == TABLE[p] ** 2 - p ** 11


def test_hecke_defect_requires_coprimality():
    with pytest.raises(ValueError):
        hecke_eigenvalue_defect(TABLE, 4, 6)


def test_deligne_bound_at_primes():
    # |tau(p)| <= 2 p^(11/2), exact integer comparison via squaring
    for p in range(2, 5001):
        if any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
            continue
        assert TABLE[p] ** 2 <= 4 * p ** 11, p


def test_table_guards():
    with pytest.raises(ValueError):
        tau_table(0)
    with pytest.raises(ValueError):
        tau_table_bigint(30000)  # reference route is capped by design


def test_routes_agree_on_tiny_tables():
    for limit in (1, 2, 3, 10):
        assert tau_table(limit) == tau_table_bigint(limit)
