import random

import pytest
import sympy
from hypothesis import given, strategies as st

from zsig import factor, is_prime, v_p
from zsig.arith import trial_division


def _sieve(n):
    flags = bytearray([1]) * (n + 1)
    flags[:2] = b"\x00\x00"
    for p in range(2, int(n**0.5) + 1):
        if flags[p]:
            flags[p * p :: p] = b"\x00" * len(flags[p * p :: p])
    return flags


def test_is_prime_examples():
    assert is_prime(677)
    assert not is_prime(458330)
    assert not is_prime(1)
    assert is_prime(2)
    assert is_prime(45833)


def test_is_prime_rejects_nonpositive():
    with pytest.raises(ValueError):
        is_prime(0)


def test_is_prime_small_range_vs_sieve():
    flags = _sieve(200_000)
    for m in range(1, 200_001):
        assert is_prime(m) == bool(flags[m]), m


def test_is_prime_random_tier_vs_sympy():
    rng = random.Random(0)
    for _ in range(300):
        m = rng.randrange(2, 10**12)
        assert is_prime(m) == sympy.isprime(m), m


def test_is_prime_large():
    # 2^89 - 1 is a Mersenne prime; its neighbours are not
    m = 2**89 - 1
    assert is_prime(m)
    assert not is_prime(m - 2)
    assert not is_prime(m + 2)


@pytest.mark.exhaustive
def test_is_prime_exhaustive_to_ten_million():
    flags = _sieve(10_000_000)
    for m in range(1, 10_000_001):
        assert is_prime(m) == bool(flags[m]), m


def test_v_p_examples():
    assert v_p(26, 2) == 1
    assert v_p(26, 13) == 1
    assert v_p(8, 2) == 3
    assert v_p(-24, 2) == 3
    assert v_p(7, 2) == 0
    with pytest.raises(ValueError):
        v_p(0, 3)


@given(
    st.integers(min_value=1, max_value=10**9),
    st.integers(min_value=1, max_value=10**9),
    st.sampled_from([2, 3, 5, 7, 11, 13]),
)
def test_v_p_additive(a, b, p):
    assert v_p(a * b, p) == v_p(a, p) + v_p(b, p)


def test_factor_examples():
    rep = factor(765)
    assert rep.factored == ((3, 2), (5, 1), (17, 1))
    assert rep.cofactor == 1 and rep.cofactor_status == "one"
    rep = factor(677)
    assert rep.factored == ((677, 1),)
    rep = factor(1)
    assert rep.factored == () and rep.cofactor == 1 and rep.cofactor_status == "one"


def test_factor_reconstructs():
    rng = random.Random(1)
    for _ in range(60):
        m = rng.randrange(2, 10**14)
        rep = factor(m, rho_budget=10**6)
        assert rep.reconstruct() == m
        for p, e in rep.factored:
            assert e >= 1
            assert is_prime(p)


def test_factor_matches_sympy_when_complete():
    rng = random.Random(2)
    for _ in range(40):
        m = rng.randrange(2, 10**10)
        rep = factor(m, rho_budget=10**6)
        if rep.complete:
            assert dict(rep.factored) == sympy.factorint(m)


def test_factor_deterministic():
    m = 2**64 + 1
    a = factor(m, rho_budget=10**6, seed=7)
    b = factor(m, rho_budget=10**6, seed=7)
    assert a == b


def test_factor_budget_exhaustion_reports_cofactor():
    # product of two 15-digit primes is far beyond a tiny rho budget
    p, q = 1_000_000_000_000_037, 1_000_000_000_000_091
    rep = factor(p * q, rho_budget=1_000)
    assert rep.cofactor == p * q
    assert rep.cofactor_status == "composite_unfactored"
    assert rep.reconstruct() == p * q


def test_trial_division_huge_input():
    m = (2**300 + 1) * 3**5 * 999983
    found, rest = trial_division(m)
    assert found[3] == 5
    assert found[999983] >= 1
    acc = rest
    for p, e in found.items():
        acc *= p**e
    assert acc == m
