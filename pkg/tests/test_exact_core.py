import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from stabcert.errors import FactorizationError, ResourceGuardError
from stabcert.exact_core import (INFINITY, factor_numerators, integer_pth_root_floor,
                                 is_perfect_pth_power, is_prime, iterate_orbit_exact,
                                 numerators, prime_factors, primes_up_to, radical,
                                 rigid_divisibility_check, valuation)


def hand_orbit(d, c, n):
    # independent: plain repeated substitution
    x, out = Fraction(0), []
    for _ in range(n):
        x = Fraction(x.numerator ** d, x.denominator ** d) + Fraction(1, c)
        out.append(x)
    return out


@pytest.mark.parametrize('d, c, N, expected', [
    (2, 5, 2, [Fraction(1, 5), Fraction(6, 25)]),
    (3, 8, 2, [Fraction(1, 8), Fraction(65, 512)]),
    (2, 1, 3, [1, 2, 5]),
])
def test_iterate_orbit_examples(d, c, N, expected):
    assert iterate_orbit_exact(d, c, N) == expected


def test_orbit_denominators():
    for d, c in [(2, 5), (3, -4), (4, 3), (5, -2)]:
        for n, x in enumerate(iterate_orbit_exact(d, c, 4), start=1):
            assert x.denominator == abs(c) ** (d ** (n - 1))


def test_growth_guard():
    with pytest.raises(ResourceGuardError):
        iterate_orbit_exact(3, 7, 7)
    with pytest.raises(ResourceGuardError):
        numerators(2, 3, 11)
    assert len(iterate_orbit_exact(3, 7, 7, max_index=7)) == 7
    with pytest.raises(ResourceGuardError):
        iterate_orbit_exact(2, 10 ** 6, 10, max_bits=1000)


@pytest.mark.parametrize('d, c, N, expected', [
    (4, 2, 2, (1, 9)),
    (2, 5, 2, (1, 6)),
    (3, -1, 3, (1, 2, 9)),
])
def test_numerator_examples(d, c, N, expected):
    assert numerators(d, c, N).values == expected


@pytest.mark.parametrize('d', [2, 3, 4, 5, 6])
@pytest.mark.parametrize('c', [-7, -3, -2, 2, 3, 5, 12])
def test_numerator_invariants(d, c):
    n_max = 6 if d == 2 else 4
    seq = numerators(d, c, n_max)
    orbit = hand_orbit(d, c, n_max)
    for n in range(1, n_max + 1):
        assert (seq[n] - 1) % c == 0
        assert math.gcd(seq[n], c) == 1
        assert seq.orbit_value(n) == orbit[n - 1]
    for n in range(1, n_max):
        assert math.gcd(seq[n], seq[n + 1]) == 1


@pytest.mark.parametrize('m, which, N, expected', [
    (2, 'g1', 2, (5,)),
    (7, 'g2', 2, (2353,)),
    (1, 'g2', 2, (1,)),
])
def test_factor_numerator_examples(m, which, N, expected):
    assert factor_numerators(m, which, N).values == expected


def test_base_numerators_closed_forms():
    for m in range(-100, 101):
        if m == 0:
            continue
        # denominators are kept positive, so w_2 carries the sign of m^3
        assert factor_numerators(m, 'g1', 2).term(2) == (m * m + 1) * (1 if m > 0 else -1)
        assert factor_numerators(m, 'g2', 2).term(2) == m ** 4 - m ** 2 + 1


def test_factor_numerators_lowest_terms():
    # w_3 for m = 2: f^2(0) + 1/2 = 65/512 + 256/512
    seq = factor_numerators(2, 'g1', 3)
    assert seq.term(3) == 321
    assert seq.term(1) == 1


@pytest.mark.parametrize('n, p, expected', [
    (730, 3, 9), (0, 5, 0), (10 ** 18, 2, 10 ** 9), (1, 7, 1), (2 ** 300 - 1, 3, 2 ** 100 - 1),
])
def test_integer_root_examples(n, p, expected):
    assert integer_pth_root_floor(n, p) == expected


@given(st.integers(min_value=0, max_value=10 ** 60), st.integers(min_value=2, max_value=11))
def test_integer_root_bracket(n, p):
    r = integer_pth_root_floor(n, p)
    assert r ** p <= n < (r + 1) ** p


@pytest.mark.parametrize('n, p, expected', [(9, 2, 3), (-8, 3, -2), (2353, 3, None), (-4, 2, None)])
def test_perfect_power_examples(n, p, expected):
    assert is_perfect_pth_power(n, p) == expected


@given(st.integers(min_value=-10 ** 6, max_value=10 ** 6), st.sampled_from([2, 3, 5, 7]))
def test_perfect_power_roundtrip(r, p):
    n = r ** p
    root = is_perfect_pth_power(n, p)
    assert root is not None and root ** p == n
    if p % 2:
        assert root == r
    else:
        assert root == abs(r)


@given(st.integers(min_value=2, max_value=10 ** 6), st.sampled_from([2, 3, 5, 7]))
def test_successor_of_power_is_not_power(r, p):
    # 8 + 1 = 9 is a square but not a cube: p matches the exponent used
    assert is_perfect_pth_power(r ** p + 1, p) is None


@pytest.mark.parametrize('x, p, expected', [
    (Fraction(6, 25), 2, 1), (Fraction(1, 8), 2, -3), (Fraction(5, 7), 3, 0), (0, 5, INFINITY),
])
def test_valuation_examples(x, p, expected):
    assert valuation(x, p) == expected


def test_valuation_infinity_is_not_an_integer():
    assert not isinstance(valuation(0, 2), int)


nonzero = st.integers(min_value=-10 ** 9, max_value=10 ** 9).filter(bool)


@given(nonzero, nonzero, nonzero, nonzero, st.sampled_from([2, 3, 5, 7, 11]))
def test_valuation_additive(a, b, c, d, p):
    x, y = Fraction(a, b), Fraction(c, d)
    assert valuation(x * y, p) == valuation(x, p) + valuation(y, p)


@pytest.mark.parametrize('n, expected', [(12, 6), (9, 3), (-50, 10), (1, 1)])
def test_radical_examples(n, expected):
    assert radical(n) == expected


@settings(max_examples=60)
@given(st.integers(min_value=1, max_value=10 ** 30))
def test_prime_factors_match_sympy(n):
    assert prime_factors(n) == sorted(sympy.factorint(n))


def test_prime_factors_semiprime_beyond_trial_division():
    p, q = 1000003, 998244353
    assert prime_factors(p * q * 49) == [7, p, q]


def test_factorization_error_carries_cofactor():
    big = (1 << 127) - 1  # prime, too large for the deterministic test
    with pytest.raises(FactorizationError) as exc:
        radical(3 * big)
    assert exc.value.cofactor == big


def test_is_prime_and_sieve_agree():
    primes = set(primes_up_to(5000))
    assert all(is_prime(n) == (n in primes) for n in range(5001))


@pytest.mark.parametrize('m, which, primes, idx', [
    (2, 'g1', 100, 6), (3, 'g2', 50, 4), (1, 'g1', 10, 3),
])
def test_rigid_divisibility_examples(m, which, primes, idx):
    seq = factor_numerators(m, which, idx)
    assert rigid_divisibility_check(seq, primes, idx) == []


def test_rigid_divisibility_flags_a_broken_sequence():
    from stabcert.exact_core import FactorNumeratorSeq
    # terms 2..4 = 5, 7, 3: 5 | term 2 but not term 4
    fake = FactorNumeratorSeq(2, 'g1', (5, 7, 3))
    found = rigid_divisibility_check(fake, 10, 4)
    assert any(v.prime == 5 and v.kind == 'multiple' for v in found)
