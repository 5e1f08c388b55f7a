"""Exact integer and rational arithmetic for the orbit of 0 under z^d + 1/c.

Rationals are ``fractions.Fraction`` instances, which already keep the
numerator and a positive denominator in lowest terms (zero is ``0/1``).
Everything here is a pure function of its arguments.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import FactorizationError, ResourceGuardError

INFINITY = math.inf  # valuation of zero

# Bit-length ceiling for exact iterates unless the caller overrides it.
DEFAULT_MAX_BITS = 1 << 24

FACTORS = ('g1', 'g2')


def default_max_index(d):
    """Largest iterate index computed exactly without an explicit override."""
    return 10 if d == 2 else 6


def _check_growth(d, c, n, max_index, max_bits):
    limit = default_max_index(d) if max_index is None else max_index
    if n > limit:
        raise ResourceGuardError(
            f'iterate index {n} exceeds guard {limit} for d={d}; '
            'use the modular sieve or raise max_index')
    est_bits = d ** max(n - 1, 0) * max(abs(c).bit_length(), 1)
    if max_bits is not None and est_bits > max_bits:
        raise ResourceGuardError(
            f'f^{n}(0) for d={d}, c={c} needs about {est_bits} bits '
            f'(limit {max_bits})')


def _check_params(d, c):
    if d < 2:
        raise ValueError('degree d must be at least 2')
    if c == 0:
        raise ValueError('c must be nonzero')


def iterate_orbit_exact(d, c, N, max_index=None, max_bits=DEFAULT_MAX_BITS):
    """Return [f(0), f^2(0), ..., f^N(0)] for f(z) = z^d + 1/c, exactly."""
    _check_params(d, c)
    _check_growth(d, c, N, max_index, max_bits)
    step = Fraction(1, c)
    x = Fraction(0)
    out = []
    for _ in range(N):
        x = x ** d + step
        out.append(x)
    return out


@dataclass(frozen=True)
class NumeratorSeq:
    """Numerators a_1..a_N of f^n(0), where f^n(0) = a_n / c^(d^(n-1))."""

    d: int
    c: int
    values: tuple

    def __getitem__(self, n):
        # 1-based, matching the subscript of a_n
        if n < 1:
            raise IndexError(n)
        return self.values[n - 1]

    def __len__(self):
        return len(self.values)

    def orbit_value(self, n):
        return Fraction(self[n], self.c ** (self.d ** (n - 1)))


def numerators(d, c, N, max_index=None, max_bits=DEFAULT_MAX_BITS):
    """Run the recurrence a_1 = 1, a_n = a_{n-1}^d + c^(d^(n-1) - 1)."""
    _check_params(d, c)
    _check_growth(d, c, N, max_index, max_bits)
    values = []
    a = 1
    for n in range(1, N + 1):
        if n > 1:
            a = a ** d + c ** (d ** (n - 1) - 1)
        values.append(a)
    return NumeratorSeq(d, c, tuple(values))


def g_value(which, m, x):
    """Evaluate g1(x) = x + 1/m or g2(x) = x^2 - x/m + 1/m^2 exactly."""
    inv = Fraction(1, m)
    if which == 'g1':
        return x + inv
    if which == 'g2':
        return x * x - x * inv + inv * inv
    raise ValueError(f'unknown factor {which!r}; expected g1 or g2')


@dataclass(frozen=True)
class FactorNumeratorSeq:
    """Numerators of g(f^(n-1)(0)) for c = m^3, stored for n = 2..N.

    ``term(n)`` gives the subscript-n numerator (w_n for g1, x_n for g2),
    including n = 1, the numerator of g(0). Denominators are positive, so
    for m < 0 the g1 numerators pick up a sign.
    """

    m: int
    which: str
    values: tuple

    @property
    def last_index(self):
        return len(self.values) + 1

    def term(self, n):
        if n == 1:
            return g_value(self.which, self.m, Fraction(0)).numerator
        if not 2 <= n <= self.last_index:
            raise IndexError(n)
        return self.values[n - 2]


def factor_numerators(m, which, N, max_index=None, max_bits=DEFAULT_MAX_BITS):
    if m == 0:
        raise ValueError('m must be nonzero')
    if which not in FACTORS:
        raise ValueError(f'unknown factor {which!r}; expected g1 or g2')
    if N < 2:
        return FactorNumeratorSeq(m, which, ())
    orbit = iterate_orbit_exact(3, m ** 3, N - 1, max_index, max_bits)
    values = tuple(g_value(which, m, x).numerator for x in orbit)
    return FactorNumeratorSeq(m, which, values)


def integer_pth_root_floor(n, p):
    """Return the largest r >= 0 with r**p <= n."""
    if n < 0:
        raise ValueError('n must be nonnegative')
    if p < 1:
        raise ValueError('p must be positive')
    if n < 2 or p == 1:
        return n
    if p == 2:
        return math.isqrt(n)
    # Newton from above: start at a power of two that is >= the root.
    r = 1 << -(-n.bit_length() // p)
    while True:
        s = ((p - 1) * r + n // r ** (p - 1)) // p
        if s >= r:
            break
        r = s
    while r ** p > n:
        r -= 1
    while (r + 1) ** p <= n:
        r += 1
    return r


def is_perfect_pth_power(n, p):
    """Return r with r**p == n, or None.

    Negative n only has a root when p is odd; the root is then negative.
    """
    if n < 0:
        if p % 2 == 0:
            return None
        r = is_perfect_pth_power(-n, p)
        return None if r is None else -r
    r = integer_pth_root_floor(n, p)
    return r if r ** p == n else None


def valuation(x, p):
    """p-adic valuation of an integer or rational; INFINITY for zero."""
    x = Fraction(x)
    if x == 0:
        return INFINITY
    t = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        t += 1
    while den % p == 0:
        den //= p
        t -= 1
    return t


@lru_cache(maxsize=None)
def primes_up_to(n):
    """Primes <= n as a tuple (plain sieve of Eratosthenes)."""
    if n < 2:
        return ()
    flags = bytearray([1]) * (n + 1)
    flags[0] = flags[1] = 0
    for i in range(2, math.isqrt(n) + 1):
        if flags[i]:
            flags[i * i::i] = bytearray(len(range(i * i, n + 1, i)))
    return tuple(i for i, f in enumerate(flags) if f)


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
# Miller-Rabin with the bases above is exact below this bound.
_MR_DETERMINISTIC_LIMIT = 3317044064679887385961981


def _strong_probable_prime(n, a):
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(a, d, n)
    if x in (1, n - 1):
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n):
    """Deterministic primality for n below ~3.3e24.

    Larger inputs raise FactorizationError unless a witness proves them
    composite; a certificate must never rest on a probable prime.
    """
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    for a in _MR_BASES:
        if not _strong_probable_prime(n, a):
            return False
    if n < _MR_DETERMINISTIC_LIMIT:
        return True
    raise FactorizationError(n, f'cannot prove primality of {n} deterministically')


def _pollard_brent(n, iterations, rng):
    if n % 2 == 0:
        return 2
    for _ in range(8):
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        spent = 0
        while g == 1 and spent < iterations:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            spent += r
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    return None


def prime_factors(n, trial_bound=10 ** 5, rho_iterations=1 << 20):
    """Distinct prime factors of |n|, sorted.

    Trial division up to ``trial_bound`` then Pollard-Brent rho. Raises
    FactorizationError carrying the cofactor if a piece resists.
    """
    n = abs(n)
    if n == 0:
        raise ValueError('zero has no prime factorization')
    found = set()
    for q in primes_up_to(trial_bound):
        if q * q > n:
            break
        if n % q == 0:
            found.add(q)
            while n % q == 0:
                n //= q
    if n == 1:
        return sorted(found)
    rng = random.Random(n)  # seeded: factor search is reproducible
    stack = [n]
    while stack:
        x = stack.pop()
        if x == 1:
            continue
        if is_prime(x):
            found.add(x)
            continue
        r = is_perfect_pth_power(x, 2)
        if r is not None:
            stack.append(r)
            continue
        g = _pollard_brent(x, rho_iterations, rng)
        if g is None:
            raise FactorizationError(x)
        stack.extend((g, x // g))
    return sorted(found)


def radical(n, **kwargs):
    """Product of the distinct primes dividing n (radical(1) == 1)."""
    return math.prod(prime_factors(n, **kwargs))


@dataclass(frozen=True)
class RigidViolation:
    prime: int
    kind: str  # 'multiple' or 'gcd'
    indices: tuple
    valuations: tuple

    def __str__(self):
        return (f'p={self.prime} {self.kind}: indices {self.indices} '
                f'valuations {self.valuations}')


def rigid_divisibility_check(seq, prime_bound, index_bound):
    """Spot-check the rigid divisibility property on a factor numerator sequence.

    For every prime p <= prime_bound and indices n, k with n*k <= index_bound:
    if p divides term n then v_p(term kn) == v_p(term n); and if p divides
    terms n and j then p divides term gcd(n, j). Returns the violations found.
    """
    if index_bound > seq.last_index:
        raise ValueError(f'sequence only reaches index {seq.last_index}')
    terms = {n: seq.term(n) for n in range(1, index_bound + 1)}
    violations = []
    for p in primes_up_to(prime_bound):
        vals = {n: valuation(t, p) for n, t in terms.items()}
        for n in range(1, index_bound + 1):
            if not vals[n] > 0:
                continue
            for kn in range(2 * n, index_bound + 1, n):
                if vals[kn] != vals[n]:
                    violations.append(RigidViolation(p, 'multiple', (n, kn), (vals[n], vals[kn])))
            for j in range(n + 1, index_bound + 1):
                if vals[j] > 0:
                    g = math.gcd(n, j)
                    if not vals[g] > 0:
                        violations.append(RigidViolation(p, 'gcd', (n, j, g), (vals[n], vals[j], vals[g])))
    return violations
