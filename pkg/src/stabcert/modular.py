"""Residue arithmetic modulo small primes.

Orbits of 0 under x -> x^d + c^{-1} (mod k) are finite, so they split into a
preperiodic tail and a cycle. Cube sieves read the factor values g1, g2 off
that decomposition instead of touching the exact, doubly exponential iterates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import ModulusError, UnusableModulusError, UselessModulusError
from .exact_core import FACTORS, is_prime, primes_up_to


def mod_inverse(a, k):
    try:
        return pow(a, -1, k)
    except ValueError:
        raise UnusableModulusError(f'{a} is not invertible modulo {k}') from None


@dataclass(frozen=True)
class OrbitModK:
    """Rho-shaped orbit of 0: s_0 = 0, s_{n+1} = s_n^d + c_inv (mod k).

    The tail is empty exactly when 0 lies on the cycle; the cycle then
    starts at 0.
    """

    k: int
    d: int
    c_inv: int
    tail: tuple
    cycle: tuple

    def __getitem__(self, n):
        t = len(self.tail)
        if n < t:
            return self.tail[n]
        return self.cycle[(n - t) % len(self.cycle)]


@lru_cache(maxsize=4096)
def orbit_mod_k(d, c, k):
    if k < 2:
        raise ModulusError('modulus must be at least 2')
    if math.gcd(c, k) != 1:
        raise UnusableModulusError(f'gcd({c}, {k}) != 1')
    c_inv = mod_inverse(c % k, k)
    first_seen = {}
    seq = []
    x = 0
    while x not in first_seen:
        first_seen[x] = len(seq)
        seq.append(x)
        x = (pow(x, d, k) + c_inv) % k
    i = first_seen[x]
    return OrbitModK(k, d, c_inv, tuple(seq[:i]), tuple(seq[i:]))


@dataclass(frozen=True)
class ResidueSet:
    k: int
    p: int
    members: frozenset

    def __contains__(self, x):
        return x % self.k in self.members

    def __len__(self):
        return len(self.members)


@lru_cache(maxsize=None)
def pth_power_residues(k, p):
    """Residues mod k that are p-th powers, by direct enumeration."""
    return ResidueSet(k, p, frozenset(pow(x, p, k) for x in range(k)))


def eval_g_mod_k(which, m, x, k):
    if m % k == 0:
        raise UnusableModulusError(f'{k} divides m={m}')
    inv = mod_inverse(m % k, k)
    if which == 'g1':
        return (x + inv) % k
    if which == 'g2':
        return (x * x - x * inv + inv * inv) % k
    raise ValueError(f'unknown factor {which!r}; expected g1 or g2')


@dataclass(frozen=True)
class SieveResult:
    """Outcome of a cube sieve over the index class start, start+step, ...

    ``moduli`` holds one prime for a plain sieve and several for a joint
    cover, where each index only needs a non-cube witness at one modulus.
    """

    which: str
    m: int
    moduli: tuple
    start: int
    step: int
    passed: bool
    tail_len: int
    cycle_len: int
    indices_checked: int
    witness_index: int | None = None
    witness_values: tuple | None = None

    def __bool__(self):
        return self.passed


def _check_cube_modulus(k, m):
    if not is_prime(k):
        raise ModulusError(f'sieve modulus {k} is not prime')
    if m % k == 0:
        raise UnusableModulusError(f'{k} divides m={m}')
    if k % 3 != 1:
        raise UselessModulusError(f'every residue is a cube modulo {k}')


def sieve_cover(which, m, moduli, start=2, step=2):
    """Joint cube sieve: PASS iff every index n = start + j*step has a modulus
    at which g_which(f^n(0)) is a nonzero non-cube, with c = m^3.

    The joint state is periodic past the longest tail with period
    lcm(step, cycle lengths), so a finite window decides the infinite claim.
    """
    if which not in FACTORS:
        raise ValueError(f'unknown factor {which!r}; expected g1 or g2')
    if start < 0 or step < 1:
        raise ValueError('need start >= 0 and step >= 1')
    moduli = tuple(moduli)
    if not moduli:
        raise ValueError('at least one modulus required')
    for k in moduli:
        _check_cube_modulus(k, m)

    # per modulus: the orbit's factor values, flagged True where a cube
    tables = []
    for k in moduli:
        orb = orbit_mod_k(3, pow(m, 3, k), k)
        cubes = pth_power_residues(k, 3)
        tail = tuple(eval_g_mod_k(which, m, x, k) for x in orb.tail)
        cyc = tuple(eval_g_mod_k(which, m, x, k) for x in orb.cycle)
        tables.append((tail, cyc, cubes))

    tail_len = max(len(t[0]) for t in tables)
    period = step
    for t in tables:
        period = math.lcm(period, len(t[1]))
    longest_cycle = max(len(t[1]) for t in tables)
    hi = max(tail_len, start) + period + longest_cycle

    checked = 0
    for n in range(start, hi + 1, step):
        checked += 1
        values = []
        for tail, cyc, cubes in tables:
            v = tail[n] if n < len(tail) else cyc[(n - len(tail)) % len(cyc)]
            values.append(v)
        if all(v in cubes for v, (_, _, cubes) in zip(values, tables)):
            return SieveResult(which, m, moduli, start, step, False, tail_len,
                               period, checked, n, tuple(values))
    return SieveResult(which, m, moduli, start, step, True, tail_len, period, checked)


def sieve_indices(which, m, k, start=2, step=2):
    """Cube sieve at a single prime k; residue 0 counts as a cube."""
    return sieve_cover(which, m, (k,), start, step)


def cube_sieve_primes(bound):
    """Primes k <= bound with k = 1 (mod 3), the only useful cube-sieve moduli."""
    return tuple(k for k in primes_up_to(bound) if k % 3 == 1)


def numerator_mod(d, c, n, q):
    """a_n mod q via the numerator recurrence, exponents reduced mod q - 1."""
    if c % q == 0:
        raise UnusableModulusError(f'{q} divides c={c}')
    a = 1 % q
    cq = c % q
    for j in range(2, n + 1):
        e = (pow(d, j - 1, q - 1) - 1) % (q - 1)
        a = (pow(a, d, q) + pow(cq, e, q)) % q
    return a


def pth_power_obstruction(d, c, n, p, q_bound):
    """Smallest prime q <= q_bound, q = 1 (mod p), q not dividing c, with
    a_n mod q a nonzero non-p-th power. None means inconclusive.
    """
    if d % p != 0:
        raise ValueError(f'p={p} does not divide d={d}')
    for q in primes_up_to(q_bound):
        if q % p != 1 or c % q == 0:
            continue
        a = numerator_mod(d, c, n, q)
        if a != 0 and pow(a, (q - 1) // p, q) != 1:
            return q
    return None
