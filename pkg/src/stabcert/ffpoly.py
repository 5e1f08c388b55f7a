"""Polynomials over GF(p) and degree-pattern irreducibility certificates.

Polynomials are coefficient lists, lowest degree first: a_0 + a_1 X + ... +
a_n X^n is ``[a_0, a_1, ..., a_n]``. Reduced polynomials have a nonzero
leading entry; ``[]`` is the zero polynomial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DegreeDropError, NonSquarefreeError
from .exact_core import primes_up_to


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def reduce_mod(coeffs, p):
    return _trim([c % p for c in coeffs])


def deg(a):
    return len(a) - 1


def _sub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def _divmod(a, b, p):
    if not b:
        raise ZeroDivisionError('polynomial division by zero')
    a = list(a)
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        t = a[-1] * inv % p
        q[shift] = t
        for i, y in enumerate(b):
            a[i + shift] = (a[i + shift] - t * y) % p
        _trim(a)
    return _trim(q), a


def _mod(a, b, p):
    return _divmod(a, b, p)[1]


def _monic(a, p):
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def poly_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, _mod(a, b, p)
    return _monic(a, p)


def _derivative(a, p):
    return _trim([i * c % p for i, c in enumerate(a)][1:])


def _pow_mod(base, e, f, p):
    result = [1]
    base = _mod(base, f, p)
    while e:
        if e & 1:
            result = _mod(_mul(result, base, p), f, p)
        base = _mod(_mul(base, base, p), f, p)
        e >>= 1
    return result


def _frobenius_powers(f, p, count):
    """X^(p^i) mod f for i = 1..count."""
    h = [0, 1]
    out = []
    for _ in range(count):
        h = _pow_mod(h, p, f, p)
        out.append(h)
    return out


def _prepare(coeffs, p):
    f = reduce_mod(coeffs, p)
    if len(f) != len(_trim(list(coeffs))):
        raise DegreeDropError(f'leading coefficient vanishes modulo {p}')
    return _monic(f, p)


def _prime_divisors(n):
    return [q for q in primes_up_to(n) if n % q == 0]


def poly_irreducible_mod_p(coeffs, p):
    """Rabin's test: f of degree n is irreducible over GF(p) iff
    X^(p^n) = X mod f and gcd(X^(p^(n/q)) - X, f) = 1 for each prime q | n.
    """
    f = _prepare(coeffs, p)
    n = deg(f)
    if n < 1:
        return False
    if n == 1:
        return True
    frob = _frobenius_powers(f, p, n)
    x = [0, 1]
    if _sub(frob[n - 1], x, p):
        return False
    for q in _prime_divisors(n):
        if deg(poly_gcd(f, _sub(frob[n // q - 1], x, p), p)) > 0:
            return False
    return True


def is_squarefree_mod_p(coeffs, p):
    f = _prepare(coeffs, p)
    df = _derivative(f, p)
    if not df:
        return deg(f) == 0
    return deg(poly_gcd(f, df, p)) == 0


def degree_pattern_mod_p(coeffs, p):
    """Degrees of the irreducible factors of a squarefree reduction, as a
    sorted tuple (distinct-degree factorization).
    """
    f = _prepare(coeffs, p)
    if not is_squarefree_mod_p(f, p):
        raise NonSquarefreeError(f'reduction modulo {p} is not squarefree')
    x = [0, 1]
    h = x
    degrees = []
    i = 0
    while deg(f) >= 2 * (i + 1):
        i += 1
        h = _pow_mod(h, p, f, p)
        g = poly_gcd(f, _sub(h, x, p), p)
        if deg(g) > 0:
            degrees.extend([i] * (deg(g) // i))
            f = _divmod(f, g, p)[0]
            h = _mod(h, f, p)
    if deg(f) > 0:
        degrees.append(deg(f))
    return tuple(sorted(degrees))


def _subset_sums(pattern):
    total = sum(pattern)
    reach = 1
    for d in pattern:
        reach |= reach << d
    return {s for s in range(1, total) if reach >> s & 1}


@dataclass(frozen=True)
class IrreducibilityCertificate:
    """Degree-pattern evidence for irreducibility over the rationals.

    ``possible_degrees`` are the factor degrees in (0, deg) that every
    collected pattern still allows; the certificate is conclusive when none
    remain.
    """

    coeffs: tuple
    patterns: dict = field(default_factory=dict)
    possible_degrees: frozenset = frozenset()

    @property
    def conclusive(self):
        return not self.possible_degrees

    @property
    def verdict(self):
        return 'CONCLUSIVE' if self.conclusive else 'INCONCLUSIVE'


def q_irreducibility_certificate(coeffs, prime_budget=200):
    """Collect factor-degree patterns modulo primes <= prime_budget.

    A factorization over Q would reduce to a factorization of the same
    degrees modulo every good prime, so an empty intersection of achievable
    sub-degree sets proves irreducibility.
    """
    coeffs = _trim(list(coeffs))
    n = deg(coeffs)
    if n < 1:
        raise ValueError('need a nonconstant polynomial')
    if math.gcd(*coeffs) != 1:
        raise ValueError('polynomial must be primitive')
    possible = set(range(1, n))
    patterns = {}
    for p in primes_up_to(prime_budget):
        if coeffs[-1] % p == 0 or not is_squarefree_mod_p(coeffs, p):
            continue
        pattern = degree_pattern_mod_p(coeffs, p)
        patterns[p] = pattern
        possible &= _subset_sums(pattern)
        if not possible:
            break
    return IrreducibilityCertificate(tuple(coeffs), patterns, frozenset(possible))

