"""Stability criteria for z^d + 1/c and the small Diophantine scans behind them.

All inequality checks compare exact integers or Fractions; floating point only
appears in informational fields such as the abc quality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .exact_core import (default_max_index, iterate_orbit_exact, is_perfect_pth_power,
                         integer_pth_root_floor, numerators, primes_up_to, radical,
                         valuation)
from .ffpoly import q_irreducibility_certificate
from .modular import pth_power_obstruction


def _prime_divisors(n):
    return [p for p in primes_up_to(n) if n % p == 0]


def base_irreducible(d, c):
    """Whether z^d + 1/c is irreducible over Q.

    z^d - a is irreducible iff a is not a p-th power for each prime p | d and,
    when 4 | d, a is not of the form -4w^4. With a = -1/c this means -c is not
    a p-th power and, for 4 | d, c != 4t^4.
    """
    if d < 2 or c == 0:
        raise ValueError('need d >= 2 and c != 0')
    for p in _prime_divisors(d):
        if is_perfect_pth_power(-c, p) is not None:
            return False
    if d % 4 == 0 and c > 0 and c % 4 == 0:
        if is_perfect_pth_power(c // 4, 4) is not None:
            return False
    return True


def _split_exponents(d, primes):
    exps = []
    for p in primes:
        e = 0
        while d % p == 0:
            d //= p
            e += 1
        exps.append(e)
    return exps, d


def d14_inequality_scan(d_min, d_max):
    """Degrees d in [d_min, d_max] with 1/14 < 1/d + 1/(d^2 - 1)."""
    if not 3 <= d_min <= d_max:
        raise ValueError('need 3 <= d_min <= d_max')
    bound = Fraction(1, 14)
    return [d for d in range(d_min, d_max + 1)
            if bound < Fraction(1, d) + Fraction(1, d * d - 1)]


CASES = ('QuadraticCase', 'OddD', 'CoveredByDanielsonFein', 'PowerOfTwo', 'TwoThree',
         'TwoFiveSeven', 'FourMod12', 'NotCoveredUnconditional')


@dataclass(frozen=True)
class Classification:
    d: int
    case: str
    exponents: tuple = ()
    abc_note: str | None = None

    def as_dict(self):
        return {'d': self.d, 'case': self.case, 'exponents': list(self.exponents),
                'abc_note': self.abc_note}


def classify_stability(d):
    """First matching stability case for degree d, in the order of CASES."""
    if d < 2:
        raise ValueError('d must be at least 2')
    if d == 2:
        return Classification(d, 'QuadraticCase')
    if d % 2:
        if d % 3 == 0:
            return Classification(d, 'OddD')
        return Classification(d, 'CoveredByDanielsonFein')
    (r, s), rest = _split_exponents(d, (2, 3))
    if rest == 1 and s == 0:
        return Classification(d, 'PowerOfTwo', (r,))
    if rest == 1:
        return Classification(d, 'TwoThree', (r, s))
    (r, s, t), rest = _split_exponents(d, (2, 5, 7))
    if rest == 1 and d % 3 == 1:
        return Classification(d, 'TwoFiveSeven', (r, s, t))
    if d % 12 == 4:
        return Classification(d, 'FourMod12')
    if d in d14_inequality_scan(d, d):
        note = (f'survives the abc filter 1/14 < 1/d + 1/(d^2-1) at d={d}; '
                'needs the separate d = 14 argument')
    else:
        note = f'excluded under explicit abc: 1/14 >= 1/{d} + 1/{d * d - 1}'
    return Classification(d, 'NotCoveredUnconditional', abc_note=note)


def quadratic_factor_bound(c):
    """nu_2(1 + c): at most this many irreducible factors in any iterate of z^2 + 1/c."""
    if c % 2 == 0:
        raise ValueError(f'c={c} is even: no good reduction at 2')
    return valuation(1 + c, 2)


@dataclass(frozen=True)
class SquareCheck:
    n: int
    index: int  # subscript of the numerator a_index being tested
    status: str  # obstruction | exact | square | zero | uncertified
    prime: int | None = None

    @property
    def certified(self):
        return self.status in ('obstruction', 'exact')


@dataclass(frozen=True)
class SquareScan:
    c: int
    irreducible_base: bool
    preperiodic: bool
    checks: tuple = field(default_factory=tuple)

    @property
    def uncertified(self):
        return [ch.n for ch in self.checks if not ch.certified]


def quadratic_square_scan(c, N, q_bound):
    """For n = 1..N show that a_{n+1}, the numerator of f^(n+1)(0), is not a
    square, first by a quadratic non-residue modulo a small prime and
    otherwise by exact arithmetic when the numerator is small enough.
    """
    exact_limit = default_max_index(2)
    exact = numerators(2, c, min(N + 1, exact_limit))
    orbit = iterate_orbit_exact(2, c, min(N + 1, exact_limit))
    preperiodic = len({Fraction(0), *orbit}) < len(orbit) + 1
    checks = []
    for n in range(1, N + 1):
        idx = n + 1
        q = pth_power_obstruction(2, c, idx, 2, q_bound)
        if q is not None:
            checks.append(SquareCheck(n, idx, 'obstruction', q))
            continue
        if idx > len(exact):
            checks.append(SquareCheck(n, idx, 'uncertified'))
            continue
        a = exact[idx]
        if a == 0:
            status = 'zero'
        elif is_perfect_pth_power(a, 2) is not None:
            status = 'square'
        else:
            status = 'exact'
        checks.append(SquareCheck(n, idx, status))
    return SquareScan(c, base_irreducible(2, c), preperiodic, tuple(checks))


def catalan_scan(base_bound, exp_bound):
    """All (x, y, m, n) with 2 <= x, 1 <= y <= base_bound, 2 <= m, n <= exp_bound
    and x^m - y^n = 1."""
    found = []
    for x in range(2, base_bound + 1):
        for m in range(2, exp_bound + 1):
            v = x ** m - 1
            for n in range(2, exp_bound + 1):
                y = is_perfect_pth_power(v, n)
                if y is not None and 1 <= y <= base_bound:
                    found.append((x, y, m, n))
    return found


def _signed_range(bound, exponent):
    # even exponents: the sign of the base is invisible, keep the positive one
    pos = range(1, bound + 1)
    if exponent % 2 == 0:
        return list(pos)
    return [-v for v in reversed(pos)] + list(pos)


def _root_in_box(t, q, bound):
    if t == 0:
        return None
    if t < 0 and q % 2 == 0:
        return None
    r = integer_pth_root_floor(abs(t), q)
    if r ** q != abs(t) or r > bound:
        return None
    return -r if t < 0 else r


def fermat_brute_search(p, q, r, B):
    """Primitive solutions of a^p + b^q = c^r with 0 < |a|, |b|, |c| <= B.

    Bases with an even exponent are reported as positive only.
    """
    if min(p, q, r) < 2:
        raise ValueError('exponents must be at least 2')
    a_powers = [(a, a ** p) for a in _signed_range(B, p)]
    out = []
    for c in _signed_range(B, r):
        cr = c ** r
        for a, ap in a_powers:
            if math.gcd(a, c) != 1:
                continue
            b = _root_in_box(cr - ap, q, B)
            if b is None or math.gcd(a, b) != 1 or math.gcd(b, c) != 1:
                continue
            out.append((a, b, c))
    return sorted(out)


@dataclass(frozen=True)
class AbcCheck:
    a: int
    b: int
    c: int
    radical: int
    holds_74: bool  # c < N^(7/4), decided as c^4 < N^7
    quality: float | None


def abc_inequality_check(a, b, c):
    if min(a, b, c) < 1:
        raise ValueError('a, b, c must be positive')
    if a + b != c:
        raise ValueError('need a + b = c')
    if math.gcd(a, b) != 1 or math.gcd(a, c) != 1 or math.gcd(b, c) != 1:
        raise ValueError('a, b, c must be pairwise coprime')
    n = radical(a * b * c)
    quality = math.log(c) / math.log(n) if n > 1 else None
    return AbcCheck(a, b, c, n, c ** 4 < n ** 7, quality)


def a2_power_scan(d_max, c_max, d_min=2, c_min=2):
    """(d, c, p, root) where a_2 = 1 + c^(d-1) is a p-th power for a prime p | d,
    over d_min <= d <= d_max and c_min <= |c| <= c_max."""
    hits = []
    for d in range(d_min, d_max + 1):
        primes = _prime_divisors(d)
        for mag in range(c_min, c_max + 1):
            for c in (-mag, mag):
                a2 = 1 + c ** (d - 1)
                for p in primes:
                    root = is_perfect_pth_power(a2, p)
                    if root is not None:
                        hits.append((d, c, p, root))
    return hits


def g2_base_cube_scan(bound):
    """Integers m in [-bound, bound] with m^4 - m^2 + 1 a perfect cube."""
    return [m for m in range(-bound, bound + 1)
            if is_perfect_pth_power(m ** 4 - m ** 2 + 1, 3) is not None]


def iterate_polynomial(d, c, n):
    """Primitive integer coefficients (lowest degree first) of a positive
    multiple of f^n(z), f(z) = z^d + 1/c."""
    poly = [Fraction(0), Fraction(1)]  # z
    for _ in range(n):
        power = [Fraction(1)]
        for _ in range(d):
            prod = [Fraction(0)] * (len(power) + len(poly) - 1)
            for i, x in enumerate(power):
                if x:
                    for j, y in enumerate(poly):
                        prod[i + j] += x * y
            power = prod
        power[0] += Fraction(1, c)
        poly = power
    scale = math.lcm(*(x.denominator for x in poly))
    ints = [int(x * scale) for x in poly]
    g = math.gcd(*ints)
    if ints[-1] < 0:
        g = -g
    return [v // g for v in ints]


def check_d4_c2(prime_budget=200):
    """Degree-pattern irreducibility evidence for the second iterate at (d, c) = (4, 2)."""
    return q_irreducibility_certificate(iterate_polynomial(4, 2, 2), prime_budget)
