"""Certification campaign for the reducible cubics f(z) = z^3 + 1/m^3.

f factors as g1(z) g2(z) with g1 = z + 1/m and g2 = z^2 - z/m + 1/m^2.
Each iterate g(f^n(z)) stays irreducible when no g(f^n(0)), n >= 1, is a
rational cube. The odd iterate indices follow from the base value (the
numerator sequences are rigid divisibility sequences), so a certificate for
(m, g) consists of

* an exact check that the base numerator w_2 = m^2 + 1 or
  x_2 = m^4 - m^2 + 1 is not a cube, and
* a cube sieve proving g(f^n(0)) is not a cube for every even n >= 2:
  a built-in table modulus, else the smallest single prime that passes,
  else (optionally) a pair of primes that jointly witnesses every index.

m = 1 with g2 has a cube base value and goes through a dedicated path.
Negative m reduce to |m| because f_{-c}^n(0) = -f_c^n(0).
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

from .errors import CertificationError
from .exact_core import FACTORS, is_perfect_pth_power
from .ffpoly import poly_irreducible_mod_p
from .modular import cube_sieve_primes, sieve_cover, sieve_indices

log = logging.getLogger(__name__)

DEFAULT_PRIME_BOUND = 150

# Residue classes of m (up to sign) certified by a single modulus.
TABLE_G1 = {
    7: (1, 3),
    13: (1, 2, 3, 6),
    19: (2, 4),
    31: (1, 3, 4, 6, 8, 9, 10, 11, 12),
    37: (3, 9, 17),
    43: (2, 5, 8, 10, 12, 13, 14, 15, 20),
}
TABLE_G2 = {
    7: (1, 2, 3),
    13: (1, 2, 3, 4, 6),
    19: (3, 5),
    31: (1, 4, 7, 8, 9, 11, 14),
    37: (4, 7, 9, 12, 16, 17, 18),
}

# Reference single-prime witnesses for two residual values of m.
EXEMPLARS = (('g1', 4342, 73), ('g2', 2730, 67))

# z^6 + z^3 + 1 = g2(f(z)) for m = 1
M1_G2_BASE_POLY = (1, 0, 0, 1, 0, 0, 1)


@dataclass(frozen=True)
class SieveTable:
    which: str
    entries: dict  # modulus -> frozenset of residues, closed under negation

    def moduli(self):
        return sorted(self.entries)

    def classes(self, k):
        return self.entries[k]


def _closed(table):
    return {k: frozenset(r % k for x in rs for r in (x, -x)) for k, rs in table.items()}


def builtin_tables():
    """The g1 and g2 sieve tables, each class set closed under negation."""
    return SieveTable('g1', _closed(TABLE_G1)), SieveTable('g2', _closed(TABLE_G2))


def table_for(which):
    g1, g2 = builtin_tables()
    return g1 if which == 'g1' else g2


def table_covers(m, table):
    """Smallest table modulus whose class set contains m mod k, or None."""
    for k in table.moduli():
        if m % k in table.entries[k]:
            return k
    return None


def residuals(M, table):
    return [m for m in range(1, M + 1) if table_covers(m, table) is None]


def search_prime(m, which, prime_bound=DEFAULT_PRIME_BOUND, start=2, step=2):
    for k in cube_sieve_primes(prime_bound):
        if m % k and sieve_indices(which, m, k, start, step):
            return k
    return None


def search_prime_pair(m, which, prime_bound=DEFAULT_PRIME_BOUND, start=2, step=2):
    """First pair of primes (lexicographic) whose joint sieve passes."""
    primes = [k for k in cube_sieve_primes(prime_bound) if m % k]
    for pair in combinations(primes, 2):
        if sieve_cover(which, m, pair, start, step):
            return pair
    return None


def reduce_negative(m):
    """Map m < 0 to |m|; cube-freeness of g(f^n(0)) is invariant under m -> -m."""
    if m >= 0:
        raise ValueError('reduce_negative expects m < 0')
    return -m, 'sign-symmetry'


def base_value(m, which):
    if which == 'g1':
        return f'w_2({m}) = m^2 + 1', m * m + 1
    return f'x_2({m}) = m^4 - m^2 + 1', m ** 4 - m ** 2 + 1


@dataclass(frozen=True)
class Method:
    """How the even iterate indices were certified.

    type is one of table_modulus, searched_prime, prime_pair, special_case;
    none marks an unresolved certificate.
    """

    type: str
    moduli: tuple = ()
    tag: str | None = None


@dataclass(frozen=True)
class Certificate:
    m: int
    which: str
    base_expression: str
    base_is_cube: bool
    method: Method
    tail_len: int
    cycle_len: int
    indices_checked: int
    status: str  # CERTIFIED | UNRESOLVED
    odd_indices: str = 'rigid divisibility from base value'

    @property
    def certified(self):
        return self.status == 'CERTIFIED'


def _from_sieve(m, which, expr, is_cube, method, sieve):
    return Certificate(m, which, expr, is_cube, method, sieve.tail_len,
                       sieve.cycle_len, sieve.indices_checked, 'CERTIFIED')


def _special_m1_g2(expr):
    if not poly_irreducible_mod_p(M1_G2_BASE_POLY, 2):
        raise CertificationError('z^6 + z^3 + 1 reducible modulo 2')
    sieve = sieve_indices('g2', 1, 7, start=2, step=1)
    if not sieve:
        raise CertificationError('all-index sieve modulo 7 fails for m = 1, g2')
    method = Method('special_case', (7,),
                    'z^6+z^3+1 irreducible mod 2; g2(f^n(0)) non-cube mod 7 for all n>=2')
    return Certificate(1, 'g2', expr, True, method, sieve.tail_len, sieve.cycle_len,
                       sieve.indices_checked, 'CERTIFIED', odd_indices='covered by all-index sieve')


def certify_m(m, which, tables=None, prime_bound=DEFAULT_PRIME_BOUND, allow_pairs=True):
    """Certify that every iterate g_which(f^n(z)) is irreducible for c = m^3."""
    if m < 1:
        raise ValueError('certify_m expects m >= 1; use reduce_negative first')
    if which not in FACTORS:
        raise ValueError(f'unknown factor {which!r}; expected g1 or g2')
    expr, value = base_value(m, which)
    is_cube = is_perfect_pth_power(value, 3) is not None
    if which == 'g2' and m == 1:
        return _special_m1_g2(expr)
    if is_cube:
        raise CertificationError(f'base value {expr} = {value} is a cube')

    table = (tables or builtin_tables())[0 if which == 'g1' else 1]
    k = table_covers(m, table)
    if k is not None:
        sieve = sieve_indices(which, m, k)
        if not sieve:
            raise CertificationError(f'table class of m={m} at k={k} fails the {which} sieve')
        return _from_sieve(m, which, expr, False, Method('table_modulus', (k,)), sieve)

    k = search_prime(m, which, prime_bound)
    if k is not None:
        return _from_sieve(m, which, expr, False, Method('searched_prime', (k,)),
                           sieve_indices(which, m, k))

    if allow_pairs:
        pair = search_prime_pair(m, which, prime_bound)
        if pair is not None:
            return _from_sieve(m, which, expr, False, Method('prime_pair', pair),
                               sieve_cover(which, m, pair))

    return Certificate(m, which, expr, False, Method('none'), 0, 0, 0, 'UNRESOLVED')


@dataclass
class BatchReport:
    max_m: int
    prime_bound: int
    allow_pairs: bool
    certificates: list = field(default_factory=list)
    exemplars: list = field(default_factory=list)

    def count(self, method_type):
        return sum(1 for c in self.certificates
                   if c.certified and c.method.type == method_type)

    @property
    def unresolved(self):
        return [c for c in self.certificates if not c.certified]

    @property
    def theorem3_verified(self):
        return not self.unresolved

    def summary(self):
        return {
            'covered_by_table': self.count('table_modulus'),
            'searched': self.count('searched_prime'),
            'paired': self.count('prime_pair'),
            'special': self.count('special_case'),
            'unresolved': len(self.unresolved),
            'theorem3_verified': self.theorem3_verified,
        }


def _certify_chunk(args):
    lo, hi, prime_bound, allow_pairs = args
    tables = builtin_tables()
    return [certify_m(m, which, tables, prime_bound, allow_pairs)
            for m in range(lo, hi + 1) for which in FACTORS]


def default_jobs():
    env = os.environ.get('STABCERT_JOBS')
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def check_exemplars():
    """Run the reference single-prime witnesses through the sieve."""
    return [{'factor': which, 'm': m, 'prime': k, 'passed': bool(sieve_indices(which, m, k))}
            for which, m, k in EXEMPLARS]


def certify_range(M, prime_bound=DEFAULT_PRIME_BOUND, jobs=1, allow_pairs=True,
                  exemplar_check=False, chunk_size=250):
    """Certificates for both factors and every m in [1, M].

    Work is chunked by m; chunks are merged in ascending order so the
    report does not depend on ``jobs``.
    """
    if M < 1:
        raise ValueError('M must be at least 1')
    chunks = [(lo, min(lo + chunk_size - 1, M), prime_bound, allow_pairs)
              for lo in range(1, M + 1, chunk_size)]
    report = BatchReport(M, prime_bound, allow_pairs)
    if jobs <= 1 or len(chunks) == 1:
        results = map(_certify_chunk, chunks)
        for i, part in enumerate(results):
            report.certificates.extend(part)
            log.debug('chunk %d/%d done', i + 1, len(chunks))
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for i, part in enumerate(pool.map(_certify_chunk, chunks)):
                report.certificates.extend(part)
                log.debug('chunk %d/%d done', i + 1, len(chunks))
    report.certificates.sort(key=lambda c: (c.m, FACTORS.index(c.which)))
    if exemplar_check:
        report.exemplars = check_exemplars()
    return report

