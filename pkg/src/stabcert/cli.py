"""Command-line front end.

Exit codes: 0 success (everything certified, nothing unexpected), 1 unresolved
entries or unexpected scan hits, 2 usage or configuration errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import certify, criteria, report
from .errors import ModulusError, ResourceGuardError, StabCertError
from .exact_core import iterate_orbit_exact, numerators
from .modular import orbit_mod_k, sieve_indices

log = logging.getLogger('stabcert')

EXIT_OK, EXIT_UNRESOLVED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    max_m: int
    prime_bound: int = certify.DEFAULT_PRIME_BOUND
    jobs: int = 1
    out: Path | None = None
    format: str = 'json'
    exemplar_check: bool = False
    allow_pairs: bool = True

    def __post_init__(self):
        if self.max_m < 1:
            raise UsageError('--max-m must be at least 1')
        if self.prime_bound < 7:
            raise UsageError('--prime-bound must be at least 7')
        if self.jobs < 1:
            raise UsageError('--jobs must be at least 1')


def _emit(obj, out=None):
    text = obj if isinstance(obj, str) else report.dumps(obj)
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _fraction_str(x):
    return str(x) if isinstance(x, Fraction) else str(Fraction(x))


def cmd_certify(args):
    cfg = RunConfig(args.max_m, args.prime_bound, args.jobs or certify.default_jobs(),
                    args.out, args.format, args.exemplar_check, not args.single_prime)
    log.info('certifying m in [1, %d] with primes <= %d on %d worker(s)',
             cfg.max_m, cfg.prime_bound, cfg.jobs)
    rep = certify.certify_range(cfg.max_m, cfg.prime_bound, cfg.jobs, cfg.allow_pairs,
                                cfg.exemplar_check)
    if cfg.format == 'json':
        _emit(report.report_dict(rep, cfg.exemplar_check), cfg.out)
    elif cfg.format == 'csv':
        _emit(report.to_csv(rep), cfg.out)
    else:
        _emit(report.to_text(rep), cfg.out)
    log.info('summary: %s', rep.summary())
    return EXIT_OK if rep.theorem3_verified else EXIT_UNRESOLVED


def cmd_sieve(args):
    m = args.m
    if m == 0:
        raise UsageError('--m must be nonzero')
    m = abs(m)  # sign symmetry
    step = 1 if args.all_indices else 2
    res = sieve_indices(args.factor, m, args.k, args.start, step)
    _emit({
        'factor': args.factor, 'm': args.m, 'k': args.k, 'start': args.start, 'step': step,
        'result': 'PASS' if res.passed else 'FAIL',
        'tail': res.tail_len, 'cycle': res.cycle_len, 'indices_checked': res.indices_checked,
        'witness_index': res.witness_index,
        'witness_value': res.witness_values[0] if res.witness_values else None,
    })
    return EXIT_OK if res.passed else EXIT_UNRESOLVED


def cmd_orbit(args):
    orb = orbit_mod_k(args.d, args.c, args.mod)
    _emit({'d': args.d, 'c': args.c, 'k': args.mod, 'c_inv': orb.c_inv,
           'tail': list(orb.tail), 'cycle': list(orb.cycle)})
    return EXIT_OK


def cmd_classify(args):
    _emit(criteria.classify_stability(args.d).as_dict())
    return EXIT_OK


def cmd_iterate(args):
    orbit = iterate_orbit_exact(args.d, args.c, args.n, max_index=args.max_index)
    seq = numerators(args.d, args.c, args.n, max_index=args.max_index)
    _emit({'d': args.d, 'c': args.c,
           'orbit': [_fraction_str(x) for x in orbit],
           'numerators': [str(a) for a in seq.values]})
    return EXIT_OK


def cmd_quad_bound(args):
    bound = criteria.quadratic_factor_bound(args.c)
    _emit({'c': args.c, 'factor_bound': bound, 'stable': bound == 1})
    return EXIT_OK


def cmd_quad_scan(args):
    scan = criteria.quadratic_square_scan(args.c, args.n, args.q_bound)
    _emit({'c': args.c, 'irreducible_base': scan.irreducible_base,
           'preperiodic': scan.preperiodic,
           'checks': [{'n': ch.n, 'numerator_index': ch.index, 'status': ch.status,
                       'prime': ch.prime} for ch in scan.checks]})
    return EXIT_OK if not scan.uncertified else EXIT_UNRESOLVED


def cmd_scan_a2(args):
    hits = criteria.a2_power_scan(args.d_max, args.c_max)
    unexpected = [h for h in hits if h[:3] != (4, 2, 2)]
    _emit({'d_max': args.d_max, 'c_max': args.c_max,
           'hits': [{'d': d, 'c': c, 'p': p, 'root': r} for d, c, p, r in hits],
           'unexpected': len(unexpected)})
    return EXIT_UNRESOLVED if unexpected else EXIT_OK


def cmd_tables(args):
    g1, g2 = certify.builtin_tables()
    out = {}
    for table, raw in ((g1, certify.TABLE_G1), (g2, certify.TABLE_G2)):
        entry = {'classes': {str(k): list(v) for k, v in raw.items()}}
        if args.residuals:
            res = certify.residuals(args.residuals, table)
            entry['residual_count'] = len(res)
            entry['residuals'] = res
        out[table.which] = entry
    if args.residuals:
        out['residual_range'] = [1, args.residuals]
    _emit(out, args.out)
    return EXIT_OK


def cmd_fermat(args):
    sols = criteria.fermat_brute_search(args.p, args.q, args.r, args.bound)
    _emit({'signature': [args.p, args.q, args.r], 'bound': args.bound,
           'solutions': [list(s) for s in sols]})
    return EXIT_UNRESOLVED if sols else EXIT_OK


def cmd_abc(args):
    chk = criteria.abc_inequality_check(args.a, args.b, args.c)
    _emit({'a': chk.a, 'b': chk.b, 'c': chk.c, 'radical': chk.radical,
           'holds_74': chk.holds_74, 'quality': chk.quality})
    return EXIT_OK if chk.holds_74 else EXIT_UNRESOLVED


def build_parser():
    parser = argparse.ArgumentParser(
        prog='stabcert', description='Stability certificates for z^d + 1/c over Q.')
    parser.add_argument('-v', '--verbose', action='store_true', help='progress on stderr')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('certify', help='certify both factors for m in [1, M]')
    p.add_argument('--max-m', type=int, required=True)
    p.add_argument('--prime-bound', type=int, default=certify.DEFAULT_PRIME_BOUND)
    p.add_argument('--jobs', type=int, default=None)
    p.add_argument('--out', type=Path)
    p.add_argument('--format', choices=('json', 'csv', 'text'), default='json')
    p.add_argument('--exemplar-check', action='store_true')
    p.add_argument('--single-prime', action='store_true',
                   help='disable the prime-pair fallback')
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser('sieve', help='cube sieve for one m and modulus')
    p.add_argument('--m', type=int, required=True)
    p.add_argument('--k', type=int, required=True)
    p.add_argument('--factor', choices=('g1', 'g2'), required=True)
    p.add_argument('--start', type=int, default=2)
    p.add_argument('--all-indices', action='store_true')
    p.set_defaults(func=cmd_sieve)

    p = sub.add_parser('orbit', help='tail and cycle of the orbit of 0 mod k')
    p.add_argument('--d', type=int, required=True)
    p.add_argument('--c', type=int, required=True)
    p.add_argument('--mod', type=int, required=True)
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser('classify', help='stability case for degree d')
    p.add_argument('--d', type=int, required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser('iterate', help='exact f^n(0) and numerators a_n')
    p.add_argument('--d', type=int, required=True)
    p.add_argument('--c', type=int, required=True)
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--max-index', type=int, default=None)
    p.set_defaults(func=cmd_iterate)

    p = sub.add_parser('quad-bound', help='nu_2(1 + c) factor bound for z^2 + 1/c')
    p.add_argument('--c', type=int, required=True)
    p.set_defaults(func=cmd_quad_bound)

    p = sub.add_parser('quad-scan', help='non-square certificates for a_2..a_{N+1}, d = 2')
    p.add_argument('--c', type=int, required=True)
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--q-bound', type=int, default=200)
    p.set_defaults(func=cmd_quad_scan)

    p = sub.add_parser('scan-a2', help='perfect-power scan of a_2 = 1 + c^(d-1)')
    p.add_argument('--d-max', type=int, required=True)
    p.add_argument('--c-max', type=int, required=True)
    p.set_defaults(func=cmd_scan_a2)

    p = sub.add_parser('tables', help='dump the sieve tables')
    p.add_argument('--residuals', type=int, metavar='M')
    p.add_argument('--out', type=Path)
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser('fermat', help='brute-force primitive solutions of a^p + b^q = c^r')
    p.add_argument('--p', type=int, required=True)
    p.add_argument('--q', type=int, required=True)
    p.add_argument('--r', type=int, required=True)
    p.add_argument('--bound', type=int, required=True)
    p.set_defaults(func=cmd_fermat)

    p = sub.add_parser('abc', help='exact check of c < rad(abc)^(7/4)')
    p.add_argument('--a', type=int, required=True)
    p.add_argument('--b', type=int, required=True)
    p.add_argument('--c', type=int, required=True)
    p.set_defaults(func=cmd_abc)
    return parser


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format='%(levelname)s %(message)s')
    try:
        return args.func(args)
    except (UsageError, ValueError, ModulusError, ResourceGuardError) as exc:
        print(f'stabcert {args.command}: {exc}', file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    except StabCertError as exc:
        print(f'stabcert {args.command}: {exc}', file=sys.stderr)
        return EXIT_UNRESOLVED


def main():
    sys.exit(run())
