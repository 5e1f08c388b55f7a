"""Serialization of batch reports: JSON (schema version 1), CSV and text."""

from __future__ import annotations

import csv
import io
import json

SCHEMA_VERSION = '1'

_INT_OR_PAIR = {
    'oneOf': [
        {'type': 'integer'},
        {'type': 'array', 'items': {'type': 'integer'}, 'minItems': 2},
        {'type': 'null'},
    ]
}

REPORT_SCHEMA = {
    '$schema': 'https://json-schema.org/draft/2020-12/schema',
    'title': 'stabcert batch report',
    'type': 'object',
    'required': ['schema_version', 'config', 'summary', 'certificates'],
    'additionalProperties': False,
    'properties': {
        'schema_version': {'const': SCHEMA_VERSION},
        'config': {
            'type': 'object',
            'required': ['max_m', 'prime_bound', 'allow_pairs', 'exemplar_check'],
            'properties': {
                'max_m': {'type': 'integer', 'minimum': 1},
                'prime_bound': {'type': 'integer'},
                'allow_pairs': {'type': 'boolean'},
                'exemplar_check': {'type': 'boolean'},
                'negative_m': {'type': 'string'},
            },
        },
        'summary': {
            'type': 'object',
            'required': ['covered_by_table', 'searched', 'paired', 'special',
                         'unresolved', 'theorem3_verified'],
            'properties': {
                'covered_by_table': {'type': 'integer', 'minimum': 0},
                'searched': {'type': 'integer', 'minimum': 0},
                'paired': {'type': 'integer', 'minimum': 0},
                'special': {'type': 'integer', 'minimum': 0},
                'unresolved': {'type': 'integer', 'minimum': 0},
                'theorem3_verified': {'type': 'boolean'},
                'exemplars': {
                    'type': 'array',
                    'items': {
                        'type': 'object',
                        'required': ['factor', 'm', 'prime', 'passed'],
                        'properties': {
                            'factor': {'enum': ['g1', 'g2']},
                            'm': {'type': 'integer'},
                            'prime': {'type': 'integer'},
                            'passed': {'type': 'boolean'},
                        },
                    },
                },
            },
        },
        'certificates': {
            'type': 'array',
            'items': {
                'type': 'object',
                'required': ['m', 'factor', 'base_case', 'method', 'window', 'status'],
                'additionalProperties': False,
                'properties': {
                    'm': {'type': 'integer', 'minimum': 1},
                    'factor': {'enum': ['g1', 'g2']},
                    'base_case': {
                        'type': 'object',
                        'required': ['expression', 'is_cube'],
                        'properties': {
                            'expression': {'type': 'string'},
                            'is_cube': {'type': 'boolean'},
                        },
                    },
                    'method': {
                        'type': 'object',
                        'required': ['type', 'modulus_or_prime'],
                        'properties': {
                            'type': {'enum': ['table_modulus', 'searched_prime', 'prime_pair',
                                              'special_case', 'none']},
                            'modulus_or_prime': _INT_OR_PAIR,
                            'tag': {'type': 'string'},
                        },
                    },
                    'window': {
                        'type': 'object',
                        'required': ['tail', 'cycle', 'indices_checked'],
                        'properties': {
                            'tail': {'type': 'integer', 'minimum': 0},
                            'cycle': {'type': 'integer', 'minimum': 0},
                            'indices_checked': {'type': 'integer', 'minimum': 0},
                        },
                    },
                    'odd_indices': {'type': 'string'},
                    'status': {'enum': ['CERTIFIED', 'UNRESOLVED']},
                },
            },
        },
    },
}


def certificate_dict(cert):
    moduli = cert.method.moduli
    if not moduli:
        target = None
    elif len(moduli) == 1:
        target = moduli[0]
    else:
        target = list(moduli)
    method = {'type': cert.method.type, 'modulus_or_prime': target}
    if cert.method.tag:
        method['tag'] = cert.method.tag
    return {
        'm': cert.m,
        'factor': cert.which,
        'base_case': {'expression': cert.base_expression, 'is_cube': cert.base_is_cube},
        'method': method,
        'window': {'tail': cert.tail_len, 'cycle': cert.cycle_len,
                   'indices_checked': cert.indices_checked},
        'odd_indices': cert.odd_indices,
        'status': cert.status,
    }


def report_dict(report, exemplar_check=False):
    summary = report.summary()
    if exemplar_check:
        summary['exemplars'] = list(report.exemplars)
    return {
        'schema_version': SCHEMA_VERSION,
        'config': {
            'max_m': report.max_m,
            'prime_bound': report.prime_bound,
            'allow_pairs': report.allow_pairs,
            'exemplar_check': exemplar_check,
            'negative_m': 'certified via m -> -m sign symmetry',
        },
        'summary': summary,
        'certificates': [certificate_dict(c) for c in report.certificates],
    }


def dumps(obj):
    """Canonical JSON text; load followed by dumps reproduces it exactly."""
    return json.dumps(obj, indent=2) + '\n'


CSV_FIELDS = ('m', 'factor', 'base_expression', 'base_is_cube', 'method', 'modulus_or_prime',
              'tail', 'cycle', 'indices_checked', 'status')


def to_csv(report):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator='\n')
    writer.writerow(CSV_FIELDS)
    for c in report.certificates:
        writer.writerow((c.m, c.which, c.base_expression, int(c.base_is_cube), c.method.type,
                         ' '.join(map(str, c.method.moduli)), c.tail_len, c.cycle_len,
                         c.indices_checked, c.status))
    return buf.getvalue()


def to_text(report):
    s = report.summary()
    lines = [f'm in [1, {report.max_m}], primes <= {report.prime_bound}'
             f'{"" if report.allow_pairs else ", single-prime only"}']
    lines += [f'  {k}: {v}' for k, v in s.items()]
    for c in report.unresolved:
        lines.append(f'  UNRESOLVED m={c.m} {c.which}')
    for e in report.exemplars:
        lines.append(f'  exemplar {e["factor"]} m={e["m"]} p={e["prime"]}: '
                     f'{"PASS" if e["passed"] else "FAIL"}')
    return '\n'.join(lines) + '\n'
