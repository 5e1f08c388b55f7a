"""Certificates for stability and eventual stability of z^d + 1/c over Q."""

from .certify import builtin_tables, certify_m, certify_range, residuals, table_covers
from .criteria import base_irreducible, classify_stability, quadratic_factor_bound
from .exact_core import (is_perfect_pth_power, iterate_orbit_exact, numerators, radical,
                         valuation)
from .modular import orbit_mod_k, sieve_indices

__version__ = '0.1.0'
