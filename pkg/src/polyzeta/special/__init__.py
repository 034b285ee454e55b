"""Numerical special functions: zeta values, MZVs, harmonic sums, polylogarithms, ell_r."""
from .bernoulli import bernoulli, stirling2, zeta_even_bernoulli, zeta_even_rational
from .zeta import (DEFAULT_PREC, DomainError, Value, euler_gamma, harmonic_sum, harmonic_sum_table,
                   li_numeric, li_series, mzv, mzv_em, zeta_int)
from .eulerian import (RootSystem, ell_r, gamma_yr, roots_G, weierstrass3_check,
                       weierstrass_product_check, zero_set_sample)
