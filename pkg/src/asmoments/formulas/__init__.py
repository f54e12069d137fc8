"""Closed-form right-hand sides, special sums, series and Euler products."""

from .euler import EulerProductSpec, EulerValue, euler_eval
from .series import BiSeries, Series, perron_coeff, perron_partial, zeta_series, zeta_value
from .sums import (alpha_1_closed, alpha_k, alpha_k_direct, divisor_progression_main, residue_class,
                   rmt_constants, s_ell, s_ell_direct, s_unit, s_unit_direct)
from .theorems import (FormulaValue, c0, lemma53_check, odd_orthogonal_sum, prop6_main_term,
                       prop6_main_term_direct, prop6_rhs, thm11_k, thm11_k1_derived, thm11_k1_printed,
                       thm11_rhs, thm12_constant, thm12_direct, thm12_proof_final, thm12_rhs,
                       thm12_statement, thm13_constant, thm13_direct, thm13_printed, thm13_rhs,
                       thm14_leading, thm15_main, thm15_rhs)
