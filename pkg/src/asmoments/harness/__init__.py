"""Verification harness: cases, lemma checks, runs and reports."""

from .cases import MODES, PROFILES, TITLES, VerificationCase, case_ids, profile_cases
from .checks import check_char_average, check_divisor_progression, divisor_progression_bound
from .report import (deterministic_part, failed, make_report, parse_exact, render, report_emit,
                     to_csv, to_json, to_markdown)
from .verify import divided_difference, run_cases, verify

__all__ = [
    "MODES", "PROFILES", "TITLES", "VerificationCase", "case_ids", "profile_cases",
    "check_char_average", "check_divisor_progression", "divisor_progression_bound",
    "deterministic_part", "failed", "make_report", "parse_exact", "render", "report_emit",
    "to_csv", "to_json", "to_markdown", "divided_difference", "run_cases", "verify",
]
