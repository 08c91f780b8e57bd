"""Traces, cotraces and lifts in finite bicategories (Rel, Span, Prof)."""

from cotrace.bicat import Bicategory, cotrace, dims, trace
from cotrace.common import BudgetExceeded, CotraceError, InputError, Limits
from cotrace.laws import LAWS, LawReport, SuiteConfig, make_bicategory, run_law_suite

__all__ = [
    "LAWS",
    "Bicategory",
    "BudgetExceeded",
    "CotraceError",
    "InputError",
    "LawReport",
    "Limits",
    "SuiteConfig",
    "cotrace",
    "dims",
    "make_bicategory",
    "run_law_suite",
    "trace",
]

__version__ = "0.1.0"
