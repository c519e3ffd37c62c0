"""Cumulative sums of li(n^rho) over Riemann zeta zeros."""

from .cycle_analysis import CycleReport, ModelFit, detect_cycles, model_eval, model_fit, periodicity_score, smooth
from .special_functions import EiEvaluation, Method, ei, li_complex_power
from .term_engine import TermSeries, accumulate, compute_terms, series_to_csv, sum_series
from .zero_catalog import ValidationReport, ZeroCatalog, load_zero_file, parse_zero_file, slice_catalog, validate

__version__ = "0.1.0"

__all__ = [
    "CycleReport", "EiEvaluation", "Method", "ModelFit", "TermSeries", "ValidationReport", "ZeroCatalog",
    "accumulate", "compute_terms", "detect_cycles", "ei", "li_complex_power", "load_zero_file", "model_eval",
    "model_fit", "parse_zero_file", "periodicity_score", "series_to_csv", "slice_catalog", "smooth",
    "sum_series", "validate",
]
