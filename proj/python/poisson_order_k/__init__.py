"""Poisson distribution of order k: scaled pmf, differences and thresholds."""

from ._core import (
    BracketFailure,
    DegenerateFit,
    FitResult,
    NoSignChange,
    NumericalError,
    OracleTooLarge,
    Params,
    StructureReport,
    ThresholdSet,
    absolute_monotonicity_report,
    block_difference_kp1_2k,
    difference_closed_form,
    difference_exact,
    fit_inverse_root,
    normalization_check,
    pmf_bruteforce,
    pmf_k2_closed,
    pmf_km_sum,
    pmf_recurrence_table,
    structure_report,
    sweep,
    threshold_set,
    verify_uniqueness,
)

__all__ = [name for name in dir() if not name.startswith("_")]
