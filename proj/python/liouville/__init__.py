"""Exact-arithmetic toolkit for Liouville numbers, sets and fields."""

from ._liouville import (
    cf_convergents,
    combine_certificate,
    criterion_rows,
    erdos_split,
    eval_base,
    floor_pow,
    gap_check,
    log2_interval,
    nearest_int,
    nonmember_probe,
    reverify_certificate,
    truncate,
    two_squares,
    un_profile,
    verify_witness,
    __version__,
)

__all__ = [
    "cf_convergents",
    "combine_certificate",
    "criterion_rows",
    "erdos_split",
    "eval_base",
    "floor_pow",
    "gap_check",
    "log2_interval",
    "nearest_int",
    "nonmember_probe",
    "reverify_certificate",
    "truncate",
    "two_squares",
    "un_profile",
    "verify_witness",
    "__version__",
]
