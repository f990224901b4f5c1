"""Exact Weil-Petersson volumes, tight volumes, and JT correlators."""

from ._core import (
    free_energy,
    intersection_table_json,
    jt_partition,
    moments,
    omega_json,
    psi_intersection,
    run_checks,
    tight_defects_json,
    volume_json,
    volume_latex,
)

__all__ = [
    "free_energy",
    "intersection_table_json",
    "jt_partition",
    "moments",
    "omega_json",
    "psi_intersection",
    "run_checks",
    "tight_defects_json",
    "volume_json",
    "volume_latex",
]
