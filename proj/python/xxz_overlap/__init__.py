"""Ground-state overlaps of the open XXZ chain under a change of boundary field."""

from ._core import (
    ChainParams,
    XxzError,
    classify,
    compute_row,
    critical_fields,
    ed_ground_state,
    lieb_residual,
    overlap_thermo,
    selftest,
    solve_ground_state,
    spin_reversal_image,
    sweep,
)

__all__ = [
    "ChainParams",
    "XxzError",
    "classify",
    "compute_row",
    "critical_fields",
    "ed_ground_state",
    "lieb_residual",
    "overlap_thermo",
    "selftest",
    "solve_ground_state",
    "spin_reversal_image",
    "sweep",
]
