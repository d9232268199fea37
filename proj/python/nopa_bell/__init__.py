"""Bell-inequality violation of the two-mode squeezed vacuum under displaced parity."""

from ._core import (
    BellResult,
    CutoffTooSmall,
    LOCAL_BOUND,
    TSIRELSON_BOUND,
    build_nopa_state,
    chsh_paper_form,
    chsh_value,
    displacement_matrix,
    displaced_parity,
    log_parity_correlation,
    lhv_identity_check,
    optimal_J,
    optimize_quadruplet,
    optimum_curve,
    oracle_correlation,
    parity_correlation,
    recommended_cutoff,
    surface,
    tail_weight,
    wigner,
)

__all__ = [
    "BellResult",
    "CutoffTooSmall",
    "LOCAL_BOUND",
    "TSIRELSON_BOUND",
    "build_nopa_state",
    "chsh_paper_form",
    "chsh_value",
    "displacement_matrix",
    "displaced_parity",
    "log_parity_correlation",
    "lhv_identity_check",
    "optimal_J",
    "optimize_quadruplet",
    "optimum_curve",
    "oracle_correlation",
    "parity_correlation",
    "recommended_cutoff",
    "surface",
    "tail_weight",
    "wigner",
]
