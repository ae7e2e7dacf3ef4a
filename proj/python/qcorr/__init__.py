"""LQFI and LQU of the two-qubit Heisenberg XYZ chain with z-axis DM interaction."""

from ._core import (
    CSV_HEADER,
    ModelParams,
    NumericalError,
    brute_force_min,
    closed_form_elements,
    closed_form_m_diag,
    closed_form_w_diag,
    eval_point,
    figure_csv,
    figure_ids,
    figure_preset,
    hamiltonian,
    lqfi,
    lqfi_matrix,
    lqu,
    lqu_matrix,
    qfi,
    run_sweep,
    self_test,
    skew_information,
    spectrum,
    sweep_csv,
    thermal_state,
    variance,
)

__all__ = [
    "CSV_HEADER",
    "ModelParams",
    "NumericalError",
    "brute_force_min",
    "closed_form_elements",
    "closed_form_m_diag",
    "closed_form_w_diag",
    "eval_point",
    "figure_csv",
    "figure_ids",
    "figure_preset",
    "hamiltonian",
    "lqfi",
    "lqfi_matrix",
    "lqu",
    "lqu_matrix",
    "qfi",
    "run_sweep",
    "self_test",
    "skew_information",
    "spectrum",
    "sweep_csv",
    "thermal_state",
    "variance",
]
