"""Driven two-level quantum systems: closed-form and numeric density-matrix dynamics."""

from ._core import (
    CSV_HEADER,
    PulseParams,
    QdriveError,
    RabiParams,
    floquet_quasienergy,
    frobenius_coherence,
    invariance_residual,
    invariant_operator,
    l1_coherence,
    l1_pulse_closed_form,
    lewis_phase,
    periodicity_T,
    propagate,
    pulse_density,
    pulse_f,
    pulse_state,
    purity,
    rabi_density,
    rabi_hamiltonian,
    rabi_state,
    run_config,
    to_csv,
    xi_squared,
)

__all__ = [
    "CSV_HEADER",
    "PulseParams",
    "QdriveError",
    "RabiParams",
    "floquet_quasienergy",
    "frobenius_coherence",
    "invariance_residual",
    "invariant_operator",
    "l1_coherence",
    "l1_pulse_closed_form",
    "lewis_phase",
    "periodicity_T",
    "propagate",
    "pulse_density",
    "pulse_f",
    "pulse_state",
    "purity",
    "rabi_density",
    "rabi_hamiltonian",
    "rabi_state",
    "run_config",
    "to_csv",
    "xi_squared",
]
