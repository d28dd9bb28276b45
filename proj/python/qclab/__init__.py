"""Python bindings for the qclab quasicontinuum consistency lab."""

from ._qclab import (
    ConfigError,
    Model,
    NumericalFailure,
    Operator,
    __version__,
    assemble_operator,
    certificate,
    consistency_sweep,
    constraint_system,
    convergence_study,
    ghost_force,
    hessian_consistency_check,
    min_residual,
    min_residual_unsymmetric,
    moment_residuals,
    run_acceptance,
    run_command,
    solve_equilibrium,
    total_energy,
)

__all__ = [
    "ConfigError",
    "Model",
    "NumericalFailure",
    "Operator",
    "__version__",
    "assemble_operator",
    "certificate",
    "consistency_sweep",
    "constraint_system",
    "convergence_study",
    "ghost_force",
    "hessian_consistency_check",
    "min_residual",
    "min_residual_unsymmetric",
    "moment_residuals",
    "run_acceptance",
    "run_command",
    "solve_equilibrium",
    "total_energy",
]
