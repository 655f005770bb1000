"""Small-amplitude asymmetric bifurcation analysis for nonlocal wave equations."""
from .bifurcation import VERDICTS, BifurcationReport, classify, scan_pairs
from .expansion import (
    CoefficientTable,
    build_table,
    evaluate_expansion,
    resonance_coefficient,
    scaled_constant_C,
    transversality_jacobian,
)
from .models import (
    MODELS,
    DomainError,
    KernelError,
    KernelSpec,
    babenko_b_coeff,
    get_model,
    linear_symbol,
    nonlinear_symbol,
    solve_kernel_params,
    verify_kernel_dimension,
)
from .oracle import SpectralGrid, evaluate_functional, ls_solve, psi_estimates, residual

__version__ = "0.1.0"

__all__ = [
    "VERDICTS", "BifurcationReport", "classify", "scan_pairs",
    "CoefficientTable", "build_table", "evaluate_expansion", "resonance_coefficient",
    "scaled_constant_C", "transversality_jacobian",
    "MODELS", "DomainError", "KernelError", "KernelSpec", "babenko_b_coeff", "get_model",
    "linear_symbol", "nonlinear_symbol", "solve_kernel_params", "verify_kernel_dimension",
    "SpectralGrid", "evaluate_functional", "ls_solve", "psi_estimates", "residual",
]
