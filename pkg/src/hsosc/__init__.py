"""Halliday-Suranyi perturbation theory for the quartic anharmonic oscillator."""
from .model import DomainError, Level, OscillatorModel, lambda_of, x_of
from .oracle import OracleConfig, OracleResult, build_hamiltonian, exact_energies
from .rs_series import rs_coeffs, rs_partial_sum
from .selection import (
    SelectionResult, StationaryPoint, ZSearchWindow, asymptotic_checks, fac_select,
    pms_select, spread, variational_select,
)
from .terms import (
    HSTermValues, XPolynomial, e0, e1, e2, e3, first_order_norm, h_expect_0, h_expect_1,
    hs_terms, partial_sum, x_polynomial,
)

__version__ = "0.1.0"
