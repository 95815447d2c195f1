"""Closed-form radial Green's matrices of the Dirac oscillator and Dirac-Coulomb problems.

The closed forms are checked against an ODE-assembled oracle, derivative
jumps, residuals of the radial equations, pole spectra and nonrelativistic
limits by the :mod:`diracgreen.verify` suites.
"""

from .coulomb import CoulombModel, coulomb_bound_energies, g_nonrel_coulomb, green_matrix_coul, sommerfeld_levels
from .model import (
    FINE_STRUCTURE,
    ConfigurationError,
    GreenMatrix,
    Kinematics,
    NoPoleError,
    XiDegenerateError,
)
from .oracle import OracleGreen, ProblemSpec
from .oscillator import OscillatorModel, g_nonrel_oscillator, green_matrix_osc, oscillator_bound_energies
from .specfun import DomainError, PoleError, SpecfunError, kummer_m, kummer_u, whittaker_m, whittaker_w
from .verify import Tolerances, VerificationReport, run_suites

__all__ = [
    "FINE_STRUCTURE",
    "ConfigurationError",
    "CoulombModel",
    "DomainError",
    "GreenMatrix",
    "Kinematics",
    "NoPoleError",
    "OracleGreen",
    "OscillatorModel",
    "PoleError",
    "ProblemSpec",
    "SpecfunError",
    "Tolerances",
    "VerificationReport",
    "XiDegenerateError",
    "coulomb_bound_energies",
    "g_nonrel_coulomb",
    "g_nonrel_oscillator",
    "green_matrix_coul",
    "green_matrix_osc",
    "kummer_m",
    "kummer_u",
    "oscillator_bound_energies",
    "run_suites",
    "sommerfeld_levels",
    "whittaker_m",
    "whittaker_w",
]
