"""Closed-form Green's matrix of the Dirac oscillator.

Two layers live here.  ``printed_diag_osc`` / ``printed_offdiag_osc``
reproduce the closed forms term by term as they are usually written.
``g_diag_osc`` / ``g_offdiag_osc`` / ``green_matrix_osc`` return the
elements of the Green's matrix assembled from regular and irregular spinor
solutions, which is what the numerical oracle reproduces.  The two layers
differ only by signs:

    G++ = -printed G++,  G-- = printed G--,
    G-+(r, r') = -K(r, r')  where printed G+-(xi) = (2 xi - 1) K.

With these signs the off-diagonal element no longer depends on xi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from . import specfun as sf
from .model import (
    DELTA_XI,
    Component,
    ConfigurationError,
    GreenMatrix,
    Kinematics,
    PoleError,
    XiDegenerateError,
    check_component,
    corrupt_index,
    corrupt_prefactor,
    ordered,
    theta_split,
)


@dataclass(frozen=True)
class OscillatorModel:
    kin: Kinematics
    omega: float

    def __post_init__(self) -> None:
        if not self.omega > 0.0:
            raise ConfigurationError(f"omega must be positive, got {self.omega!r}")
        self.check_poles()

    @property
    def mu(self) -> float:
        return (self.kin.epsilon**2 - 1.0) / (4.0 * self.kin.lambda_bar**2 * self.omega**2)

    @property
    def nu(self) -> float:
        return (self.kin.kappa + 0.5) / 2.0

    def pole_arguments(self) -> dict[str, float]:
        """Gamma arguments that must avoid non-positive integers."""
        mu, nu = self.mu, self.nu
        if self.kin.kappa > 0:
            return {"-mu+2nu": -mu + 2.0 * nu}
        return {"-mu": -mu, "-mu+1": -mu + 1.0}

    def check_poles(self) -> None:
        for label, arg in self.pole_arguments().items():
            n = round(-arg)
            if n >= 0 and abs(arg + n) < sf.DELTA_POLE:
                raise PoleError(
                    f"epsilon={self.kin.epsilon!r} sits on an oscillator pole: "
                    f"{label} = -{n} (kappa={self.kin.kappa}, n={n})"
                )


def map_oscillator(component: Component, kin: Kinematics, omega: float) -> tuple[float, float, float]:
    """(l_eff, E_eff, prefactor) relating a diagonal element to the oscillator kernel."""
    check_component(component)
    k = kin.kappa
    base = (kin.epsilon**2 - 1.0) / (2.0 * kin.lambda_bar**2)
    if component == "plus":
        l_eff = float(k) if k > 0 else float(-k - 1)
        return l_eff, base - omega**2 * (k - 0.5), (1.0 + kin.epsilon) / 2.0
    l_eff = float(k - 1) if k > 0 else float(-k)
    return l_eff, base - omega**2 * (k + 0.5), (1.0 - kin.epsilon) / 2.0


def g_nonrel_oscillator(l: float, omega: float, E: float, r, r_prime):
    """Radial Green's function of the isotropic oscillator, sum_n u_n u_n / (E_n - E)."""
    w2 = omega**2
    a = E / (2.0 * w2)
    b = (2.0 * l + 1.0) / 4.0
    lead = (2.0 * l + 3.0) / 4.0 - a
    n = round(-lead)
    if n >= 0 and abs(lead + n) < sf.DELTA_POLE:
        raise PoleError(f"E={E!r} is the oscillator level n={n} for l={l}")
    lo, hi = ordered(r, r_prime)
    pref = sf.gamma_ratio(lead, l + 1.5) / w2
    return pref / np.sqrt(lo * hi) * sf.whittaker_m(a, b, w2 * lo**2) * sf.whittaker_w(a, b, w2 * hi**2)


def _diag_indices(model: OscillatorModel, component: Component) -> tuple[float, float, float, float]:
    """(first index, second index, Gamma numerator, Gamma denominator)."""
    mu, nu = model.mu, model.nu
    if component == "plus":
        if model.kin.kappa > 0:
            return mu - nu + 0.5, nu, -mu + 2.0 * nu, 2.0 * nu + 1.0
        return mu - nu + 0.5, -nu, -mu, -2.0 * nu + 1.0
    if model.kin.kappa > 0:
        return mu - nu, nu - 0.5, -mu + 2.0 * nu, 2.0 * nu
    return mu - nu, -nu + 0.5, -mu + 1.0, -2.0 * nu + 2.0


def printed_diag_osc(model: OscillatorModel, component: Component, r, r_prime):
    """Diagonal element exactly as the closed form is printed (jump -(1 +- eps))."""
    check_component(component)
    a, b, g_num, g_den = _diag_indices(model, component)
    eps = model.kin.epsilon
    w2 = model.omega**2
    sign = 1.0 if component == "plus" else -1.0
    lo, hi = ordered(r, r_prime)
    pref = corrupt_prefactor((1.0 + sign * eps) / (2.0 * w2) * sf.gamma_ratio(g_num, g_den))
    b = corrupt_index(b)
    return pref / np.sqrt(lo * hi) * sf.whittaker_m(a, b, w2 * lo**2) * sf.whittaker_w(a, b, w2 * hi**2)


def g_diag_osc(model: OscillatorModel, component: Component, r, r_prime):
    """Diagonal element of the Green's matrix; derivative jump +(1+eps) / -(1-eps)."""
    val = printed_diag_osc(model, component, r, r_prime)
    return -val if component == "plus" else val


def _offdiag_kernel(model: OscillatorModel, r, r_prime):
    """The xi-free bracket K(r, r') of the printed off-diagonal element."""
    mu, nu = model.mu, model.nu
    lam, om = model.kin.lambda_bar, model.omega
    w2 = om**2
    lo_idx = (mu - nu, nu - 0.5) if model.kin.kappa > 0 else (mu - nu, -nu + 0.5)
    hi_idx = (mu - nu + 0.5, nu) if model.kin.kappa > 0 else (mu - nu + 0.5, -nu)
    if model.kin.kappa > 0:
        pref = lam / om * sf.gamma_ratio(-mu + 2.0 * nu, 2.0 * nu)
        weight = mu / (2.0 * nu)
    else:
        pref = lam / om * sf.gamma_ratio(-mu + 1.0, -2.0 * nu + 2.0)
        weight = 2.0 * nu - 1.0
    prod = theta_split(r, r_prime, lambda t: w2 * t**2, lo_idx, hi_idx, 1.0, weight)
    out = pref * prod / np.sqrt(np.asarray(r, dtype=float) * np.asarray(r_prime, dtype=float))
    return float(out) if np.ndim(out) == 0 else out


def _check_xi(xi: float) -> None:
    if abs(xi - 0.5) <= DELTA_XI:
        raise XiDegenerateError("xi = 1/2 annihilates the printed off-diagonal element")


def printed_offdiag_osc(model: OscillatorModel, xi: float, r, r_prime):
    """(G+-, G-+) at (r, r') following the printed labels and (2 xi - 1) factor."""
    _check_xi(xi)
    f = 2.0 * xi - 1.0
    return f * _offdiag_kernel(model, r, r_prime), f * _offdiag_kernel(model, r_prime, r)


def g_offdiag_osc(model: OscillatorModel, xi: float, r, r_prime):
    """(G+-, G-+) of the Green's matrix at (r, r').

    Both first-order operator branches give the same element here, so the
    result is independent of ``xi``; the argument is accepted for interface
    symmetry with the Coulomb case.
    """
    del xi
    return -_offdiag_kernel(model, r_prime, r), -_offdiag_kernel(model, r, r_prime)


def green_matrix_osc(model: OscillatorModel, r: float, r_prime: float, xi: float = 1.0) -> GreenMatrix:
    gpm, gmp = g_offdiag_osc(model, xi, r, r_prime)
    return GreenMatrix(
        float(r),
        float(r_prime),
        float(g_diag_osc(model, "plus", r, r_prime)),
        float(gpm),
        float(gmp),
        float(g_diag_osc(model, "minus", r, r_prime)),
    )


# ---------------------------------------------------------------- spectrum


def _epsilon_of_mu(mu: float, lam: float, omega: float) -> float:
    return math.sqrt(1.0 + 4.0 * lam**2 * omega**2 * mu)


def _polish_root(f, x: float) -> float:
    """Prefer an exact floating-point zero among the neighbours of a root."""
    cands = [x, np.nextafter(x, -np.inf), np.nextafter(x, np.inf)]
    vals = [abs(f(c)) for c in cands]
    return float(cands[int(np.argmin(vals))])


def oscillator_pole_residual(kin: Kinematics, omega: float, epsilon: float) -> float:
    """|1/Gamma| of the plus-element prefactor at ``epsilon``; zero on a pole."""
    lam, kappa = kin.lambda_bar, kin.kappa
    shift = kappa + 0.5 if kappa > 0 else 0.0
    mu = (epsilon**2 - 1.0) / (4.0 * lam**2 * omega**2)
    return abs(float(sf.rgamma(-mu + shift)))


def oscillator_bound_energies(kin: Kinematics, omega: float, n_max: int) -> list[float]:
    """Positive-energy poles of the plus element, located as zeros of 1/Gamma.

    ``kin`` is a template: only lambda_bar and kappa are used.
    """
    if n_max < 0:
        raise ConfigurationError("n_max must be non-negative")
    lam, kappa = kin.lambda_bar, kin.kappa
    nu = (kappa + 0.5) / 2.0
    shift = 2.0 * nu if kappa > 0 else 0.0

    def f(eps: float) -> float:
        mu = (eps**2 - 1.0) / (4.0 * lam**2 * omega**2)
        return sf.rgamma(-mu + shift)

    roots: list[float] = []
    step = 0.25
    mu_lo = shift - 0.5 * step
    while len(roots) <= n_max:
        e_lo = _epsilon_of_mu(mu_lo, lam, omega)
        e_hi = _epsilon_of_mu(mu_lo + step, lam, omega)
        f_lo, f_hi = f(e_lo), f(e_hi)
        if f_lo == 0.0:
            roots.append(e_lo)
        elif f_lo * f_hi < 0.0:
            root = brentq(f, e_lo, e_hi, xtol=1e-16, rtol=4.0 * np.finfo(float).eps, maxiter=200)
            roots.append(_polish_root(f, root))
        mu_lo += step
    return roots[: n_max + 1]


def oscillator_levels_algebraic(kin: Kinematics, omega: float, n_max: int) -> list[float]:
    """Closed-form pole ladder used to cross-check the root finder."""
    lam, kappa = kin.lambda_bar, kin.kappa
    base = kappa + 0.5 if kappa > 0 else 0.0
    return [math.sqrt(1.0 + 4.0 * lam**2 * omega**2 * (n + base)) for n in range(n_max + 1)]
