"""Closed-form Green's matrix of the Dirac-Coulomb problem.

As in :mod:`diracgreen.oscillator` there are two layers.  The ``printed_*``
functions reproduce the closed forms as usually written.  The ``g_*``
functions return the elements of the Green's matrix built from regular and
irregular spinor solutions:

    G++ = -2 printed G++,  G-- = 2 printed G--,

and an off-diagonal element obtained by applying the first-order operators
of the upper and lower frames to these diagonal elements.  Unlike the
oscillator case the two frames give different off-diagonal elements, so
the result depends on ``xi`` (without a singularity at 1/2).

The Whittaker first index is signed, mu = -lambda Z eps / sqrt(1 - eps^2),
so attraction corresponds to Z < 0.  ``signed_gamma=True`` uses
gamma = kappa * sqrt(1 - (lambda Z / kappa)^2), which flips the sign of
gamma for kappa < 0.
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
    NoPoleError,
    PoleError,
    XiDegenerateError,
    check_component,
    corrupt_index,
    corrupt_prefactor,
    ordered,
    theta_split,
)


@dataclass(frozen=True)
class CoulombModel:
    kin: Kinematics
    Z: float
    signed_gamma: bool = False

    def __post_init__(self) -> None:
        k, lz = self.kin.kappa, self.kin.lambda_bar * self.Z
        if not k * k > lz * lz:
            raise ConfigurationError(f"need kappa^2 > (lambda_bar Z)^2, got kappa={k}, lambda_bar*Z={lz}")
        if not abs(self.kin.epsilon) < 1.0:
            raise ConfigurationError(f"need |epsilon| < 1, got {self.kin.epsilon!r}")
        if abs(self.S**2 + self.C**2 - 1.0) > 1e-12:
            raise ConfigurationError("S^2 + C^2 != 1")
        self.check_poles()

    @property
    def gamma(self) -> float:
        k = self.kin.kappa
        g = math.sqrt(k * k - (self.kin.lambda_bar * self.Z) ** 2)
        return -g if (self.signed_gamma and k < 0) else g

    @property
    def C(self) -> float:
        return self.gamma / self.kin.kappa

    @property
    def S(self) -> float:
        return self.kin.lambda_bar * self.Z / self.kin.kappa

    @property
    def mu(self) -> float:
        eps = self.kin.epsilon
        return -self.kin.lambda_bar * self.Z * eps / math.sqrt((1.0 - eps) * (1.0 + eps))

    @property
    def zeta(self) -> float:
        eps = self.kin.epsilon
        return 2.0 / self.kin.lambda_bar * math.sqrt((1.0 - eps) * (1.0 + eps))

    def pole_arguments(self) -> dict[str, float]:
        g, mu = self.gamma, self.mu
        if self.kin.kappa > 0:
            return {"gamma-mu+1": g - mu + 1.0, "gamma-mu": g - mu}
        return {"-gamma-mu": -g - mu, "-gamma-mu+1": -g - mu + 1.0}

    def check_poles(self) -> None:
        for label, arg in self.pole_arguments().items():
            n = round(-arg)
            if n >= 0 and abs(arg + n) < sf.DELTA_POLE:
                kind = "removable point of G--" if (label == "gamma-mu" and n == 0) else "pole"
                raise PoleError(
                    f"epsilon={self.kin.epsilon!r} sits on a Coulomb {kind}: "
                    f"{label} = -{n} (kappa={self.kin.kappa}, n={n})"
                )


def map_coulomb(component: Component, kin: Kinematics, Z: float) -> tuple[float, float, float, float]:
    """(l_eff, Z_eff, E_eff, prefactor) relating a diagonal element to the Coulomb kernel."""
    check_component(component)
    k = kin.kappa
    g = math.sqrt(k * k - (kin.lambda_bar * Z) ** 2)
    C = g / k
    E_eff = (kin.epsilon**2 - 1.0) / (2.0 * kin.lambda_bar**2)
    if component == "plus":
        l_eff = g if k > 0 else -g - 1.0
        return l_eff, Z * kin.epsilon, E_eff, (C + kin.epsilon) / 2.0
    l_eff = g - 1.0 if k > 0 else -g
    return l_eff, Z * kin.epsilon, E_eff, (C - kin.epsilon) / 2.0


def _nonrel_parts(l: float, Z: float, E: float):
    if not E < 0.0:
        raise ConfigurationError(f"the Coulomb kernel needs E < 0, got {E!r}")
    k = math.sqrt(-2.0 * E)
    tau = -Z / k
    lead = l + 1.0 - tau
    n = round(-lead)
    if n >= 0 and abs(lead + n) < sf.DELTA_POLE:
        raise PoleError(f"E={E!r} is the Coulomb level n={n} for l={l}")
    return k, tau, sf.gamma_ratio(lead, 2.0 * l + 2.0)


def g_nonrel_coulomb(l: float, Z: float, E: float, r, r_prime):
    """Radial Coulomb resolvent sum_n u_n u_n / (E_n - E) for -u''/2 + (l(l+1)/2r^2 + Z/r) u."""
    k, tau, ratio = _nonrel_parts(l, Z, E)
    lo, hi = ordered(r, r_prime)
    return ratio / k * sf.whittaker_m(tau, l + 0.5, 2.0 * k * lo) * sf.whittaker_w(tau, l + 0.5, 2.0 * k * hi)


def printed_nonrel_coulomb(l: float, Z: float, E: float, r, r_prime):
    """The Coulomb kernel with the 1/(2k) normalization as usually printed (half the resolvent)."""
    return 0.5 * g_nonrel_coulomb(l, Z, E, r, r_prime)


def _diag_parts(model: CoulombModel, component: Component) -> tuple[float, float, float, float]:
    """(second index, Gamma numerator, Gamma denominator, C +- eps)."""
    g, mu, eps, C = model.gamma, model.mu, model.kin.epsilon, model.C
    if component == "plus":
        if model.kin.kappa > 0:
            return g + 0.5, g - mu + 1.0, 2.0 * g + 2.0, C + eps
        return -g - 0.5, -g - mu, -2.0 * g, C + eps
    if model.kin.kappa > 0:
        return g - 0.5, g - mu, 2.0 * g, C - eps
    return -g + 0.5, -g - mu + 1.0, -2.0 * g + 2.0, C - eps


def printed_diag_coul(model: CoulombModel, component: Component, r, r_prime):
    """Diagonal element exactly as printed (derivative jump -(C +- eps)/2)."""
    check_component(component)
    b, g_num, g_den, weight = _diag_parts(model, component)
    mu, zeta = model.mu, model.zeta
    lo, hi = ordered(r, r_prime)
    pref = corrupt_prefactor(weight / (2.0 * zeta) * sf.gamma_ratio(g_num, g_den))
    b = corrupt_index(b)
    return pref * sf.whittaker_m(mu, b, zeta * lo) * sf.whittaker_w(mu, b, zeta * hi)


def g_diag_coul(model: CoulombModel, component: Component, r, r_prime):
    """Diagonal element of the Green's matrix; derivative jump +(C+eps) / -(C-eps)."""
    val = printed_diag_coul(model, component, r, r_prime)
    return -2.0 * val if component == "plus" else 2.0 * val


def _theta_term(model: CoulombModel, r, r_prime, printed: bool):
    g, mu, zeta = model.gamma, model.mu, model.zeta
    lam = model.kin.lambda_bar
    scale = lambda t: zeta * t  # noqa: E731
    if model.kin.kappa > 0:
        pref = lam * sf.gamma_ratio(g - mu + 1.0, 2.0 * g + 2.0)
        first, second = (mu, g - 0.5), (mu, g + 0.5)
        w_below = 1.0 if printed else 2.0 * g + 1.0
        w_above = -(g + mu) / (2.0 * g)
    else:
        pref = lam * sf.gamma_ratio(-g - mu + 1.0, -2.0 * g + 2.0)
        first, second = (mu, -g + 0.5), (mu, -g - 0.5)
        w_below = (g - mu) / (2.0 * g)
        w_above = 2.0 * g - 1.0
    return pref * theta_split(r, r_prime, scale, first, second, w_below, w_above)


def _scalar(out):
    return float(out) if np.ndim(out) == 0 else out


def _printed_lower_upper(model: CoulombModel, xi: float, r, r_prime):
    """Printed G-+(r, r') (lower index at r)."""
    g, C, eps = model.gamma, model.C, model.kin.epsilon
    lam_z = model.kin.lambda_bar * model.Z
    bracket = (xi - 1.0) * printed_diag_coul(model, "minus", r, r_prime) + xi * (C - eps) / (C + eps) * printed_diag_coul(
        model, "plus", r, r_prime
    )
    return _scalar(-lam_z / g * bracket + (xi - 0.5) * _theta_term(model, r, r_prime, printed=True))


def printed_offdiag_coul(model: CoulombModel, xi: float, r, r_prime):
    """(G+-, G-+) at (r, r') exactly as printed, with G+-(r, r') = G-+(r', r)."""
    if abs(xi - 0.5) <= DELTA_XI:
        raise XiDegenerateError("xi = 1/2 removes the theta-split term of the printed off-diagonal element")
    return _printed_lower_upper(model, xi, r_prime, r), _printed_lower_upper(model, xi, r, r_prime)


def _lower_upper(model: CoulombModel, xi: float, r, r_prime):
    """G-+(r, r') of the Green's matrix: lower spinor index at r."""
    lam_z = model.kin.lambda_bar * model.Z
    mix = xi * g_diag_coul(model, "plus", r, r_prime) + (1.0 - xi) * g_diag_coul(model, "minus", r, r_prime)
    return _scalar(-lam_z / model.gamma * mix - _theta_term(model, r, r_prime, printed=False))


def g_offdiag_coul(model: CoulombModel, xi: float, r, r_prime):
    """(G+-, G-+) of the Green's matrix at (r, r').

    ``xi = 1`` is the upper-frame element (operator applied to G++),
    ``xi = 0`` the lower-frame one (operator applied to G--); other values
    interpolate linearly.
    """
    return _lower_upper(model, xi, r_prime, r), _lower_upper(model, xi, r, r_prime)


def green_matrix_coul(model: CoulombModel, r: float, r_prime: float, xi: float = 1.0) -> GreenMatrix:
    gpm, gmp = g_offdiag_coul(model, xi, r, r_prime)
    return GreenMatrix(
        float(r),
        float(r_prime),
        float(g_diag_coul(model, "plus", r, r_prime)),
        float(gpm),
        float(gmp),
        float(g_diag_coul(model, "minus", r, r_prime)),
    )


# ---------------------------------------------------------------- spectrum


def _mu_of_epsilon(eps: float, lz: float) -> float:
    return -lz * eps / math.sqrt((1.0 - eps) * (1.0 + eps))


def _epsilon_of_mu(mu: float, lz: float) -> float:
    return mu / math.hypot(mu, lz)


def _pole_shift(kin: Kinematics, Z: float, signed_gamma: bool) -> float:
    lz = kin.lambda_bar * Z
    g = math.sqrt(kin.kappa**2 - lz * lz)
    if kin.kappa < 0 and signed_gamma:
        g = -g
    return g + 1.0 if kin.kappa > 0 else -g


def coulomb_pole_residual(kin: Kinematics, Z: float, epsilon: float, signed_gamma: bool = False) -> float:
    """|1/Gamma| of the plus-element prefactor at ``epsilon``; zero on a pole."""
    mu = _mu_of_epsilon(epsilon, kin.lambda_bar * Z)
    return abs(float(sf.rgamma(_pole_shift(kin, Z, signed_gamma) - mu)))


def coulomb_bound_energies(kin: Kinematics, Z: float, n_max: int, signed_gamma: bool = False) -> list[float]:
    """Poles of the plus element in 0 < eps < 1, located as zeros of 1/Gamma.

    ``kin`` is a template: only lambda_bar and kappa are used.  For
    kappa < 0 the condition comes from Gamma(-gamma - mu) and depends on the
    sign convention for gamma; those levels are exploratory.
    """
    if n_max < 0:
        raise ConfigurationError("n_max must be non-negative")
    lam, kappa = kin.lambda_bar, kin.kappa
    lz = lam * Z
    if not kappa * kappa > lz * lz:
        raise ConfigurationError(f"need kappa^2 > (lambda_bar Z)^2, got kappa={kappa}, lambda_bar*Z={lz}")
    if not Z < 0.0:
        raise NoPoleError(f"no poles in 0 < epsilon < 1 for repulsive coupling Z={Z!r}")
    shift = _pole_shift(kin, Z, signed_gamma)

    def f(eps: float) -> float:
        return sf.rgamma(shift - _mu_of_epsilon(eps, lz))

    roots: list[float] = []
    step = 0.25
    mu_lo = 1e-9
    while len(roots) <= n_max:
        e_lo, e_hi = _epsilon_of_mu(mu_lo, lz), _epsilon_of_mu(mu_lo + step, lz)
        f_lo, f_hi = f(e_lo), f(e_hi)
        if f_lo == 0.0:
            roots.append(e_lo)
        elif f_lo * f_hi < 0.0:
            roots.append(brentq(f, e_lo, e_hi, xtol=1e-17, rtol=4.0 * np.finfo(float).eps, maxiter=200))
        mu_lo += step
    return roots[: n_max + 1]


def sommerfeld_levels(kin: Kinematics, Z: float, n_max: int) -> list[float]:
    """Algebraic pole ladder mu = gamma + 1 + n of the kappa > 0 plus element."""
    lz = kin.lambda_bar * Z
    g = math.sqrt(kin.kappa**2 - lz * lz)
    return [(g + 1 + n) / math.hypot(g + 1 + n, lz) for n in range(n_max + 1)]


def minus_pole_candidate(kin: Kinematics, Z: float) -> float:
    """Energy where Gamma(gamma - mu) of the kappa > 0 minus element diverges at mu = gamma.

    There C = eps, so the (C - eps) prefactor vanishes at the same point.
    """
    if kin.kappa <= 0:
        raise ConfigurationError("the mu = gamma candidate exists only for kappa > 0")
    lz = kin.lambda_bar * Z
    g = math.sqrt(kin.kappa**2 - lz * lz)
    return _epsilon_of_mu(g, lz)
