"""Shared value types and errors for the relativistic Green's matrices."""

from __future__ import annotations

from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .specfun import DomainError, PoleError, SpecfunError  # noqa: F401  (re-exported)
from .specfun import whittaker_m, whittaker_w

Component = Literal["plus", "minus"]
COMPONENTS: tuple[Component, Component] = ("plus", "minus")

FINE_STRUCTURE = 0.0072973525693
DELTA_XI = 1e-6
EQUAL_RADII_RTOL = 1e-12


# Negative-control hook: when set, the closed-form diagonal elements are
# deliberately wrong so that the verification suites can prove they fail.
CORRUPTIONS = ("whittaker_index", "prefactor")
_CORRUPTION: ContextVar[str | None] = ContextVar("corruption", default=None)


def active_corruption() -> str | None:
    return _CORRUPTION.get()


@contextmanager
def corrupted(kind: str | None):
    if kind is not None and kind not in CORRUPTIONS:
        raise ValueError(f"unknown corruption {kind!r}; choose from {CORRUPTIONS}")
    token = _CORRUPTION.set(kind)
    try:
        yield
    finally:
        _CORRUPTION.reset(token)


def corrupt_index(b: float) -> float:
    return b + 0.5 if _CORRUPTION.get() == "whittaker_index" else b


def corrupt_prefactor(pref: float) -> float:
    return 1.1 * pref if _CORRUPTION.get() == "prefactor" else pref


class ConfigurationError(ValueError):
    """Invalid physical parameters (kappa = 0, lambda_bar <= 0, ...)."""


class XiDegenerateError(ValueError):
    """The off-diagonal combination weight sits at the excluded value 1/2."""


class NoPoleError(RuntimeError):
    """A spectrum scan found no pole in the requested window."""


def check_component(component: str) -> Component:
    if component not in COMPONENTS:
        raise ConfigurationError(f"component must be 'plus' or 'minus', got {component!r}")
    return component  # type: ignore[return-value]


@dataclass(frozen=True)
class Kinematics:
    """Relativistic frame shared by both problems (atomic units, energy in mc^2)."""

    lambda_bar: float
    epsilon: float
    kappa: int

    def __post_init__(self) -> None:
        if not self.lambda_bar > 0.0:
            raise ConfigurationError(f"lambda_bar must be positive, got {self.lambda_bar!r}")
        if int(self.kappa) != self.kappa or self.kappa == 0:
            raise ConfigurationError(f"kappa must be a nonzero integer, got {self.kappa!r}")

    @property
    def k_squared(self) -> float:
        """Squared wavenumber (eps^2 - 1)/lambda_bar^2 of the radial equations."""
        return (self.epsilon**2 - 1.0) / self.lambda_bar**2


@dataclass(frozen=True)
class GreenMatrix:
    """The 2x2 radial Green's matrix at one point pair.

    ``gpm`` carries the upper spinor index at ``r`` and the lower at
    ``r_prime``; ``gmp`` the reverse.  Exchanging the arguments transposes
    the matrix.
    """

    r: float
    r_prime: float
    gpp: float
    gpm: float
    gmp: float
    gmm: float

    def transpose(self) -> "GreenMatrix":
        return GreenMatrix(self.r_prime, self.r, self.gpp, self.gmp, self.gpm, self.gmm)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.gpp, self.gpm, self.gmp, self.gmm)


def ordered(r, r_prime):
    """(r_<, r_>) with the near-equal case collapsed onto a single radius."""
    r = np.asarray(r, dtype=float)
    r_prime = np.asarray(r_prime, dtype=float)
    if np.any(r <= 0.0) or np.any(r_prime <= 0.0):
        raise ConfigurationError("radii must be positive")
    lo = np.minimum(r, r_prime)
    hi = np.maximum(r, r_prime)
    close = np.abs(hi - lo) < EQUAL_RADII_RTOL * hi
    hi = np.where(close, lo, hi)
    return lo, hi


def theta_split(r, r_prime, scale, first, second, w_below, w_above):
    """Off-diagonal Whittaker product split on the sign of r' - r.

    ``first`` and ``second`` are (a, b) index pairs and ``scale`` maps a
    radius to the Whittaker argument.  Returns

        w_below * M_first(scale(r))   * W_second(scale(r'))   for r <= r'
        w_above * M_second(scale(r')) * W_first(scale(r))     for r >  r'
    """
    r = np.asarray(r, dtype=float)
    r_prime = np.asarray(r_prime, dtype=float)
    if np.any(r <= 0.0) or np.any(r_prime <= 0.0):
        raise ConfigurationError("radii must be positive")
    r, r_prime = np.broadcast_arrays(r, r_prime)
    x, xp = scale(r), scale(r_prime)
    below = r <= r_prime
    above = ~below
    out = np.empty(r.shape)
    if np.any(below):
        out[below] = w_below * whittaker_m(*first, x[below]) * whittaker_w(*second, xp[below])
    if np.any(above):
        out[above] = w_above * whittaker_m(*second, xp[above]) * whittaker_w(*first, x[above])
    return out
