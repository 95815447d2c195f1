"""Numerical Green's matrix from regular and irregular spinor solutions.

The radial Dirac system is rotated so that each spinor component obeys a
Schrodinger-like equation

    phi'' = Q(r) phi,   Q = C^2 U^2 -+ C U' +- (2 S eps / lambda) U - k^2,

with U = W + kappa/r.  One component is integrated with Numerov's method on
a log-uniform grid and the other follows from the first-order relation
between them.  The Green's matrix is assembled as

    G^{ab}(r, r') = R^a(r_<) I^b(r_>) / Omega,
    Omega = (R^+ I^- - R^- I^+) / lambda,

with R regular at the origin and I decaying at infinity.  Nothing here uses
Whittaker functions, so the result is an independent check of the closed
forms.

For the Coulomb problem the upper and lower components are taken in
different rotated frames, S = +lambda Z/kappa for the upper and
S = -lambda Z/kappa for the lower; this is what makes both equations carry
the same 2 Z eps / r term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Literal

import numpy as np

from .model import (
    COMPONENTS,
    Component,
    ConfigurationError,
    GreenMatrix,
    Kinematics,
    check_component,
)

Kind = Literal["oscillator", "coulomb", "free"]

DEFAULT_POINTS = 4000
# the r^4 growth of the oscillator potential needs a finer log grid near r_max
OSCILLATOR_POINTS = 12000
DEFAULT_R_MIN = 1e-3
RENORM_THRESHOLD = 1e100
GRID_MATCH_RTOL = 1e-10
FROBENIUS_TERMS = 80
FROBENIUS_MAX_R = 1.0


class OracleError(RuntimeError):
    pass


class StiffnessError(OracleError):
    """The sweep produced non-finite values despite renormalization."""


class DegenerateError(OracleError):
    """Regular and irregular solutions are not independent."""


class DiagonalError(OracleError):
    """Finite-difference stencil straddles r = r'."""


class InterpolationError(OracleError):
    """Requested radius lies outside the integration grid."""


# ---------------------------------------------------------------- problem


@dataclass(frozen=True)
class ProblemSpec:
    """Radial Dirac problem in the rotated representation.

    ``kind="free"`` sets U = 0 and is a test hook only.
    """

    kind: Kind
    kin: Kinematics
    omega: float = 0.0
    Z: float = 0.0
    signed_gamma: bool = False

    def __post_init__(self) -> None:
        if self.kind not in ("oscillator", "coulomb", "free"):
            raise ConfigurationError(f"unknown problem kind {self.kind!r}")
        if self.kind == "oscillator" and not self.omega > 0.0:
            raise ConfigurationError("oscillator needs omega > 0")
        if self.kind == "coulomb":
            k, lz = self.kin.kappa, self.kin.lambda_bar * self.Z
            if not k * k > lz * lz:
                raise ConfigurationError("need kappa^2 > (lambda_bar Z)^2")
        if abs(self.S**2 + self.C**2 - 1.0) > 1e-12:
            raise ConfigurationError("S^2 + C^2 != 1")

    @property
    def gamma(self) -> float:
        k = self.kin.kappa
        if self.kind != "coulomb":
            return float(k)
        g = math.sqrt(k * k - (self.kin.lambda_bar * self.Z) ** 2)
        return -g if (self.signed_gamma and k < 0) else g

    @property
    def S(self) -> float:
        return self.kin.lambda_bar * self.Z / self.kin.kappa if self.kind == "coulomb" else 0.0

    @property
    def C(self) -> float:
        return self.gamma / self.kin.kappa if self.kind == "coulomb" else 1.0

    def frame_S(self, component: Component) -> float:
        """Rotation parameter of the frame in which ``component`` is integrated."""
        return self.S if component == "plus" else -self.S

    @property
    def k_squared(self) -> float:
        return self.kin.k_squared

    def U(self, r):
        r = np.asarray(r, dtype=float)
        if self.kind == "free":
            return np.zeros_like(r)
        return self.omega**2 * r + self.kin.kappa / r

    def dU(self, r):
        r = np.asarray(r, dtype=float)
        if self.kind == "free":
            return np.zeros_like(r)
        return self.omega**2 - self.kin.kappa / r**2

    def q_coefficients(self, component: Component) -> dict[str, float]:
        """Q(r) = A/r^2 + B/r + C0 + E1 r + D r^2 for the given component."""
        check_component(component)
        if self.kind == "free":
            return dict(A=0.0, B=0.0, C0=-self.k_squared, E1=0.0, D=0.0)
        c = 1.0 if component == "plus" else -1.0
        C, kap, w2 = self.C, self.kin.kappa, self.omega**2
        s_term = 2.0 * c * self.frame_S(component) * self.kin.epsilon / self.kin.lambda_bar
        return dict(
            A=C * C * kap * kap + c * C * kap,
            B=s_term * kap,
            C0=2.0 * C * C * kap * w2 - c * C * w2 - self.k_squared,
            E1=s_term * w2,
            D=C * C * w2 * w2,
        )

    def origin_exponents(self, component: Component) -> tuple[float, float]:
        """(larger, smaller) indicial roots p(p - 1) = A."""
        A = self.q_coefficients(component)["A"]
        disc = 0.25 + A
        if disc < 0.0:
            raise ConfigurationError("complex indicial exponents")
        s = math.sqrt(disc)
        return 0.5 + s, 0.5 - s

    def default_r_max(self) -> float:
        if self.kind == "oscillator":
            return 6.0 / math.sqrt(self.omega)
        k2 = -self.k_squared
        if not k2 > 0.0:
            raise ConfigurationError("need eps^2 < 1 for a decaying solution")
        return 12.0 / math.sqrt(k2)

    def echo(self) -> dict:
        return dict(
            kind=self.kind,
            lambda_bar=self.kin.lambda_bar,
            epsilon=self.kin.epsilon,
            kappa=self.kin.kappa,
            omega=self.omega,
            Z=self.Z,
            signed_gamma=self.signed_gamma,
        )


def effective_potential(problem: ProblemSpec, component: Component, r):
    """C^2 U^2 -+ C U' +- (2 S eps / lambda) U, without the -k^2 shift."""
    check_component(component)
    c = 1.0 if component == "plus" else -1.0
    U, dU = problem.U(r), problem.dU(r)
    C = problem.C
    S = problem.frame_S(component)
    return C * C * U * U - c * C * dU + c * 2.0 * S * problem.kin.epsilon / problem.kin.lambda_bar * U


# ---------------------------------------------------------------- grids and starts


@dataclass(frozen=True)
class RadialGrid:
    """Log-uniform grid r_i = exp(t_i)."""

    r_min: float
    r_max: float
    n: int = DEFAULT_POINTS

    def __post_init__(self) -> None:
        if not (0.0 < self.r_min < self.r_max) or self.n < 16:
            raise ConfigurationError("grid must satisfy 0 < r_min < r_max and n >= 16")

    @property
    def t(self) -> np.ndarray:
        return np.linspace(math.log(self.r_min), math.log(self.r_max), self.n)

    @property
    def h(self) -> float:
        return (math.log(self.r_max) - math.log(self.r_min)) / (self.n - 1)

    @property
    def r(self) -> np.ndarray:
        return np.exp(self.t)

    def refined(self, factor: int = 2) -> "RadialGrid":
        return RadialGrid(self.r_min, self.r_max, (self.n - 1) * factor + 1)


def default_grid(problem: ProblemSpec, n: int | None = None) -> RadialGrid:
    if n is None:
        n = OSCILLATOR_POINTS if problem.kind == "oscillator" else DEFAULT_POINTS
    return RadialGrid(DEFAULT_R_MIN, problem.default_r_max(), n)


def _frobenius_coefficients(coef: dict[str, float], p: float, terms: int) -> np.ndarray:
    c = np.zeros(terms)
    c[0] = 1.0
    for n in range(1, terms):
        den = n * (2.0 * p + n - 1.0)
        rhs = coef["B"] * c[n - 1]
        if n >= 2:
            rhs += coef["C0"] * c[n - 2]
        if n >= 3:
            rhs += coef["E1"] * c[n - 3]
        if n >= 4:
            rhs += coef["D"] * c[n - 4]
        if abs(den) < 1e-12:
            if abs(rhs) > 0.0:
                raise ConfigurationError(f"resonant indicial exponent p={p}: logarithmic start not supported")
            continue
        c[n] = rhs / den
    return c


def frobenius(coef: dict[str, float], p: float, r, terms: int = FROBENIUS_TERMS):
    """phi = r^p sum c_n r^n near the origin, and its r-derivative."""
    r = np.asarray(r, dtype=float)
    c = _frobenius_coefficients(coef, p, terms)
    powers = r[..., None] ** np.arange(terms)
    series = powers @ c
    dseries = (powers[..., :-1] @ (c[1:] * np.arange(1, terms))) if terms > 1 else 0.0
    return r**p * series, r ** (p - 1.0) * (p * series + r * dseries)


def frobenius_reach(coef: dict[str, float], p: float, r: np.ndarray, terms: int = FROBENIUS_TERMS) -> int:
    """Number of leading grid points on which the series has converged to rounding level.

    Outward integration from the smaller exponent amplifies truncation
    error like r^(2p_large - 1); filling the grid from the series as far as
    it is exact keeps that amplification small.
    """
    c = _frobenius_coefficients(coef, p, terms)
    r = r[r <= FROBENIUS_MAX_R]
    if r.size == 0:
        return 0
    powers = r[:, None] ** np.arange(terms)
    parts = np.abs(powers * c)
    tail = parts[:, -4:].sum(axis=1)
    ok = (tail <= 1e-17 * np.abs(powers @ c)) & (parts.max(axis=1) <= 1e3 * np.abs(powers @ c))
    bad = np.nonzero(~ok)[0]
    return int(bad[0]) if bad.size else int(r.size)


def asymptotic(coef: dict[str, float], r, max_terms: int = 40):
    """Decaying solution at large r from its asymptotic series.

    Returns (log_amplitude, value) with phi = exp(log_amplitude) * value.
    """
    r = np.asarray(r, dtype=float)
    A, B, C0, E1, D = coef["A"], coef["B"], coef["C0"], coef["E1"], coef["D"]
    if D > 0.0:
        if B != 0.0 or E1 != 0.0:
            raise ConfigurationError("asymptotic start needs B = E1 = 0 when D > 0")
        a = math.sqrt(D)
        beta = -(1.0 + C0 / a) / 2.0
        log_amp = -a * r**2 / 2.0 + beta * np.log(r)
        total, term = np.ones_like(r), np.ones_like(r)
        coeff = 1.0
        best = np.abs(term)
        for n in range(1, max_terms):
            coeff *= -((beta - 2 * n + 2) * (beta - 2 * n + 1) - A) / (4.0 * a * n)
            term = coeff * r ** (-2.0 * n)
            if np.all(np.abs(term) > best):
                break
            best = np.minimum(best, np.abs(term))
            total = total + term
            if np.all(np.abs(term) < 1e-17 * np.abs(total)):
                break
        return log_amp, total
    if E1 != 0.0:
        raise ConfigurationError("asymptotic start does not support a linear term without D")
    if not C0 > 0.0:
        raise ConfigurationError("no decaying solution: need C0 > 0")
    q = math.sqrt(C0)
    beta = -B / (2.0 * q)
    log_amp = -q * r + beta * np.log(r)
    total, term = np.ones_like(r), np.ones_like(r)
    coeff = 1.0
    best = np.abs(term)
    for n in range(max_terms):
        coeff *= (A - (beta - n) * (beta - n - 1.0)) / (2.0 * q * (n + 1))
        term = coeff * r ** (-(n + 1.0))
        if np.all(np.abs(term) > best):
            break
        best = np.minimum(best, np.abs(term))
        total = total + term
        if np.all(np.abs(term) < 1e-17 * np.abs(total)):
            break
    return log_amp, total


# ---------------------------------------------------------------- integration


@dataclass(frozen=True)
class RegularOrigin:
    """Start ~ r^p at r_min; ``p`` is "large", "small" or an explicit exponent."""

    p: float | str = "large"


@dataclass(frozen=True)
class DecayingInfinity:
    pass


Boundary = RegularOrigin | DecayingInfinity


@dataclass(frozen=True)
class SpinorGridSolution:
    """Both spinor components on a grid, stored as value * exp(log_scale).

    ``component`` is the integrated one; the other is its companion.
    """

    grid: np.ndarray
    phi: np.ndarray
    phi_companion: np.ndarray
    log_scale: np.ndarray
    component: Component
    origin_exponent: float | None
    problem: ProblemSpec = field(repr=False)
    h: float = 0.0

    @property
    def plus(self) -> np.ndarray:
        return self.phi if self.component == "plus" else self.phi_companion

    @property
    def minus(self) -> np.ndarray:
        return self.phi_companion if self.component == "plus" else self.phi

    def scaled(self, c: float) -> "SpinorGridSolution":
        return SpinorGridSolution(
            self.grid, c * self.phi, c * self.phi_companion, self.log_scale, self.component,
            self.origin_exponent, self.problem, self.h,
        )

    def plus_minus_at(self, r: float) -> tuple[float, float, float]:
        """(plus, minus, log_scale) at r, exact on-grid or local cubic interpolation."""
        return _interp(self, r)


def _numerov(f: np.ndarray, h: float, y0: float, y1: float):
    """Numerov sweep of y'' = f y; returns (mantissa, log_scale) arrays."""
    n = f.size
    y = np.empty(n)
    ls = np.zeros(n)
    g = 1.0 - h * h * f / 12.0
    y[0], y[1] = y0, y1
    scale = 0.0
    for i in range(1, n - 1):
        y[i + 1] = ((12.0 - 10.0 * g[i]) * y[i] - g[i - 1] * y[i - 1]) / g[i + 1]
        ls[i + 1] = scale
        if abs(y[i + 1]) > RENORM_THRESHOLD:
            s = math.log(abs(y[i + 1]))
            y[i : i + 2] *= math.exp(-s)
            scale += s
            ls[i : i + 2] = scale
        if not math.isfinite(y[i + 1]):
            raise StiffnessError(f"non-finite value at step {i + 1}")
    return y, ls


def _derivative_t(y: np.ndarray, ls: np.ndarray, h: float) -> np.ndarray:
    """dy/dt in the local scale of each point (6th-order central, one-sided at the ends)."""
    n = y.size
    true_rel = lambda i, d: y[i + d] * np.exp(ls[i + d] - ls[i])  # noqa: E731
    out = np.empty(n)
    i = np.arange(3, n - 3)
    out[i] = (
        -true_rel(i, -3) + 9 * true_rel(i, -2) - 45 * true_rel(i, -1)
        + 45 * true_rel(i, 1) - 9 * true_rel(i, 2) + true_rel(i, 3)
    ) / (60.0 * h)
    fwd = np.array([-49 / 20, 6, -15 / 2, 20 / 3, -15 / 4, 6 / 5, -1 / 6])
    for j in range(3):
        out[j] = sum(fwd[k] * true_rel(np.array([j]), k)[0] for k in range(7) if j + k < n) / h
        jj = n - 1 - j
        out[jj] = -sum(fwd[k] * true_rel(np.array([jj]), -k)[0] for k in range(7)) / h
    return out


def _companion(problem: ProblemSpec, component: Component, r, phi, dphi):
    """The other spinor component from the integrated one."""
    lam, eps, C = problem.kin.lambda_bar, problem.kin.epsilon, problem.C
    S = problem.frame_S(component)
    U = problem.U(r)
    if component == "plus":
        den = C + eps
        if den == 0.0:
            raise DegenerateError("C + eps = 0: companion undefined")
        return lam / den * ((-S / lam + C * U) * phi + dphi)
    den = C - eps
    if den == 0.0:
        raise DegenerateError("C - eps = 0: companion undefined")
    return lam / den * ((S / lam - C * U) * phi + dphi)


def integrate_solution(
    problem: ProblemSpec, component: Component, grid: RadialGrid, boundary: Boundary
) -> SpinorGridSolution:
    check_component(component)
    t, h = grid.t, grid.h
    r = np.exp(t)
    coef = problem.q_coefficients(component)
    Q = effective_potential(problem, component, r) - problem.k_squared
    f = r * r * Q + 0.25
    p_used: float | None = None
    if isinstance(boundary, RegularOrigin):
        large, small = problem.origin_exponents(component)
        p_used = {"large": large, "small": small}.get(boundary.p, boundary.p)  # type: ignore[arg-type]
        reach = max(2, frobenius_reach(coef, float(p_used), r))
        phi0, _ = frobenius(coef, float(p_used), r[:reach])
        y_head = phi0 / np.sqrt(r[:reach])
        y_head = y_head / abs(y_head[-1])
        y_tail, ls_tail = _numerov(f[reach - 2 :], h, y_head[-2], y_head[-1])
        y = np.concatenate([y_head[:-2], y_tail])
        ls = np.concatenate([np.zeros(reach - 2), ls_tail])
    elif isinstance(boundary, DecayingInfinity):
        log_amp, val = asymptotic(coef, r[-2:])
        y_end = val / np.sqrt(r[-2:])
        rel = log_amp - log_amp[-1]
        y_rev, ls_rev = _numerov(f[::-1], h, y_end[1], y_end[0] * math.exp(rel[0]))
        y, ls = y_rev[::-1].copy(), ls_rev[::-1].copy()
    else:
        raise ConfigurationError(f"unknown boundary {boundary!r}")
    if not np.all(np.isfinite(y)):
        raise StiffnessError("non-finite solution")
    dy = _derivative_t(y, ls, h)
    sq = np.sqrt(r)
    phi = sq * y
    dphi = (dy + 0.5 * y) / sq
    comp = _companion(problem, component, r, phi, dphi)
    return SpinorGridSolution(r, phi, comp, ls, component, p_used, problem, h)


# ---------------------------------------------------------------- Wronskian and assembly


@dataclass(frozen=True)
class WronskianResult:
    value: float
    log_scale: float
    relative_spread: float

    @property
    def full(self) -> float:
        return self.value * math.exp(self.log_scale)


def wronskian(regular: SpinorGridSolution, irregular: SpinorGridSolution, lambda_bar: float,
              trim: int = 8) -> WronskianResult:
    """(phi+ phibar- - phi- phibar+) / lambda on the grid: median and relative spread.

    The returned value is in units of exp(log_scale), where log_scale is the
    combined log-scale at the grid midpoint.
    """
    if regular.grid.shape != irregular.grid.shape or not np.array_equal(regular.grid, irregular.grid):
        raise ConfigurationError("solutions live on different grids")
    sl = slice(trim, regular.grid.size - trim)
    ls = (regular.log_scale + irregular.log_scale)[sl]
    ref = ls[ls.size // 2]
    fac = np.exp(ls - ref)
    a = regular.plus[sl] * irregular.minus[sl] * fac
    b = regular.minus[sl] * irregular.plus[sl] * fac
    w = (a - b) / lambda_bar
    med = float(np.median(w))
    scale = float(np.median(np.abs(a) + np.abs(b))) / lambda_bar
    if abs(med) < 1e-12 * scale or med == 0.0:
        raise DegenerateError("regular and irregular solutions are proportional")
    spread = float(np.std(w) / abs(med))
    return WronskianResult(med, ref, spread)


def _interp(sol: SpinorGridSolution, r: float) -> tuple[float, float, float]:
    grid = sol.grid
    if not (grid[0] * (1 - GRID_MATCH_RTOL) <= r <= grid[-1] * (1 + GRID_MATCH_RTOL)):
        raise InterpolationError(f"r={r} outside [{grid[0]}, {grid[-1]}]")
    t = math.log(r)
    t0 = math.log(grid[0])
    x = (t - t0) / sol.h
    i = int(round(x))
    if abs(x - i) < GRID_MATCH_RTOL * max(1.0, abs(x)) and 0 <= i < grid.size:
        return float(sol.plus[i]), float(sol.minus[i]), float(sol.log_scale[i])
    j = min(max(int(math.floor(x)) - 1, 0), grid.size - 4)
    idx = np.arange(j, j + 4)
    base = sol.log_scale[j + 1]
    fac = np.exp(sol.log_scale[idx] - base)
    weights = np.array([np.prod([(x - idx[m]) / (idx[k] - idx[m]) for m in range(4) if m != k]) for k in range(4)])
    return float(weights @ (sol.plus[idx] * fac)), float(weights @ (sol.minus[idx] * fac)), float(base)


def assemble_green(regular: SpinorGridSolution, irregular: SpinorGridSolution, omega: WronskianResult,
                   r: float, r_prime: float) -> GreenMatrix:
    """Green's matrix of one frame at (r, r')."""
    rp_, rm_, rl = regular.plus_minus_at(min(r, r_prime))
    ip_, im_, il = irregular.plus_minus_at(max(r, r_prime))
    fac = math.exp(rl + il - omega.log_scale) / omega.value
    if r <= r_prime:
        # R^a(r) I^b(r')
        gpm, gmp = rp_ * im_ * fac, rm_ * ip_ * fac
    else:
        # I^a(r) R^b(r')
        gpm, gmp = ip_ * rm_ * fac, im_ * rp_ * fac
    return GreenMatrix(float(r), float(r_prime), rp_ * ip_ * fac, gpm, gmp, rm_ * im_ * fac)


# ---------------------------------------------------------------- full oracle


@dataclass
class FrameGreen:
    regular: SpinorGridSolution
    irregular: SpinorGridSolution
    omega: WronskianResult

    def __call__(self, r: float, r_prime: float) -> GreenMatrix:
        return assemble_green(self.regular, self.irregular, self.omega, r, r_prime)


def solve_frame(problem: ProblemSpec, component: Component, grid: RadialGrid | None = None,
                origin: float | str = "large") -> FrameGreen:
    grid = grid or default_grid(problem)
    reg = integrate_solution(problem, component, grid, RegularOrigin(origin))
    irr = integrate_solution(problem, component, grid, DecayingInfinity())
    return FrameGreen(reg, irr, wronskian(reg, irr, problem.kin.lambda_bar))


class OracleGreen:
    """Green's matrix of a problem from both rotated frames.

    G++ comes from the frame of the upper component, G-- from that of the
    lower one, and the off-diagonal elements mix the two frames with weight
    ``xi`` on the upper one.
    """

    def __init__(self, problem: ProblemSpec, grid: RadialGrid | None = None, origin: float | str = "large"):
        self.problem = problem
        self.grid = grid or default_grid(problem)
        self.frames = {c: solve_frame(problem, c, self.grid, origin) for c in COMPONENTS}

    def matrix(self, r: float, r_prime: float, xi: float = 1.0) -> GreenMatrix:
        up = self.frames["plus"](r, r_prime)
        lo = self.frames["minus"](r, r_prime)
        return GreenMatrix(
            float(r), float(r_prime), up.gpp,
            xi * up.gpm + (1.0 - xi) * lo.gpm,
            xi * up.gmp + (1.0 - xi) * lo.gmp,
            lo.gmm,
        )

    @property
    def wronskian_spread(self) -> float:
        return max(f.omega.relative_spread for f in self.frames.values())


def xi_offdiagonal_numeric(
    gpp: Callable[[float, float], float],
    gmm: Callable[[float, float], float],
    problem: ProblemSpec,
    xi: float,
    r: float,
    r_prime: float,
    h: float | None = None,
) -> float:
    """G-+(r, r') from first-order operators applied to the diagonal fields.

    xi * lambda/(C+eps) (-S+/lambda + C U(r) + d/dr) G++(r, r')
      + (1-xi) * lambda/(C-eps) (S-/lambda - C U(r') + d/dr') G--(r, r')

    with S+- the rotation parameters of the two frames.  Derivatives are
    five-point central differences with step ``h`` (default 1e-3 * r).
    """
    lam, eps, C = problem.kin.lambda_bar, problem.kin.epsilon, problem.C
    h_r = h if h is not None else 1e-3 * r
    h_rp = h if h is not None else 1e-3 * r_prime
    if abs(r - r_prime) <= 2.0 * max(h_r, h_rp):
        raise DiagonalError("stencil crosses r = r'")

    def d5(f, x, step):
        return (f(x - 2 * step) - 8 * f(x - step) + 8 * f(x + step) - f(x + 2 * step)) / (12.0 * step)

    up = 0.0
    if xi != 0.0:
        d = d5(lambda s: gpp(s, r_prime), r, h_r)
        up = lam / (C + eps) * ((-problem.frame_S("plus") / lam + C * float(problem.U(r))) * gpp(r, r_prime) + d)
    lo = 0.0
    if xi != 1.0:
        d = d5(lambda s: gmm(r, s), r_prime, h_rp)
        lo = lam / (C - eps) * ((problem.frame_S("minus") / lam - C * float(problem.U(r_prime))) * gmm(r, r_prime) + d)
    return xi * up + (1.0 - xi) * lo


def companion_conditioning(problem: ProblemSpec) -> dict[str, float]:
    """Amplification factors lambda/|C +- eps| of the two companion relations."""
    lam, eps, C = problem.kin.lambda_bar, problem.kin.epsilon, problem.C
    out = {}
    for name, den in (("plus", C + eps), ("minus", C - eps)):
        out[name] = math.inf if den == 0.0 else lam / abs(den)
    return out
