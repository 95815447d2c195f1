"""Named, tolerance-bearing checks of the closed forms.

Every check returns :class:`VerificationReport` records.  A report passes
when ``measured <= tolerance``; informational reports carry a measurement
but never decide a suite's outcome.  Suites are grouped as in
:data:`SUITES` and serialized as JSON lines or a summary table.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import asdict, dataclass, replace
from typing import Callable, Iterable

import numpy as np
from scipy.stats import qmc

from . import coulomb as cl
from . import oscillator as osc
from . import specfun as sf
from . import spectral
from .model import (
    COMPONENTS,
    CORRUPTIONS,
    FINE_STRUCTURE,
    Component,
    ConfigurationError,
    Kinematics,
    active_corruption,
    corrupted,
)
from .oracle import DegenerateError, OracleError, OracleGreen, ProblemSpec, effective_potential, xi_offdiagonal_numeric


@dataclass(frozen=True)
class Tolerances:
    identity: float = 1e-8
    identity_samples: int = 200
    identity_seed: int = 0
    identity_runtime: float = 5.0
    ode_residual: float = 1e-6
    ode_step: float = 1e-4
    ode_fit_steps: tuple[float, ...] = (0.04, 0.02, 0.01)
    order_window: float = 0.3
    jump: float = 1e-3
    jump_points: tuple[float, ...] = (0.5, 1.0, 2.0)
    oracle: float = 1e-5
    oracle_radii: int = 12
    wronskian_spread: float = 1e-8
    xi_operator: float = 1e-6
    xi_default: float = 1.0
    levels: float = 1e-10
    bohr_order: float = 4.0
    exponent_window: float = 0.1
    limit_lambdas: tuple[float, ...] = (1e-1, 3e-2, 1e-2, 3e-3, 1e-3)
    limit_ratio: float = 1e-3
    spectral: float = 1e-6
    exchange_oracle: float = 1e-10

    @property
    def xi_values(self) -> tuple[float, ...]:
        return tuple(dict.fromkeys((0.0, 1.0, self.xi_default)))


@dataclass(frozen=True)
class VerificationReport:
    check_id: str
    configuration: dict
    measured: float
    tolerance: float
    notes: str = ""
    informational: bool = False

    @property
    def passed(self) -> bool:
        return bool(self.measured <= self.tolerance)

    @property
    def status(self) -> str:
        if self.informational:
            return "INFO"
        return "PASS" if self.passed else "FAIL"

    def to_dict(self) -> dict:
        out = asdict(self)
        out["pass"] = self.passed
        out["measured"] = _finite_or_none(self.measured)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _finite_or_none(x: float):
    return float(x) if math.isfinite(x) else None


def all_passed(reports: Iterable[VerificationReport]) -> bool:
    return all(r.passed for r in reports if not r.informational)


def summary_table(reports: Iterable[VerificationReport]) -> str:
    rows = [(r.check_id, f"{r.measured:.3e}", f"{r.tolerance:.1e}", r.status) for r in reports]
    width = max([len("check_id")] + [len(r[0]) for r in rows])
    lines = [f"{'check_id':<{width}}  {'measured':>10}  {'tolerance':>9}  status"]
    lines += [f"{a:<{width}}  {b:>10}  {c:>9}  {d}" for a, b, c, d in rows]
    return "\n".join(lines)


# ---------------------------------------------------------------- benchmark set

OSC_LAMBDA = 0.1
OSC_OMEGA = 1.0
OSC_EPSILON = math.sqrt(1.02)
COUL_Z = -1.0
# Whittaker first index of the mid-gap Coulomb energy
COUL_MU = 1.5


def coulomb_mid_gap_epsilon(lambda_bar: float = FINE_STRUCTURE, Z: float = COUL_Z, mu: float = COUL_MU) -> float:
    return mu / math.hypot(mu, lambda_bar * Z)


@dataclass(frozen=True)
class Benchmark:
    """One closed-form configuration together with its oracle problem."""

    model: osc.OscillatorModel | cl.CoulombModel

    @property
    def kind(self) -> str:
        return "oscillator" if isinstance(self.model, osc.OscillatorModel) else "coulomb"

    @property
    def kin(self) -> Kinematics:
        return self.model.kin

    @property
    def label(self) -> str:
        extra = ",signed" if self.kind == "coulomb" and self.model.signed_gamma else ""
        return f"{self.kind}[kappa={self.kin.kappa:+d}{extra}]"

    @property
    def C(self) -> float:
        return 1.0 if self.kind == "oscillator" else self.model.C

    def problem(self) -> ProblemSpec:
        if self.kind == "oscillator":
            return ProblemSpec("oscillator", self.kin, omega=self.model.omega)
        return ProblemSpec("coulomb", self.kin, Z=self.model.Z, signed_gamma=self.model.signed_gamma)

    def diag(self, component: Component, r, r_prime, printed: bool = False):
        if self.kind == "oscillator":
            f = osc.printed_diag_osc if printed else osc.g_diag_osc
        else:
            f = cl.printed_diag_coul if printed else cl.g_diag_coul
        return f(self.model, component, r, r_prime)

    def offdiag(self, xi: float, r, r_prime, printed: bool = False):
        if self.kind == "oscillator":
            f = osc.printed_offdiag_osc if printed else osc.g_offdiag_osc
        else:
            f = cl.printed_offdiag_coul if printed else cl.g_offdiag_coul
        return f(self.model, xi, r, r_prime)

    def matrix(self, r: float, r_prime: float, xi: float):
        if self.kind == "oscillator":
            return osc.green_matrix_osc(self.model, r, r_prime, xi)
        return cl.green_matrix_coul(self.model, r, r_prime, xi)

    def printed_jump(self, component: Component) -> float:
        """Derivative jump C +- eps implied by the delta source as printed."""
        eps = self.kin.epsilon
        return self.C + eps if component == "plus" else self.C - eps

    def whittaker_indices(self) -> list[tuple[float, float]]:
        if self.kind == "oscillator":
            return [osc._diag_indices(self.model, c)[:2] for c in COMPONENTS]
        return [(self.model.mu, cl._diag_parts(self.model, c)[0]) for c in COMPONENTS]

    def accuracy_note(self) -> str:
        outside = [(a, b) for a, b in self.whittaker_indices() if abs(a) > 10.0 or not 0.2 <= abs(b) <= 10.0]
        if not outside:
            return ""
        pairs = ", ".join(f"({a:.4g}, {b:.4g})" for a, b in outside)
        return f"whittaker indices outside the safe box: {pairs}"

    def echo(self) -> dict:
        out = dict(
            kind=self.kind,
            lambda_bar=self.kin.lambda_bar,
            epsilon=self.kin.epsilon,
            kappa=self.kin.kappa,
        )
        if self.kind == "oscillator":
            out["omega"] = self.model.omega
        else:
            out["Z"] = self.model.Z
            out["signed_gamma"] = self.model.signed_gamma
        corruption = active_corruption()
        if corruption:
            out["corruption"] = corruption
        return out


def oscillator_benchmark(kappa: int, lambda_bar: float = OSC_LAMBDA, omega: float = OSC_OMEGA,
                         epsilon: float = OSC_EPSILON) -> Benchmark:
    return Benchmark(osc.OscillatorModel(Kinematics(lambda_bar, epsilon, kappa), omega))


def coulomb_benchmark(kappa: int, lambda_bar: float = FINE_STRUCTURE, Z: float = COUL_Z,
                      epsilon: float | None = None, signed_gamma: bool = False) -> Benchmark:
    eps = coulomb_mid_gap_epsilon(lambda_bar, Z) if epsilon is None else epsilon
    return Benchmark(cl.CoulombModel(Kinematics(lambda_bar, eps, kappa), Z, signed_gamma))


BENCHMARK_KAPPAS = (1, -1, 2, -2)


def benchmark_set() -> list[Benchmark]:
    return [oscillator_benchmark(k) for k in BENCHMARK_KAPPAS] + [coulomb_benchmark(k) for k in BENCHMARK_KAPPAS]


def _with_note(*notes: str) -> str:
    return "; ".join(n for n in notes if n)


# ---------------------------------------------------------------- ODE residual


def _residual_max(evaluator, potential, r: np.ndarray, h: float) -> tuple[float, float]:
    """Max residual relative to the largest operator term, and relative to max |G|."""
    g0 = evaluator(r)
    d2 = (evaluator(r + h) - 2.0 * g0 + evaluator(r - h)) / (h * h)
    vg = potential(r) * g0
    res = float(np.max(np.abs(-d2 + vg)))
    return res / float(np.max(np.abs(d2) + np.abs(vg))), res / float(np.max(np.abs(g0)))


def residual_ode(
    evaluator: Callable[[np.ndarray], np.ndarray],
    problem: ProblemSpec,
    component: Component,
    r_prime: float,
    tol: Tolerances = Tolerances(),
    check_id: str = "ode",
    configuration: dict | None = None,
    points: np.ndarray | None = None,
    notes: str = "",
) -> list[VerificationReport]:
    """[-D^2 + V_eff - k^2] G(., r') by centered differences, away from r = r'.

    The residual is divided by the max-norm of the operator terms
    |G''| + |(V - k^2) G| over the sample points, which makes it
    independent of the scale of G and of its growth near the origin.
    Returns the residual at the production step and the convergence order
    fitted over ``tol.ode_fit_steps``.
    """
    if points is None:
        points = np.linspace(0.25, 3.0, 56)
    window = 2.5 * max(tol.ode_fit_steps)
    r = points[np.abs(points - r_prime) > window]
    potential = lambda t: effective_potential(problem, component, t) - problem.k_squared  # noqa: E731
    config = dict(configuration or problem.echo(), component=component, r_prime=r_prime,
                  points=[float(r.min()), float(r.max()), int(r.size)], window=window)
    res, res_g = _residual_max(evaluator, potential, r, tol.ode_step)
    steps = np.array(tol.ode_fit_steps)
    fit = np.array([_residual_max(evaluator, potential, r, h)[0] for h in steps])
    order = float(np.polyfit(np.log(steps), np.log(fit), 1)[0])
    return [
        VerificationReport(f"{check_id}.residual", dict(config, h=tol.ode_step), res, tol.ode_residual,
                           _with_note(f"relative to max|G|: {res_g:.3e}", notes)),
        VerificationReport(
            f"{check_id}.order", dict(config, h=list(steps)), abs(order - 2.0), tol.order_window,
            _with_note(f"fitted order {order:.3f}", notes),
        ),
    ]


# ---------------------------------------------------------------- jump


def jump_measure(evaluator: Callable[[np.ndarray], np.ndarray], r_prime: float, h: float | None = None) -> float:
    """d/dr G(r'+, r') - d/dr G(r'-, r') from one-sided second-order fits, Richardson-extrapolated."""
    h = 1e-2 * r_prime if h is None else h

    def one_sided(step: float) -> float:
        g = evaluator(r_prime + step * np.array([-2.0, -1.0, 0.0, 1.0, 2.0]))
        right = (-3.0 * g[2] + 4.0 * g[3] - g[4]) / (2.0 * step)
        left = (3.0 * g[2] - 4.0 * g[1] + g[0]) / (2.0 * step)
        return right - left

    return (4.0 * one_sided(h / 2.0) - one_sided(h)) / 3.0


def jump_condition(
    evaluator: Callable[[np.ndarray], np.ndarray],
    expected: float,
    r_prime: float,
    tol: Tolerances = Tolerances(),
    check_id: str = "jump",
    configuration: dict | None = None,
    notes: str = "",
    informational: bool = False,
) -> VerificationReport:
    measured = jump_measure(evaluator, r_prime)
    config = dict(configuration or {}, r_prime=r_prime, expected=expected)
    return VerificationReport(
        check_id, config, abs(measured - expected), tol.jump,
        _with_note(f"measured jump {measured:.9g}", notes), informational,
    )


# ---------------------------------------------------------------- oracle comparison


def oracle_radii(oracle: OracleGreen, count: int) -> np.ndarray:
    """``count`` on-grid radii spread over [0.05, r_max / 2]."""
    r = oracle.grid.r
    idx = np.nonzero((r >= 0.05) & (r <= 0.5 * oracle.grid.r_max))[0]
    pick = idx[np.round(np.linspace(0, idx.size - 1, count)).astype(int)]
    return r[pick]


def _oracle_elements(oracle: OracleGreen, radii: np.ndarray, xi_values) -> dict[str, np.ndarray]:
    out: dict[str, list] = {"gpp": [], "gmm": []}
    for xi in xi_values:
        out[f"offdiag[xi={xi:g}]"] = []
    for r in radii:
        for rp in radii:
            up = oracle.frames["plus"](r, rp)
            lo = oracle.frames["minus"](r, rp)
            out["gpp"].append(up.gpp)
            out["gmm"].append(lo.gmm)
            if r == rp:
                continue
            for xi in xi_values:
                out[f"offdiag[xi={xi:g}]"].append(
                    [xi * up.gpm + (1 - xi) * lo.gpm, xi * up.gmp + (1 - xi) * lo.gmp]
                )
    return {k: np.asarray(v) for k, v in out.items()}


def _closed_elements(bench: Benchmark, radii: np.ndarray, xi_values, printed: bool) -> dict[str, np.ndarray]:
    R, RP = np.meshgrid(radii, radii, indexing="ij")
    R, RP = R.ravel(), RP.ravel()
    out = {"gpp": bench.diag("plus", R, RP, printed), "gmm": bench.diag("minus", R, RP, printed)}
    # off-diagonal elements jump across r = r', so coincident points are left out
    off = R != RP
    for xi in xi_values:
        gpm, gmp = bench.offdiag(xi, R[off], RP[off], printed)
        out[f"offdiag[xi={xi:g}]"] = np.stack([gpm, gmp], axis=-1)
    return out


def _max_relative(a: np.ndarray, b: np.ndarray) -> float:
    scale = float(np.max(np.abs(b)))
    return float(np.max(np.abs(a - b)) / scale) if scale > 0.0 else math.inf


def compare_to_oracle(
    bench: Benchmark,
    origin: float | str = "large",
    tol: Tolerances = Tolerances(),
    printed: bool = False,
    informational: bool = False,
    check_id: str | None = None,
    oracle: OracleGreen | None = None,
) -> list[VerificationReport]:
    """Elementwise max deviation from the ODE-assembled matrix, relative to the element's max magnitude.

    Diagonal elements use all pairs of ``tol.oracle_radii`` on-grid radii;
    off-diagonal elements skip the coincident pairs.
    """
    oracle = oracle or OracleGreen(bench.problem(), origin=origin)
    radii = oracle_radii(oracle, tol.oracle_radii)
    xis = tol.xi_values
    if printed:
        xis = tuple(x for x in xis if abs(x - 0.5) > 1e-6)
    ref = _oracle_elements(oracle, radii, xis)
    got = _closed_elements(bench, radii, xis, printed)
    base = check_id or f"oracle.{bench.label}" + (".printed" if printed else "")
    config = dict(bench.echo(), origin=origin, layer="printed" if printed else "green",
                  grid=[oracle.grid.r_min, oracle.grid.r_max, oracle.grid.n],
                  radii=[float(radii[0]), float(radii[-1]), int(radii.size)],
                  pairs=dict(diagonal=int(radii.size) ** 2, off_diagonal=int(radii.size) * (int(radii.size) - 1)))
    note = bench.accuracy_note()
    return [
        VerificationReport(f"{base}.{name}", config, _max_relative(got[name], ref[name]), tol.oracle, note, informational)
        for name in ref
    ]


def wronskian_report(bench: Benchmark, oracle: OracleGreen, tol: Tolerances = Tolerances()) -> VerificationReport:
    config = dict(bench.echo(), grid=[oracle.grid.r_min, oracle.grid.r_max, oracle.grid.n])
    return VerificationReport(f"oracle.{bench.label}.wronskian", config, oracle.wronskian_spread, tol.wronskian_spread)


def oracle_exchange(bench: Benchmark, oracle: OracleGreen, tol: Tolerances = Tolerances()) -> VerificationReport:
    radii = oracle_radii(oracle, tol.oracle_radii)
    worst, scale = 0.0, 0.0
    for r in radii:
        for rp in radii[radii != r]:
            a = np.array(oracle.matrix(r, rp, tol.xi_default).as_tuple())
            b = np.array(oracle.matrix(rp, r, tol.xi_default).transpose().as_tuple())
            worst = max(worst, float(np.max(np.abs(a - b))))
            scale = max(scale, float(np.max(np.abs(a))))
    config = dict(bench.echo(), xi=tol.xi_default, pairs=int(radii.size) * (int(radii.size) - 1))
    return VerificationReport(f"exchange.oracle.{bench.label}", config, worst / scale, tol.exchange_oracle)


def xi_operator_report(bench: Benchmark, xi: float, tol: Tolerances = Tolerances()) -> VerificationReport:
    """First-order operators applied to the closed diagonals reproduce the closed off-diagonal."""
    problem = bench.problem()
    gpp = lambda r, rp: float(bench.diag("plus", r, rp))  # noqa: E731
    gmm = lambda r, rp: float(bench.diag("minus", r, rp))  # noqa: E731
    pairs = [(0.5, 1.0), (1.0, 0.5), (0.8, 2.0), (2.0, 0.8), (1.2, 1.6)]
    num = np.array([xi_offdiagonal_numeric(gpp, gmm, problem, xi, r, rp) for r, rp in pairs])
    closed = np.array([bench.offdiag(xi, r, rp)[1] for r, rp in pairs])
    config = dict(bench.echo(), xi=xi, pairs=pairs)
    return VerificationReport(f"xi_operator.{bench.label}[xi={xi:g}]", config, _max_relative(closed, num), tol.xi_operator)


def xi_dependence_report(bench: Benchmark, oracle: OracleGreen, tol: Tolerances = Tolerances()) -> VerificationReport:
    """Spread between the two frames' off-diagonal elements (zero means xi-independent)."""
    radii = oracle_radii(oracle, tol.oracle_radii)
    el = _oracle_elements(oracle, radii, (0.0, 1.0))
    measured = _max_relative(el["offdiag[xi=0]"], el["offdiag[xi=1]"])
    return VerificationReport(
        f"xi_dependence.{bench.label}", bench.echo(), measured, tol.oracle,
        "oracle off-diagonal at xi=0 vs xi=1", informational=True,
    )


def adjudication(tol: Tolerances = Tolerances()) -> list[VerificationReport]:
    """Which origin exponent do the kappa < 0 closed forms encode?"""
    cases = [oscillator_benchmark(k) for k in (-1, -2)]
    cases += [coulomb_benchmark(k, signed_gamma=s) for k in (-1, -2) for s in (False, True)]
    reports = []
    for bench in cases:
        for origin in ("large", "small"):
            cid = f"adjudication.{bench.label}.{origin}"
            try:
                oracle = OracleGreen(bench.problem(), origin=origin)
                parts = compare_to_oracle(bench, origin, tol, oracle=oracle)
                measured = max(p.measured for p in parts)
                note = "matches" if measured <= tol.oracle else "does not match"
            except DegenerateError:
                measured = math.nan
                note = "regular and irregular solutions are proportional: epsilon is a bound state for this origin exponent"
            except (OracleError, ConfigurationError) as exc:
                measured, note = math.nan, f"oracle not constructible: {exc}"
            reports.append(VerificationReport(cid, dict(bench.echo(), origin=origin), measured, tol.oracle,
                                              note, informational=True))
    return reports


# ---------------------------------------------------------------- suites


def suite_identities(tol: Tolerances = Tolerances(), samples: int | None = None,
                     seed: int | None = None) -> list[VerificationReport]:
    return identity_suite(samples or tol.identity_samples, tol.identity_seed if seed is None else seed, tol)


def identity_suite(sample_count: int, seed: int, tol: Tolerances = Tolerances()) -> list[VerificationReport]:
    """All eight ladder identities over a scrambled Halton sample of the safe box.

    The Whittaker argument X is sampled log-uniformly in [1e-3, 50]; the
    identities written in terms of x^2 receive x = sqrt(X).
    """
    start = time.perf_counter()
    u = qmc.Halton(d=3, seed=seed).random(sample_count)
    a = -10.0 + 20.0 * u[:, 0]
    b = 0.2 + 9.8 * u[:, 1]
    X = np.exp(math.log(1e-3) + (math.log(50.0) - math.log(1e-3)) * u[:, 2])
    reports = []
    for ident in sf.IDENTITIES:
        worst, skipped = 0.0, 0
        for i in range(sample_count):
            x = math.sqrt(X[i]) if ident[:2] in ("A1", "A2") else X[i]
            try:
                worst = max(worst, sf.ladder_residual(ident, a[i], b[i], x))
            except (sf.DomainError, sf.PoleError):
                skipped += 1
        config = dict(identity=ident, samples=sample_count, seed=seed,
                      box=dict(a=[-10.0, 10.0], b=[0.2, 10.0], x=[1e-3, 50.0]))
        reports.append(VerificationReport(f"identity.{ident}", config, worst, tol.identity, f"skipped {skipped}"))
    elapsed = time.perf_counter() - start
    reports.append(VerificationReport(
        "identity.runtime", dict(samples=sample_count, seed=seed), elapsed, tol.identity_runtime, "seconds"
    ))
    return reports


def suite_ode(tol: Tolerances = Tolerances(), benches: list[Benchmark] | None = None) -> list[VerificationReport]:
    reports = []
    for bench in benches or benchmark_set():
        problem = bench.problem()
        for component in COMPONENTS:
            ev = lambda r, c=component: bench.diag(c, r, 1.0)  # noqa: E731
            reports += residual_ode(ev, problem, component, 1.0, tol, f"ode.{bench.label}.{component}",
                                    bench.echo(), notes=bench.accuracy_note())
    return reports


def suite_jump(tol: Tolerances = Tolerances(), benches: list[Benchmark] | None = None) -> list[VerificationReport]:
    """Jumps of the Green's-matrix diagonals against +(C +- eps).

    The plus element carries the expected jump.  The minus element of the
    Green's matrix jumps by -(C - eps); that sign-flipped value is reported
    alongside as informational.
    """
    reports = []
    for bench in benches or benchmark_set():
        for component in COMPONENTS:
            expected = bench.printed_jump(component)
            for rp in tol.jump_points:
                ev = lambda r, c=component, q=rp: bench.diag(c, r, q)  # noqa: E731
                cid = f"jump.{bench.label}.{component}[r'={rp:g}]"
                reports.append(jump_condition(ev, expected, rp, tol, cid, bench.echo(), bench.accuracy_note()))
                if component == "minus":
                    reports.append(jump_condition(ev, -expected, rp, tol, cid + ".sign_flipped", bench.echo(),
                                                  informational=True))
    return reports


def suite_oracle(tol: Tolerances = Tolerances()) -> list[VerificationReport]:
    reports = []
    for bench in [oscillator_benchmark(k) for k in (1, 2)] + [coulomb_benchmark(k) for k in (1, 2)]:
        oracle = OracleGreen(bench.problem())
        reports += compare_to_oracle(bench, tol=tol, oracle=oracle)
        reports.append(wronskian_report(bench, oracle, tol))
        for xi in tol.xi_values:
            reports.append(xi_operator_report(bench, xi, tol))
        reports += compare_to_oracle(bench, tol=tol, printed=True, informational=True, oracle=oracle)
        reports.append(xi_dependence_report(bench, oracle, tol))
    return reports + adjudication(tol)


def _fit_exponent(lambdas, values) -> float:
    return float(np.polyfit(np.log(lambdas), np.log(values), 1)[0])


def suite_spectrum(tol: Tolerances = Tolerances()) -> list[VerificationReport]:
    reports = []
    n_max = 5
    lam, Z = FINE_STRUCTURE, COUL_Z
    kin = Kinematics(lam, 0.5, 1)
    roots = cl.coulomb_bound_energies(kin, Z, n_max)
    exact = cl.sommerfeld_levels(kin, Z, n_max)
    config = dict(kind="coulomb", lambda_bar=lam, Z=Z, kappa=1, n_max=n_max)
    reports.append(VerificationReport("spectrum.coulomb.sommerfeld", config,
                                      float(np.max(np.abs(np.subtract(roots, exact)))), tol.levels))

    lambdas = np.array([0.04, 0.02, 0.01, 0.005])
    dev = []
    for lb in lambdas:
        eps = cl.coulomb_bound_energies(Kinematics(lb, 0.5, 1), Z, n_max)
        bohr = [1.0 - (lb * Z) ** 2 / (2.0 * (n + 2) ** 2) for n in range(n_max + 1)]
        dev.append(float(np.max(np.abs(np.subtract(eps, bohr)))))
    order = _fit_exponent(lambdas, dev)
    reports.append(VerificationReport(
        "spectrum.coulomb.bohr_order", dict(config, lambdas=list(lambdas)), abs(order - tol.bohr_order),
        tol.order_window, f"fitted order {order:.3f}",
    ))

    kin = Kinematics(OSC_LAMBDA, 1.0, 1)
    roots = osc.oscillator_bound_energies(kin, OSC_OMEGA, n_max)
    exact = osc.oscillator_levels_algebraic(kin, OSC_OMEGA, n_max)
    config = dict(kind="oscillator", lambda_bar=OSC_LAMBDA, omega=OSC_OMEGA, kappa=1, n_max=n_max)
    reports.append(VerificationReport("spectrum.oscillator.kappa+1", config,
                                      float(np.max(np.abs(np.subtract(roots, exact)))), tol.levels))
    ground = osc.oscillator_bound_energies(Kinematics(OSC_LAMBDA, 1.0, -1), OSC_OMEGA, 0)[0]
    reports.append(VerificationReport("spectrum.oscillator.kappa-1.ground", dict(config, kappa=-1, n_max=0),
                                      abs(ground - 1.0), 0.0, f"epsilon_0 = {ground!r}"))
    return reports


def _limit_pairs() -> tuple[np.ndarray, np.ndarray]:
    pts = np.array([0.5, 1.0, 1.5, 2.0, 2.5])
    R, RP = np.meshgrid(pts, pts, indexing="ij")
    return R.ravel(), RP.ravel()


def nonrel_limit_scan(kind: str, kappa: int, E: float, tol: Tolerances = Tolerances()) -> list[VerificationReport]:
    """Scaling of the matrix elements as lambda -> 0 with eps = 1 + lambda^2 E.

    G++ is compared with -g_l because the Green's-matrix diagonal is the
    negative of the mapped resolvent for the upper component.
    """
    lambdas = np.array(tol.limit_lambdas)
    R, RP = _limit_pairs()
    d_pp, n_mm, n_pm, mm_ratio, mm_prop, gam = [], [], [], [], [], []
    l_up = kappa if kappa > 0 else -kappa - 1
    for lb in lambdas:
        eps = 1.0 + lb * lb * E
        if kind == "oscillator":
            bench = oscillator_benchmark(kappa, lambda_bar=lb, epsilon=eps)
            g_l = osc.g_nonrel_oscillator(l_up, OSC_OMEGA, E - OSC_OMEGA**2 * (kappa - 0.5), R, RP)
        else:
            bench = coulomb_benchmark(kappa, lambda_bar=lb, epsilon=eps)
            g_l = cl.g_nonrel_coulomb(l_up, COUL_Z, E, R, RP)
            g_low = cl.g_nonrel_coulomb(l_up - 1, COUL_Z, E, R, RP)
            gmm = bench.diag("minus", R, RP)
            mm_ratio.append(_max_relative(gmm / lb**2, g_low))
            shift = -(E + COUL_Z**2 / (2.0 * kappa**2)) / 2.0
            mm_prop.append(_max_relative(gmm / lb**2, shift * g_low))
            gam.append(abs(bench.model.gamma - (kappa - lb * lb * COUL_Z**2 / (2.0 * kappa))))
        d_pp.append(float(np.max(np.abs(bench.diag("plus", R, RP) + g_l))))
        n_mm.append(float(np.max(np.abs(bench.diag("minus", R, RP)))))
        gpm, gmp = bench.offdiag(tol.xi_default, R, RP)
        n_pm.append(float(max(np.max(np.abs(gpm)), np.max(np.abs(gmp)))))
    config = dict(kind=kind, kappa=kappa, E=E, lambdas=list(lambdas), xi=tol.xi_default)
    base = f"limits.{kind}[kappa={kappa:+d}]"
    reports = []
    for name, values, expected in (("gpp-g", d_pp, 2.0), ("gmm", n_mm, 2.0), ("offdiag", n_pm, 1.0)):
        p = _fit_exponent(lambdas, values)
        reports.append(VerificationReport(f"{base}.{name}", dict(config, expected=expected), abs(p - expected),
                                          tol.exponent_window, f"fitted exponent {p:.3f}"))
    if kind == "coulomb":
        p = _fit_exponent(lambdas, gam)
        reports.append(VerificationReport(f"{base}.gamma_expansion", dict(config, expected=4.0), abs(p - 4.0),
                                          tol.exponent_window, f"fitted exponent {p:.3f}"))
        reports.append(VerificationReport(
            f"{base}.gmm_over_lambda2", config, mm_ratio[-1], tol.limit_ratio,
            f"relative distance of G--/lambda^2 from g_(l-1) at lambda={lambdas[-1]:g}; sequence "
            + ", ".join(f"{v:.3g}" for v in mm_ratio),
        ))
        reports.append(VerificationReport(
            f"{base}.gmm_over_lambda2_proportional", config, mm_prop[-1], tol.limit_ratio,
            "distance from -(E + Z^2/2kappa^2)/2 g_(l-1)", informational=True,
        ))
    return reports


LIMIT_ENERGIES = {"oscillator": 0.5, "coulomb": -0.3}


def suite_limits(tol: Tolerances = Tolerances()) -> list[VerificationReport]:
    reports = []
    for kind, E in LIMIT_ENERGIES.items():
        reports += nonrel_limit_scan(kind, 1, E, tol)
    return reports


SPECTRAL_PAIRS = ((0.2, 0.6), (0.3, 0.9), (0.4, 1.5), (0.5, 1.0), (0.7, 1.3),
                  (0.8, 2.4), (1.0, 2.0), (1.2, 3.0), (1.5, 2.5), (2.0, 3.5))


def suite_kernels(tol: Tolerances = Tolerances()) -> list[VerificationReport]:
    """Nonrelativistic kernels against filtered eigenfunction sums."""
    n = spectral.DEFAULT_TERMS
    osc_cfg = dict(l=0, omega=1.0, E=-0.5, terms=n, pairs=SPECTRAL_PAIRS)
    coul_cfg = dict(l=0, Z=-1.0, E=-0.8, terms=n, pairs=SPECTRAL_PAIRS)
    so = np.array([spectral.oscillator_spectral(0, 1.0, -0.5, r, rp, n) for r, rp in SPECTRAL_PAIRS])
    sc = np.array([spectral.coulomb_spectral(0, -1.0, -0.8, r, rp, n) for r, rp in SPECTRAL_PAIRS])
    go = np.array([osc.g_nonrel_oscillator(0, 1.0, -0.5, r, rp) for r, rp in SPECTRAL_PAIRS])
    gc = np.array([cl.g_nonrel_coulomb(0, -1.0, -0.8, r, rp) for r, rp in SPECTRAL_PAIRS])
    gp = np.array([cl.printed_nonrel_coulomb(0, -1.0, -0.8, r, rp) for r, rp in SPECTRAL_PAIRS])
    rel = lambda a, b: float(np.max(np.abs(a / b - 1.0)))  # noqa: E731
    return [
        VerificationReport("kernels.oscillator", osc_cfg, rel(go, so), tol.spectral),
        VerificationReport("kernels.coulomb", coul_cfg, rel(gc, sc), tol.spectral, "1/k normalization"),
        VerificationReport("kernels.coulomb.printed", coul_cfg, rel(gp, sc), tol.spectral,
                           "1/(2k) normalization as printed"),
    ]


def suite_exchange(tol: Tolerances = Tolerances()) -> list[VerificationReport]:
    reports = []
    pts = [0.3, 0.7, 1.0, 1.9, 3.1]
    benches = benchmark_set() + [coulomb_benchmark(k, signed_gamma=True) for k in (-1, -2)]
    for bench in benches:
        mismatches = 0
        for r in pts:
            for rp in pts:
                for xi in tol.xi_values:
                    a = bench.matrix(r, rp, xi)
                    b = bench.matrix(rp, r, xi).transpose()
                    mismatches += a != b
        config = dict(bench.echo(), radii=pts, xi=list(tol.xi_values))
        reports.append(VerificationReport(f"exchange.closed.{bench.label}", config, float(mismatches), 0.0,
                                          "count of pairs that are not bit-identical"))
    for bench in [oscillator_benchmark(1), coulomb_benchmark(1), coulomb_benchmark(-1, signed_gamma=True)]:
        reports.append(oracle_exchange(bench, OracleGreen(bench.problem()), tol))
    return reports


def _control_probe(tol: Tolerances) -> list[VerificationReport]:
    reports = []
    for bench in (oscillator_benchmark(1), coulomb_benchmark(1)):
        ev = lambda r, b=bench: b.diag("plus", r, 1.0)  # noqa: E731
        reports += residual_ode(ev, bench.problem(), "plus", 1.0, tol, f"ode.{bench.label}.plus", bench.echo())
        reports.append(jump_condition(ev, bench.printed_jump("plus"), 1.0, tol, f"jump.{bench.label}.plus",
                                      bench.echo()))
        reports += compare_to_oracle(bench, tol=tol)
    return reports


def suite_controls(tol: Tolerances = Tolerances()) -> list[VerificationReport]:
    """Each engineered corruption must make the residual, jump or oracle checks fail."""
    pristine = _control_probe(tol)
    clean = all_passed(pristine)
    reports = []
    for kind in CORRUPTIONS:
        with corrupted(kind):
            probe = _control_probe(tol)
        failed = sorted(r.check_id for r in probe if not r.passed)
        detected = bool(failed) and clean
        notes = f"pristine probe passes: {clean}; failing under corruption: {len(failed)}"
        if failed:
            notes += f" (e.g. {failed[0]})"
        reports.append(VerificationReport(f"control.{kind}", dict(corruption=kind, probes=len(probe)),
                                          0.0 if detected else 1.0, 0.0, notes))
    return reports


SUITES: dict[str, Callable[[Tolerances], list[VerificationReport]]] = {
    "identities": suite_identities,
    "ode": suite_ode,
    "jump": suite_jump,
    "oracle": suite_oracle,
    "spectrum": suite_spectrum,
    "limits": suite_limits,
    "kernels": suite_kernels,
    "exchange": suite_exchange,
    "controls": suite_controls,
}


def run_suites(names: Iterable[str], tol: Tolerances = Tolerances()) -> list[VerificationReport]:
    names = list(names)
    if "all" in names:
        names = list(SUITES)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ConfigurationError(f"unknown suite(s) {unknown}; choose from {sorted(SUITES)} or 'all'")
    reports = []
    for name in names:
        reports += SUITES[name](tol)
    return reports


def tolerances_with(**overrides) -> Tolerances:
    return replace(Tolerances(), **overrides)
