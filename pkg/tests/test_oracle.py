import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from diracgreen import coulomb as cl
from diracgreen import oracle as orc
from diracgreen.model import FINE_STRUCTURE, ConfigurationError, Kinematics
from diracgreen.verify import coulomb_benchmark, oscillator_benchmark

OSC = oscillator_benchmark(1)
COUL = coulomb_benchmark(1)


@pytest.fixture(scope="module")
def coulomb_oracle():
    return orc.OracleGreen(COUL.problem())


def q_of(coef, r):
    return coef["A"] / r**2 + coef["B"] / r + coef["C0"] + coef["E1"] * r + coef["D"] * r**2


@given(st.sampled_from([OSC, COUL, coulomb_benchmark(-2), oscillator_benchmark(-1)]),
       st.sampled_from(["plus", "minus"]), st.floats(0.05, 8.0))
def test_q_coefficients_reproduce_effective_potential(bench, component, r):
    p = bench.problem()
    want = float(orc.effective_potential(p, component, r)) - p.k_squared
    got = q_of(p.q_coefficients(component), r)
    assert got == pytest.approx(want, rel=1e-12, abs=1e-9)


@pytest.mark.parametrize("bench", [OSC, COUL, coulomb_benchmark(-1)])
def test_frobenius_series_solves_radial_equation(bench):
    p = bench.problem()
    coef = p.q_coefficients("plus")
    large, small = p.origin_exponents("plus")
    assert large * (large - 1.0) == pytest.approx(coef["A"])
    assert small * (small - 1.0) == pytest.approx(coef["A"], abs=1e-12)
    r = np.array([0.05, 0.1, 0.2])
    h = 1e-5
    _, d_hi = orc.frobenius(coef, large, r + h)
    _, d_lo = orc.frobenius(coef, large, r - h)
    phi, _ = orc.frobenius(coef, large, r)
    np.testing.assert_allclose((d_hi - d_lo) / (2 * h), q_of(coef, r) * phi, rtol=1e-7)


@pytest.mark.parametrize("bench", [OSC, COUL])
def test_asymptotic_start_solves_radial_equation(bench):
    p = bench.problem()
    coef = p.q_coefficients("plus")
    r0 = 0.9 * p.default_r_max()
    h = 1e-3
    t = r0 + h * np.array([-1.0, 0.0, 1.0])
    log_amp, val = orc.asymptotic(coef, t)
    phi = np.exp(log_amp - log_amp[1]) * val
    second = (phi[0] - 2 * phi[1] + phi[2]) / h**2
    assert second == pytest.approx(q_of(coef, r0) * phi[1], rel=1e-5)


def test_numerov_reproduces_exponential():
    h = 1e-2
    y, ls = orc._numerov(np.ones(500), h, 1.0, math.exp(h))
    exact = np.exp(h * np.arange(500))
    np.testing.assert_allclose(y * np.exp(ls), exact, rtol=1e-8)


def test_grid_and_problem_validation():
    with pytest.raises(ConfigurationError):
        orc.RadialGrid(1.0, 0.5)
    with pytest.raises(ConfigurationError):
        orc.ProblemSpec("square", OSC.kin)
    with pytest.raises(ConfigurationError):
        orc.ProblemSpec("oscillator", OSC.kin)


def test_companion_degenerate_at_negative_rest_mass():
    p = orc.ProblemSpec("oscillator", Kinematics(0.1, -1.0, 1), omega=1.0)
    r = np.array([0.5, 1.0])
    with pytest.raises(orc.DegenerateError):
        orc._companion(p, "plus", r, r, r)


def test_companion_conditioning():
    out = orc.companion_conditioning(COUL.problem())
    C, eps = COUL.C, COUL.kin.epsilon
    assert out["plus"] == pytest.approx(FINE_STRUCTURE / abs(C + eps))
    assert out["minus"] == pytest.approx(FINE_STRUCTURE / abs(C - eps))


def test_wronskian_is_constant(coulomb_oracle):
    assert coulomb_oracle.wronskian_spread < 1e-8


def test_oracle_exchange_on_grid(coulomb_oracle):
    g = coulomb_oracle.grid.r
    for i, j in ((300, 2500), (2900, 1000), (1500, 1501)):
        for xi in (0.0, 1.0, 0.25):
            a = coulomb_oracle.matrix(g[i], g[j], xi).transpose().as_tuple()
            b = coulomb_oracle.matrix(g[j], g[i], xi).as_tuple()
            np.testing.assert_allclose(a, b, rtol=1e-10, atol=0)


def test_oracle_converges_at_fourth_order():
    p = COUL.problem()
    r, rp = 0.5, 2.0
    exact = np.array(cl.green_matrix_coul(COUL.model, r, rp).as_tuple())
    errs = []
    for n in (501, 1001):
        grid = orc.RadialGrid(orc.DEFAULT_R_MIN, p.default_r_max(), n)
        got = np.array(orc.OracleGreen(p, grid).matrix(r, rp).as_tuple())
        errs.append(np.max(np.abs(got - exact) / np.abs(exact)))
    assert errs[1] < errs[0]
    assert math.log2(errs[0] / errs[1]) > 3.0


@pytest.mark.parametrize("xi", [0.0, 1.0])
def test_operator_route_reproduces_offdiagonal(xi):
    m = COUL.model
    p = COUL.problem()
    gpp = lambda a, b: float(cl.g_diag_coul(m, "plus", a, b))  # noqa: E731
    gmm = lambda a, b: float(cl.g_diag_coul(m, "minus", a, b))  # noqa: E731
    got = orc.xi_offdiagonal_numeric(gpp, gmm, p, xi, 0.6, 1.7)
    want = cl.g_offdiag_coul(m, xi, 0.6, 1.7)[1]
    assert got == pytest.approx(want, rel=1e-6)


def test_operator_route_rejects_diagonal_stencil():
    gpp = lambda a, b: 0.0  # noqa: E731
    with pytest.raises(orc.DiagonalError):
        orc.xi_offdiagonal_numeric(gpp, gpp, COUL.problem(), 1.0, 1.0, 1.0)


def test_small_origin_exponent_matches_unsigned_closed_form():
    bench = coulomb_benchmark(-1)
    oracle = orc.OracleGreen(bench.problem(), origin="small")
    g = oracle.grid.r
    i, j = np.searchsorted(g, [0.4, 2.0])
    got = oracle.matrix(g[i], g[j]).gpp
    want = float(bench.diag("plus", g[i], g[j]))
    assert got == pytest.approx(want, rel=1e-6)
