import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from diracgreen import oscillator as osc
from diracgreen import spectral
from diracgreen.model import ConfigurationError, Kinematics, XiDegenerateError
from diracgreen.oracle import OracleGreen, ProblemSpec
from diracgreen.specfun import PoleError
from diracgreen.verify import jump_measure

LAM, OMEGA, EPS = 0.1, 1.0, math.sqrt(1.02)
radius = st.floats(0.05, 4.0)


def model(kappa=1, eps=EPS, lam=LAM, omega=OMEGA):
    return osc.OscillatorModel(Kinematics(lam, eps, kappa), omega)


def test_nonrel_kernel_matches_eigenfunction_sum():
    got = osc.g_nonrel_oscillator(1.0, 1.2, 0.4, 0.5, 1.1)
    ref = spectral.oscillator_spectral(1.0, 1.2, 0.4, 0.5, 1.1)
    assert abs(got / ref - 1.0) < 1e-6


def test_nonrel_kernel_jump_is_minus_two():
    assert abs(jump_measure(lambda r: osc.g_nonrel_oscillator(2.0, 1.0, 0.5, r, 0.8), 0.8) + 2.0) < 1e-5


@given(radius, radius)
def test_nonrel_kernel_symmetric(r, rp):
    assert osc.g_nonrel_oscillator(1.0, 1.0, 0.3, r, rp) == osc.g_nonrel_oscillator(1.0, 1.0, 0.3, rp, r)


def test_nonrel_kernel_at_level_raises():
    with pytest.raises(PoleError, match="n=1"):
        osc.g_nonrel_oscillator(0.0, 1.0, 3.5, 0.4, 0.9)


def test_invalid_configuration():
    with pytest.raises(ConfigurationError):
        model(omega=0.0)
    with pytest.raises(ConfigurationError):
        model(kappa=0)
    with pytest.raises(ConfigurationError):
        model(lam=-0.1)


@pytest.mark.parametrize("kappa", [1, -1, 2, -2])
def test_model_at_pole_names_quantum_number(kappa):
    eps = osc.oscillator_levels_algebraic(Kinematics(LAM, 1.0, kappa), OMEGA, 3)[2]
    with pytest.raises(PoleError, match="n=2"):
        model(kappa, eps)


@pytest.mark.parametrize("kappa", [1, -1, 2, -2])
def test_dirac_layer_flips_printed_upper_element(kappa):
    m = model(kappa)
    r = np.array([0.3, 0.9, 2.0])
    np.testing.assert_array_equal(osc.g_diag_osc(m, "plus", r, 1.1), -osc.printed_diag_osc(m, "plus", r, 1.1))
    np.testing.assert_array_equal(osc.g_diag_osc(m, "minus", r, 1.1), osc.printed_diag_osc(m, "minus", r, 1.1))


@given(st.sampled_from([1, -1, 2, -2]), radius, radius, st.sampled_from([0.0, 1.0, 0.3]))
def test_exchange_transposes_matrix(kappa, r, rp, xi):
    m = model(kappa)
    assert osc.green_matrix_osc(m, r, rp, xi).transpose() == osc.green_matrix_osc(m, rp, r, xi)


@given(radius, radius)
def test_offdiagonal_independent_of_frame_weight(r, rp):
    m = model(2)
    assert osc.g_offdiag_osc(m, 0.0, r, rp) == osc.g_offdiag_osc(m, 1.0, r, rp)


def test_printed_offdiagonal_degenerate_weight():
    with pytest.raises(XiDegenerateError):
        osc.printed_offdiag_osc(model(), 0.5, 0.4, 0.9)


@pytest.mark.parametrize("kappa", [1, -1, 2, -2])
def test_pole_scan_matches_algebraic_ladder(kappa):
    kin = Kinematics(LAM, 1.0, kappa)
    found = osc.oscillator_bound_energies(kin, OMEGA, 6)
    np.testing.assert_allclose(found, osc.oscillator_levels_algebraic(kin, OMEGA, 6), rtol=0, atol=1e-10)
    assert all(osc.oscillator_pole_residual(kin, OMEGA, e) < 1e-9 for e in found)  # slope of 1/Gamma grows like n!


def test_negative_kappa_ground_state_is_rest_mass():
    assert osc.oscillator_bound_energies(Kinematics(LAM, 1.0, -1), OMEGA, 0) == [1.0]


def test_closed_form_matches_oracle_kappa_one():
    m = model(1)
    oracle = OracleGreen(ProblemSpec("oscillator", m.kin, omega=OMEGA))
    g = oracle.grid.r
    for r, rp in ((g[3000], g[6000]), (g[7000], g[5000])):
        a = np.array(osc.green_matrix_osc(m, r, rp).as_tuple())
        b = np.array(oracle.matrix(r, rp).as_tuple())
        assert np.max(np.abs(a - b)) <= 1e-5 * np.max(np.abs(a))
