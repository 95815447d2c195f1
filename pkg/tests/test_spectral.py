import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.special import eval_genlaguerre, gammaln

from diracgreen import coulomb as cl
from diracgreen import oscillator as osc
from diracgreen import spectral
from diracgreen.model import ConfigurationError


@given(st.floats(-0.5, 6.0), st.floats(0.01, 30.0))
def test_normalized_laguerre_matches_scipy(alpha, x):
    got = spectral.laguerre_normalized(25, alpha, x)
    n = np.arange(25)
    norm = np.exp(0.5 * (gammaln(n + 1) - gammaln(n + alpha + 1)))
    ref = eval_genlaguerre(n, alpha, x) * norm
    np.testing.assert_allclose(got, ref, rtol=1e-9, atol=1e-12 * np.max(np.abs(ref)))


def test_flat_top_shape():
    w = spectral.flat_top(1000)
    s = np.sqrt(np.arange(1000) / 1000)
    assert np.all(w[s <= spectral.FILTER_START] == 1.0)
    assert w[-1] < 1e-10
    assert np.all(np.diff(w) <= 0.0)


def test_sturmian_sum_needs_bound_energy():
    with pytest.raises(ConfigurationError):
        spectral.coulomb_terms(0.0, -1.0, 0.1, 0.5, 1.0, 10)
    with pytest.raises(ConfigurationError):
        spectral.laguerre_normalized(0, 0.5, 1.0)


@pytest.mark.parametrize("l", [0.0, 1.0, 2.0])
def test_oscillator_sum_matches_closed_form(l):
    ref = osc.g_nonrel_oscillator(l, 1.0, 0.5, 0.6, 1.4)
    assert spectral.oscillator_spectral(l, 1.0, 0.5, 0.6, 1.4) == pytest.approx(ref, rel=1e-6)


@pytest.mark.parametrize("l", [0.0, 1.0, 2.0])
def test_coulomb_sum_matches_closed_form(l):
    ref = cl.g_nonrel_coulomb(l, -1.0, -0.7, 0.3, 1.2)
    assert spectral.coulomb_spectral(l, -1.0, -0.7, 0.3, 1.2) == pytest.approx(ref, rel=1e-6)


def test_filtered_sum_converges_with_terms():
    ref = cl.g_nonrel_coulomb(0.0, -1.0, -0.7, 0.4, 1.0)
    errs = [abs(spectral.coulomb_spectral(0.0, -1.0, -0.7, 0.4, 1.0, n) / ref - 1.0) for n in (400, 3200)]
    assert errs[1] < errs[0]
    assert math.isfinite(errs[1])
