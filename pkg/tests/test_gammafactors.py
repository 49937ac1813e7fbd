import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from lowlying.gammafactors import (
    EULER_GAMMA,
    conductor_log,
    digamma,
    gamma_factor_list,
    gamma_factor_log_derivative,
    gamma_R_log_derivative,
    gamma_term_A,
    mu_params,
    root_number,
    weil_rep,
)
from lowlying.maass import FIRST_EVEN_T
from lowlying.satake import FamilyTag
from lowlying.testfns import fejer_pair, zero_pair


def test_digamma_special_values():
    assert digamma(1.0) == pytest.approx(-EULER_GAMMA, abs=1e-15)
    assert digamma(0.5) == pytest.approx(-EULER_GAMMA - 2 * math.log(2), abs=1e-14)
    with pytest.raises(ValueError):
        digamma(-2.0)


@settings(max_examples=100, deadline=None)
@given(st.floats(min_value=-20, max_value=200).filter(lambda x: abs(x - round(x)) > 1e-3 or x > 1e-200))
def test_digamma_matches_scipy_real(x):
    assert digamma(x) == pytest.approx(special.digamma(x), rel=1e-12, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(st.floats(min_value=-5, max_value=100), st.floats(min_value=-300, max_value=300))
def test_digamma_matches_scipy_complex(x, y):
    z = complex(x, y)
    if abs(y) < 1e-3 and x <= 0:
        return
    assert digamma(z) == pytest.approx(special.digamma(z), rel=1e-12, abs=1e-12)


def test_digamma_vectorized():
    z = np.array([1.0, 2.0, 10.5])
    assert np.allclose(digamma(z), special.digamma(z), rtol=1e-14)


def test_gamma_R_log_derivative_at_one():
    # Gamma_R'/Gamma_R(1) = -log(pi)/2 + psi(1/2)/2
    expected = -0.5 * math.log(math.pi) + 0.5 * special.digamma(0.5)
    assert gamma_R_log_derivative(1.0).real == pytest.approx(expected, abs=1e-14)


def test_mu_parameters():
    mu = mu_params(FamilyTag.PHI_X_SYM2F, 12, 2.0).mu
    assert sorted(m.real for m in mu) == [1, 1, 11, 11, 12, 12]
    assert sorted(m.imag for m in mu) == [-2, -2, -2, 2, 2, 2]
    mu = mu_params("PHI_X_F", 12, 0.0).mu
    assert sorted(m.real for m in mu) == [5.5, 5.5, 6.5, 6.5]
    with pytest.raises(ValueError):
        mu_params("PHI_X_F", 13, 0.0)
    with pytest.raises(ValueError):
        mu_params("F", 12, 0.0)


def test_conductor():
    assert conductor_log("PHI_X_SYM2F", 12) == pytest.approx(4 * math.log(12))


def test_gamma_term_two_routes_agree():
    F = fejer_pair(0.5)
    params = mu_params(FamilyTag.PHI_X_SYM2F, 50, FIRST_EVEN_T)
    R = 50.0**4
    a = gamma_term_A(params, F, R, method="fourier")
    b = gamma_term_A(params, F, R, method="direct")
    assert a == pytest.approx(b, abs=2e-5)


def test_gamma_term_zero_function():
    params = mu_params(FamilyTag.PHI_X_F, 12, FIRST_EVEN_T)
    assert gamma_term_A(params, zero_pair(0.5), 12.0**4) == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("sigma", [0.125, 0.5])
def test_gamma_term_approaches_ghat0(sigma):
    F = fejer_pair(sigma)
    for k in (12, 50, 200, 800):
        g = gamma_term_A(mu_params(FamilyTag.PHI_X_SYM2F, k, FIRST_EVEN_T), F, float(k) ** 4)
        assert abs(g / F.ghat0 - 1) <= 1.5 / math.log(k)


def test_gamma_term_frozen_value():
    # frozen after agreement of the two quadrature routes
    g = gamma_term_A(mu_params(FamilyTag.PHI_X_SYM2F, 12, FIRST_EVEN_T), fejer_pair(0.5), 12.0**4)
    assert g == pytest.approx(0.5761744864285732, abs=1e-9)


def test_gamma_term_rejects_unknown_method():
    with pytest.raises(ValueError):
        gamma_term_A(mu_params("PHI_X_F", 12, 1.0), fejer_pair(0.5), 1e4, method="bogus")


def test_weil_rep_and_gamma_factors():
    rep = weil_rep(FamilyTag.PHI_X_SYM2F, 12, 1.5)
    assert rep.is_self_dual()
    shifts = sorted(g.shift for g in gamma_factor_list(rep))
    assert shifts == [1, 1, 11, 11, 12, 12]
    assert [g.shift for g in gamma_factor_list(weil_rep("PHI_X_F", 12))] == [5.5, 5.5, 6.5, 6.5]


def test_gamma_factor_log_derivative_matches_mu():
    rep = weil_rep(FamilyTag.PHI_X_SYM2F, 16, 2.0)
    mus = mu_params(FamilyTag.PHI_X_SYM2F, 16, 2.0).mu
    s = 0.5 + 0.3j
    direct = sum(gamma_R_log_derivative(s + m) for m in mus)
    assert gamma_factor_log_derivative(gamma_factor_list(rep), s, 2.0) == pytest.approx(complex(direct))


@pytest.mark.parametrize("family", [FamilyTag.PHI_X_F, FamilyTag.PHI_X_SYM2F])
def test_root_numbers(family):
    assert {root_number(family, k) for k in range(12, 401, 2)} == {1}


def test_root_number_rejects_odd_weight():
    with pytest.raises(ValueError):
        root_number(FamilyTag.PHI_X_F, 13)
