import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lowlying.satake import (
    FamilyTag,
    MissingDataError,
    a_coeff_closed,
    a_coeff_powersum,
    alpha_from_lambda,
    b_coeff,
    beta_from_lambda,
    chebyshev_table,
    complete_homogeneous,
    dirichlet_coeff_phi_sym2,
    local_params,
    log_derivative_coeffs,
    second_moment_diagnostic,
    sym2_coeff,
    two_route_defect,
)

angles = st.floats(min_value=0.0, max_value=math.pi)
lphi_values = st.floats(min_value=-2 * 2 ** (7 / 64), max_value=2 * 2 ** (7 / 64))


def test_family_tags():
    assert [t.degree for t in FamilyTag] == [2, 3, 4, 6]
    assert FamilyTag.parse("phi-sym2f") is FamilyTag.PHI_X_SYM2F
    assert FamilyTag.parse("phi_x_f") is FamilyTag.PHI_X_F
    with pytest.raises(ValueError):
        FamilyTag.parse("GL7")


@pytest.mark.parametrize("family", list(FamilyTag))
def test_two_routes_agree(family):
    assert two_route_defect(family, np.random.default_rng(1)) <= 1e-10


@settings(max_examples=60, deadline=None)
@given(angles, lphi_values, st.integers(min_value=1, max_value=4))
def test_powersum_matches_log_derivative_of_euler_factor(theta, lphi_p, nu):
    alpha = cmath.exp(1j * theta)
    lp = local_params(FamilyTag.PHI_X_SYM2F, alpha, beta_from_lambda(lphi_p), 2)
    c = log_derivative_coeffs(lp.params, nu)[nu]
    assert c.real == pytest.approx(a_coeff_powersum(lp, nu), abs=1e-9)


@settings(max_examples=60, deadline=None)
@given(angles)
def test_alpha_recovers_lambda(theta):
    lam = 2 * math.cos(theta)
    a = alpha_from_lambda(lam)
    assert abs(a) == pytest.approx(1.0)
    assert (a + 1 / a).real == pytest.approx(lam, abs=1e-12)
    assert a.imag >= 0


def test_beta_non_tempered_is_real():
    b = beta_from_lambda(2.1)
    assert b.imag == 0 and abs(b) > 1
    assert (b + 1 / b).real == pytest.approx(2.1)


def test_alpha_rejects_out_of_range():
    with pytest.raises(ValueError):
        alpha_from_lambda(2.5)


def test_closed_form_examples():
    # tempered at lambda = 0: alpha = i
    lf = chebyshev_table(0.0, 6)
    assert lf == [1.0, 0.0, -1.0, 0.0, 1.0, 0.0, -1.0]
    assert a_coeff_closed(FamilyTag.F, lf, None, 2) == pytest.approx(-2.0)
    assert a_coeff_closed(FamilyTag.SYM2F, lf, None, 1) == pytest.approx(-1.0)
    lphi = chebyshev_table(1.0, 2)
    assert a_coeff_closed(FamilyTag.PHI_X_F, lf, lphi, 1) == pytest.approx(0.0)
    assert a_coeff_closed(FamilyTag.PHI_X_SYM2F, lf, lphi, 1) == pytest.approx(-1.0)


def test_b_coefficients_shift_by_one():
    lf, lphi = chebyshev_table(0.3, 4), chebyshev_table(-0.7, 2)
    a2 = a_coeff_closed(FamilyTag.PHI_X_SYM2F, lf, lphi, 2)
    assert b_coeff(FamilyTag.PHI_X_SYM2F, lf, lphi, 2) == pytest.approx(a2 + 1)
    assert b_coeff(FamilyTag.PHI_X_SYM2F, lf, lphi, 1) == pytest.approx(
        a_coeff_closed(FamilyTag.PHI_X_SYM2F, lf, lphi, 1)
    )
    with pytest.raises(ValueError):
        b_coeff(FamilyTag.PHI_X_SYM2F, lf, lphi, 3)


def test_missing_values_raise():
    with pytest.raises(MissingDataError):
        a_coeff_closed(FamilyTag.PHI_X_SYM2F, [1.0, 0.2], [1.0, 0.1], 1)
    with pytest.raises(MissingDataError):
        a_coeff_closed(FamilyTag.PHI_X_F, [1.0, 0.2], None, 1)


@settings(max_examples=30, deadline=None)
@given(angles, lphi_values, st.integers(min_value=0, max_value=5))
def test_dirichlet_coefficients_match_euler_factor(theta, lphi_p, nu):
    lf_p = 2 * math.cos(theta)
    lf = chebyshev_table(lf_p, 2 * nu + 2)
    lph = chebyshev_table(lphi_p, nu + 1)
    p = 2

    def lam_f(n):
        e = round(math.log(n, p)) if n > 1 else 0
        return lf[e]

    def lam_phi(n):
        e = round(math.log(n, p)) if n > 1 else 0
        return lph[e]

    lp = local_params(FamilyTag.PHI_X_SYM2F, alpha_from_lambda(lf_p), beta_from_lambda(lphi_p), p)
    expected = complete_homogeneous(lp.params, nu).real
    assert dirichlet_coeff_phi_sym2(p**nu, lam_f, lam_phi) == pytest.approx(expected, abs=1e-9)


def test_sym2_coeff_small_cases():
    lam = {1: 1.0, 4: 0.5, 16: -0.25}
    assert sym2_coeff(1, lam.__getitem__) == 1.0
    assert sym2_coeff(2, lambda n: {4: 0.5}[n]) == 0.5
    # r = 4: (s, t) = (1, 2), (2, 1)
    assert sym2_coeff(4, lam.__getitem__) == pytest.approx(-0.25 + 1.0)


def test_second_moment_signs(family12):
    signs = {f: np.sign(second_moment_diagnostic(f, family12, 100)) for f in FamilyTag}
    assert signs == {FamilyTag.SYM2F: 1, FamilyTag.PHI_X_SYM2F: -1, FamilyTag.F: -1, FamilyTag.PHI_X_F: 1}


def test_second_moment_rejects_empty():
    with pytest.raises(ValueError):
        second_moment_diagnostic(FamilyTag.F, [], 100)
