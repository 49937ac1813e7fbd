import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lowlying.testfns import (
    TestFunctionPair,
    abs_moment,
    fejer_pair,
    fourier_transform,
    ghat_integral,
    plancherel_product_at_0,
    product_pair,
    verify_pair,
    weighted_abs_integral,
    zero_pair,
)


def test_fejer_values():
    F = fejer_pair(0.5)
    assert F.g0 == 0.5 and F.ghat0 == 1.0
    assert float(F.g(0.0)) == pytest.approx(0.5)
    assert float(F.ghat(0.5)) == 0.0
    assert float(F.ghat(0.25)) == pytest.approx(0.5)


def test_fejer_rejects_nonpositive_support():
    with pytest.raises(ValueError):
        fejer_pair(0.0)


def test_fejer_transform_matches_quadrature():
    assert verify_pair(fejer_pair(0.5), [0.0, 0.01, 0.1, 0.25, 0.4, 0.6])


def test_verify_pair_detects_wrong_transform():
    F = fejer_pair(0.5)
    bad = TestFunctionPair(F.support, F.g, lambda u: 1.1 * F.ghat(u), F.g0, 1.1, F.knots, F.degree, "bad")
    assert not verify_pair(bad, [0.1])


def test_fourier_transform_at_zero():
    F = fejer_pair(0.5)
    assert fourier_transform(F, 0.0) == pytest.approx(1.0, abs=1e-6)


def test_exact_integrals():
    F = fejer_pair(0.5)
    assert plancherel_product_at_0(F, F) == pytest.approx(1 / 3, rel=1e-13)
    assert weighted_abs_integral(F, F) == pytest.approx(1 / 24, rel=1e-13)
    assert abs_moment(F) == pytest.approx(1 / 12, rel=1e-13)
    assert ghat_integral(F) == pytest.approx(F.g0, rel=1e-13)


@settings(max_examples=30, deadline=None)
@given(st.floats(min_value=0.02, max_value=0.9), st.floats(min_value=0.02, max_value=0.9))
def test_product_pair_transform_is_convolution(s1, s2):
    F1, F2 = fejer_pair(s1), fejer_pair(s2)
    G = product_pair(F1, F2)
    assert G.support == pytest.approx(s1 + s2)
    # (g1 g2)^(0) = int ghat1 ghat2
    assert G.ghat0 == pytest.approx(plancherel_product_at_0(F1, F2), rel=1e-10)
    assert ghat_integral(G) == pytest.approx(F1.g0 * F2.g0, rel=1e-9)
    assert float(G.ghat(s1 + s2)) == 0.0


@settings(max_examples=30, deadline=None)
@given(st.floats(min_value=0.02, max_value=0.95), st.floats(min_value=-3, max_value=3))
def test_fejer_is_even_and_bounded(sigma, x):
    F = fejer_pair(sigma)
    assert float(F.g(x)) == pytest.approx(float(F.g(-x)))
    assert 0 <= float(F.g(x)) <= F.g0 + 1e-15
    assert 0 <= float(F.ghat(x)) <= 1


def test_zero_pair_integrals_vanish():
    Z = zero_pair(0.5)
    assert abs_moment(Z) == 0.0
    assert plancherel_product_at_0(Z, fejer_pair(0.5)) == 0.0


def test_product_pair_g_is_pointwise_product():
    F1, F2 = fejer_pair(0.2), fejer_pair(0.3)
    G = product_pair(F1, F2)
    x = np.linspace(-4, 4, 17)
    assert np.allclose(G.g(x), F1.g(x) * F2.g(x))
    assert verify_pair(G, [0.0, 0.1, 0.3])
    assert math.isclose(G.g0, 0.06)
