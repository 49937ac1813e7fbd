import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lowlying.maass import (
    FIRST_EVEN_T,
    KimSarnakWarning,
    MaassForm,
    MaassParseError,
    format_maass,
    lambda_phi_power,
    load_maass,
    multiplicative_table,
    parse_maass,
    ramanujan_average_check,
    synthetic_maass,
)
from lowlying.satake import MissingDataError

GOOD = "# provenance: test\nmaass t=13.7797513519 parity=even\n2 0.5\n3 -1.25\n5 0.0\n"


def test_parse_good_file():
    phi = parse_maass(GOOD)
    assert phi.t_phi == pytest.approx(FIRST_EVEN_T)
    assert phi.provenance == "test"
    assert phi.lam_p(3) == -1.25
    assert phi.max_prime == 5


@pytest.mark.parametrize(
    "text",
    [
        "2 0.5\n",
        "maass t=1.0 parity=odd\n2 0.5\n",
        "maass t=1.0 parity=even\n",
        "maass t=1.0 parity=even\n3 0.5\n2 0.1\n",
        "maass t=1.0 parity=even\n2 0.5\n4 0.1\n",
        "maass t=1.0 parity=even\n2 abc\n",
        "maass t=1.0 parity=even\n2 0.5 7\n",
    ],
)
def test_parse_rejects_malformed(text):
    with pytest.raises(MaassParseError):
        parse_maass(text)


def test_kim_sarnak_warning():
    with pytest.warns(KimSarnakWarning):
        parse_maass("maass t=1.0 parity=even\n2 3.0\n")


def test_odd_form_rejected_directly():
    with pytest.raises(ValueError):
        MaassForm(1.0, "odd", np.array([2]), np.array([0.0]))


def test_hecke_extension():
    phi = parse_maass(GOOD)
    assert lambda_phi_power(phi, 2, 0) == 1.0
    assert lambda_phi_power(phi, 2, 2) == pytest.approx(0.25 - 1)
    assert phi.lam(6) == pytest.approx(0.5 * -1.25)
    assert phi.lam(4) == pytest.approx(-0.75)
    with pytest.raises(MissingDataError):
        phi.lam(7)


def test_format_round_trip(tmp_path):
    phi = synthetic_maass(3, 200)
    path = tmp_path / "phi.txt"
    path.write_text(format_maass(phi))
    back = load_maass(path)
    assert np.array_equal(back.primes, phi.primes)
    assert np.allclose(back.values, phi.values, rtol=1e-14)
    assert back.provenance == "synthetic"


def test_bundled_sample(phi):
    assert phi.parity == "even"
    assert phi.max_prime == 9973
    assert phi.provenance == "synthetic"
    assert np.all(np.abs(phi.values) <= 2)


def test_synthetic_is_deterministic():
    a, b = synthetic_maass(7, 100), synthetic_maass(7, 100)
    assert np.array_equal(a.values, b.values)


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=2, max_value=400), st.integers(min_value=2, max_value=400))
def test_multiplicative_table_is_multiplicative(m, n):
    phi = synthetic_maass(0, 10**4)
    lam = multiplicative_table(phi, 2000)
    if m * n <= 2000 and math.gcd(m, n) == 1:
        assert lam[m * n] == pytest.approx(lam[m] * lam[n], abs=1e-12)


def test_multiplicative_table_needs_data():
    with pytest.raises(MissingDataError):
        multiplicative_table(parse_maass(GOOD), 100)


def test_second_moment_average_stays_bounded(phi):
    # uniform angles give E lambda(p)^2 = 2, so the average grows like log X
    values = [ramanujan_average_check(phi, X) for X in (10, 1000, 10000)]
    assert values[0] > 0
    assert max(values) <= 8.0
