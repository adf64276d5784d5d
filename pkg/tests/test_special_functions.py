import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hoam.special_functions import (BACKEND, DEFAULT_LATTICE, HexLattice, PoleError, PrecisionConfig, S_series,
                                    SingularityError, besselK, cauchy_derivative, cauchy_taylor, cauchy_taylor_2d,
                                    completed_zeta, eta4, eta4_reduced, eta_power_series, gamma, gamma0,
                                    inv_completed_zeta, laurent_constants, log_eta, log_eta_product, riemann_zeta,
                                    s_combined, special_kit, varpi_closed_form, whittaker_dW_ds, whittaker_W)
from hoam.special_functions import _kernels_py, kernels

LAT = DEFAULT_LATTICE


def mp_whitw(k, s, t):
    return complex(mpmath.whitw(k, s, t))


# -- Whittaker -------------------------------------------------------------------


@pytest.mark.parametrize("k,s,t", [
    (0.0, 0.5, 0.5), (0.0, 0.5, 2.0), (0.0, 0.5, 10.0),
    (0.3, 0.7, 1.3), (-0.4, 0.2 + 0.5j, 3.0), (1.0, 0.25, 0.7),
    (0.5, 1.5, 4.0), (0.0, 0.3, 2.0 + 1.5j), (0.2, 0.6, -2.5 + 0.4j),
])
def test_whittaker_matches_mpmath(k, s, t):
    ref = mp_whitw(k, s, t)
    assert abs(whittaker_W(k, s, t) - ref) <= 1e-10 * max(1.0, abs(ref))


def test_whittaker_closed_form_and_derivative():
    for t in (0.5, 2.0, 10.0):
        assert whittaker_W(0, 0.5, t) == pytest.approx(math.exp(-t / 2), rel=1e-12)
        d = whittaker_dW_ds(0, 0.5, t)
        assert d.real == pytest.approx(math.exp(t / 2) * float(mpmath.e1(t)), rel=1e-8)


def test_whittaker_routes_agree():
    # ray and loop representations are independent integrals
    for k, s, t in [(0.3, 0.45, 1.7), (-0.2, 0.1 + 0.3j, 2.2)]:
        a = whittaker_W(k, s, t, method="ray")
        b = whittaker_W(k, s, t, method="loop")
        assert abs(a - b) < 1e-10 * abs(a)


def test_whittaker_ode():
    k, s, t, h = 0.3, 0.4, 1.7, 1e-3
    W = lambda x: whittaker_W(k, s, x)
    w2 = (W(t + h) - 2 * W(t) + W(t - h)) / h**2
    res = w2 + (-0.25 + k / t + (0.25 - s * s) / t**2) * W(t)
    assert abs(res) < 1e-5


def test_whittaker_errors():
    with pytest.raises(ValueError):
        whittaker_W(0, 0.5, 0)
    with pytest.raises(ValueError):
        whittaker_W(0, 0.5, 1.0, method="nope")
    with pytest.raises(ValueError):
        whittaker_W(2.0, 0.5, 1.0, method="ray")


def test_whittaker_tolerance_halving():
    a = whittaker_W(0.3, 0.7, 1.3, h=1 / 32)
    b = whittaker_W(0.3, 0.7, 1.3, h=1 / 64)
    assert abs(a - b) < 1e-12


# -- kit ---------------------------------------------------------------------------


@given(st.floats(0.05, 30), st.floats(-2.5, 2.5))
def test_besselK_matches_mpmath(x, s):
    ref = float(mpmath.besselk(s, x))
    assert besselK(s, x).real == pytest.approx(ref, rel=1e-11, abs=1e-300)


@given(st.floats(0.01, 40))
def test_gamma0_matches_mpmath(t):
    assert gamma0(t).real == pytest.approx(float(mpmath.gammainc(0, t)), rel=1e-13)


def test_zetas_match_mpmath():
    for s in (0.3, 2.0, 0.5 + 14.134725j, -1.5, 3 + 2j):
        assert riemann_zeta(s) == pytest.approx(complex(mpmath.zeta(s)), rel=1e-13)
        ref = complex(mpmath.pi ** (-s / 2) * mpmath.gamma(s / 2) * mpmath.zeta(s))
        assert completed_zeta(s) == pytest.approx(ref, rel=1e-12)
        assert inv_completed_zeta(s) * completed_zeta(s) == pytest.approx(1, rel=1e-12)


def test_completed_zeta_functional_equation():
    for u in (0.3, 0.2 + 0.7j, -0.15 + 1.3j):
        assert completed_zeta(u) == pytest.approx(completed_zeta(1 - u), rel=1e-12)


def test_poles():
    with pytest.raises(PoleError):
        gamma(-2)
    with pytest.raises(PoleError):
        riemann_zeta(1)
    with pytest.raises(PoleError):
        completed_zeta(0)
    assert inv_completed_zeta(1) == 0
    with pytest.raises(ValueError):
        special_kit("unknown", 1)


def test_laurent_constants():
    a0, b1 = laurent_constants()
    # Lambda(1+h) = 1/h + (gamma - log 4pi)/2 + O(h)
    assert a0 == pytest.approx((float(mpmath.euler) - math.log(4 * math.pi)) / 2, abs=1e-11)
    ref_b1 = float(mpmath.diff(lambda u: mpmath.pi ** (-u / 2) * mpmath.gamma(u / 2) * mpmath.zeta(u), 2))
    assert b1 == pytest.approx(ref_b1, rel=1e-10)


# -- eta --------------------------------------------------------------------------


def mp_log_eta(z):
    q = mpmath.exp(2j * mpmath.pi * z)
    return complex(1j * mpmath.pi * z / 12 + mpmath.log(mpmath.qp(q)))


@given(st.floats(-0.5, 0.5), st.floats(0.3, 3.0))
def test_log_eta_series_vs_product(x, y):
    z = complex(x, y)
    assert log_eta(z) == pytest.approx(log_eta_product(z, 600), abs=1e-13)


def test_log_eta_vs_mpmath_and_law():
    for z in (0.1 + 0.8j, -0.3 + 1.5j):
        assert log_eta(z) == pytest.approx(mp_log_eta(z), abs=1e-13)
    # log eta(-1/z) = log eta(z) + 1/2 log(z/i)
    z = 0.2 + 1.1j
    assert log_eta(-1 / z) == pytest.approx(log_eta(z) + 0.5 * np.log(z / 1j), abs=1e-12)
    with pytest.raises(ValueError):
        log_eta(0.001j)


def test_eta_power_series_known():
    # eta^4 = q^{1/6} (1 - 4q + 2q^2 + 8q^3 - 5q^4 - 4q^5 ...)
    assert eta_power_series(4, 6)[:6] == (1, -4, 2, 8, -5, -4)
    with pytest.raises(ValueError):
        eta_power_series(4, 0)


def test_eta4_reduced_matches_direct_and_transforms():
    pts = np.array([0.1 + 0.7j, -0.4 + 1.3j, 0.25 + 0.55j])
    assert np.max(np.abs(eta4_reduced(pts) - eta4(pts))) < 1e-14
    z = 0.13 + 0.02j  # far below the direct range
    assert eta4_reduced(z + 1) == pytest.approx(np.exp(1j * np.pi / 3) * eta4_reduced(z), rel=1e-10)
    w = 0.3 + 0.9j
    assert eta4_reduced(-1 / w) == pytest.approx(-(w**2) * eta4(w), rel=1e-12)
    ref = complex(mpmath.exp(1j * mpmath.pi * z / 3) * mpmath.qp(mpmath.exp(2j * mpmath.pi * z)) ** 4)
    assert abs(eta4_reduced(z) - ref) < 1e-8 * max(1, abs(ref))


# -- Weierstrass ---------------------------------------------------------------------


def test_varpi_closed_form():
    v = varpi_closed_form()
    assert v == pytest.approx(4.2065463, abs=1e-6)
    ref = float(mpmath.sqrt(mpmath.pi) * mpmath.gamma(mpmath.mpf(1) / 6) / (mpmath.sqrt(3) * mpmath.gamma(mpmath.mpf(2) / 3)))
    assert v == pytest.approx(ref, rel=1e-14)


@given(st.floats(0.05, 0.95), st.floats(0.05, 0.95))
def test_zeta_series_vs_lattice(a, b):
    w1, w2 = LAT.periods
    u = a * w1 + b * w2
    zs, ws = LAT.zeta(u), LAT.wp(u)
    zl, wl = LAT.lattice_sums(u, 160)
    # hexagonal partial sums converge like 1/N
    assert abs(zs - zl) < 2e-3 * max(1, abs(zs))
    assert abs(ws - wl) < 2e-3 * max(1, abs(ws))


def test_zeta_is_derivative_and_quasi_periodic():
    u = 0.7 + 0.4j
    d = cauchy_derivative(lambda x: LAT.zeta(x), u, 1, radius=0.1)
    assert d == pytest.approx(-LAT.wp(u), rel=1e-10)
    for w, eta in zip(LAT.periods, LAT.quasi_periods):
        assert LAT.zeta(u + w) - LAT.zeta(u) == pytest.approx(eta, abs=1e-11)
    # Legendre relation for the pair (varpi, varpi rho)
    (w1, w2), (e1, e2) = LAT.periods, LAT.quasi_periods
    assert e1 * w2 - e2 * w1 == pytest.approx(2j * math.pi, abs=1e-11)


def test_zeta_singular():
    with pytest.raises(SingularityError):
        LAT.zeta(LAT.varpi)


def test_S_extension_consistent():
    u = np.array([0.3 + 1.2j, 1.1 + 0.6j])
    a = S_series(u) + S_series(-np.conj(u))
    assert np.max(np.abs(s_combined(u).real - a.real)) < 1e-12
    with pytest.raises(ValueError):
        S_series(0.2 - 0.1j)


def test_series_terms_stability():
    u = 0.4 + 0.9j
    a = S_series(u, HexLattice(series_terms=40), terms=16)
    b = S_series(u, HexLattice(series_terms=40), terms=32)
    assert abs(a - b) < 1e-14


# -- quadrature -----------------------------------------------------------------------


def test_cauchy_taylor_exp():
    c = cauchy_taylor(np.exp, 0.3, vectorized=True)
    assert np.allclose(c[:8], [math.exp(0.3) / math.factorial(k) for k in range(8)], atol=1e-14)
    c2 = cauchy_taylor_2d(lambda v, w: np.exp(v + 2 * w), 0, 0)
    assert c2[1, 1] == pytest.approx(2, abs=1e-13)
    assert c2[2, 1] == pytest.approx(1.0, abs=1e-13)


def test_precision_config():
    p = PrecisionConfig()
    assert p.halved().target_tol == p.target_tol / 2
    with pytest.raises(ValueError):
        PrecisionConfig(target_tol=0)


# -- kernels ----------------------------------------------------------------------------


def test_backend_agrees_with_python():
    assert BACKEND in ("compiled", "python")
    w1, w2 = LAT.periods
    a = kernels.hex_lattice_sums(0.3 + 0.2j, w1, w2, 30)
    b = _kernels_py.hex_lattice_sums(0.3 + 0.2j, w1, w2, 30)
    assert np.allclose(a, b, rtol=1e-13)
    assert np.allclose(kernels.divisor_power_table(50, -1.0), _kernels_py.divisor_power_table(50, -1.0))
    assert list(kernels.eta_product_coefficients(4, 30)) == list(_kernels_py.eta_product_coefficients(4, 30))
