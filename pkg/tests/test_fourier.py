import math

import mpmath
import numpy as np
import pytest

from hoam.covering_group import PointHTheta, lie_apply
from hoam.explicit_forms import form_handle
from hoam.fourier import (A01_formula, A02_formula, FourierTermSpec, L_expansion_reference, basis_eval, eisenstein0,
                          eisenstein_C0, eisenstein_taylor, fourier_extract, fourier_extract_est, growth_exponent,
                          h_mm, higher_order_expansion, omega, omega_hat, term_handle)


def epstein(s, z, R=120):
    # sum over coprime (c, d) modulo +-1 of y^{1/2+s} / |cz + d|^{1+2s}
    c, d = np.meshgrid(np.arange(-R, R + 1), np.arange(-R, R + 1), indexing="ij")
    mask = (np.gcd(c, d) == 1) & ((c > 0) | ((c == 0) & (d > 0)))
    v = np.abs(c[mask] * z + d[mask]) ** (-(1 + 2 * s))
    return z.imag ** (0.5 + s) * float(np.sum(v))


def test_eisenstein_matches_lattice_sum():
    z = 0.2 + 1.1j
    assert eisenstein0(2.5, z).real == pytest.approx(epstein(2.5, z), rel=1e-7)


def test_eisenstein_functional_equation():
    z = 0.15 + 0.95j
    for s in (0.3, 0.2 + 0.7j):
        assert eisenstein0(s, z) == pytest.approx(eisenstein_C0(s) * eisenstein0(-s, z), rel=1e-11)


def test_eisenstein_invariance():
    z = 0.3 + 0.8j
    s = 0.4 + 0.2j
    assert eisenstein0(s, -1 / z) == pytest.approx(eisenstein0(s, z), rel=1e-11)


def test_omega_matches_mpmath():
    z, th = 0.3 + 1.2j, 0.4
    k, nu, s = 2, 1.5, 0.3
    ref = (np.exp(2j * math.pi * nu * z.real) * complex(mpmath.whitw(k / 2, s, 4 * math.pi * nu * z.imag))
           * np.exp(1j * k * th))
    assert complex(omega(k, nu, s, z, th)) == pytest.approx(ref, rel=1e-10)
    ref_neg = (np.exp(-2j * math.pi * nu * z.real) * complex(mpmath.whitw(-k / 2, s, 4 * math.pi * nu * z.imag))
               * np.exp(1j * k * th))
    assert complex(omega(k, -nu, s, z, th)) == pytest.approx(ref_neg, rel=1e-10)


def test_omega_is_casimir_eigenfunction():
    k, nu, s = 2, 1.0, 0.3
    f = lambda z, t: omega(k, nu, s, z, t)  # noqa: E731
    p = PointHTheta(0.2 + 1.1j, 0.3)
    lam = 0.25 - s * s
    assert abs(lie_apply("Casimir", f, p) - lam * f(p.z, p.theta)) < 1e-6 * abs(f(p.z, p.theta))
    assert lie_apply("W", f, p) == pytest.approx(1j * k * f(p.z, p.theta), rel=1e-8)


def test_omega_hat_decays_other_way():
    # omega_hat grows, omega decays along the cusp
    a = abs(omega(0, 1.0, 0.3, 3j, 0.0))
    b = abs(omega_hat(0, 1.0, 0.3, 3j, 0.0))
    assert a < 1e-7 < 1e6 < b


def test_fourier_extract_picks_coefficient():
    f = lambda p: 2 * np.exp(2j * math.pi * 3 * p.z) + np.exp(-2j * math.pi * p.z.real)  # noqa: E731
    g = PointHTheta(0.1 + 0.5j)
    val, err = fourier_extract_est(f, 3, g)
    # the integral starts at g, so the phase e^{2 pi i 3 x_g} survives
    assert val == pytest.approx(2 * np.exp(2j * math.pi * 3 * g.z), rel=1e-12)
    assert err < 1e-12
    assert fourier_extract(f, nu=-1, g=g) == pytest.approx(np.exp(-2j * math.pi * g.z.real), abs=1e-12)
    with pytest.raises(ValueError):
        fourier_extract(f)


def test_L_expansion():
    got = higher_order_expansion(form_handle("L"), n_max=6)
    ref = L_expansion_reference(6)
    assert got["eta(1,0)"] == pytest.approx(ref["eta(1,0)"], abs=1e-10)
    assert got["eta(0,1)"] == pytest.approx(ref["eta(0,1)"], abs=1e-10)
    for n in range(1, 7):
        assert got["eta(n)"][n] == pytest.approx(ref["eta(n)"][n], abs=1e-7)


def test_spec_validation():
    with pytest.raises(ValueError):
        FourierTermSpec("bogus")
    with pytest.raises(ValueError):
        FourierTermSpec("omega", 0, 0)
    with pytest.raises(ValueError):
        FourierTermSpec("h_mm", 1, 1, 0.3, (1, 0))


def test_eta_hol_basis():
    spec = FourierTermSpec("eta_hol", 2, 3)
    p = PointHTheta(0.1 + 0.7j, 0.2)
    assert basis_eval(spec, p) == pytest.approx(0.7 * np.exp(6j * math.pi * p.z) * np.exp(0.4j))


def test_h_mm_zero_order_reduces_to_omega():
    spec = FourierTermSpec("h_mm", 2, 1, 0.3, (0, 0))
    p = PointHTheta(0.2 + 1.1j, 0.3)
    assert h_mm(spec, "omega", p) == pytest.approx(complex(omega(2, 1, 0.3, p.z, p.theta)), rel=1e-9)


def test_growth_exponent_of_omega():
    h = term_handle(FourierTermSpec("h_mm", 2, -1, 0.3, (1, 0)), "omega", radius=0.05)
    A = growth_exponent(h, 1, ys=(6.0, 9.0))
    assert abs(A) < 3


def test_eisenstein_taylor_identities():
    z = 0.1 + 1.1j
    rep = eisenstein_taylor(z, 2)
    assert rep.residuals["constant_term_minus_1"] < 1e-12
    assert rep.residuals["A01_minus_formula"] < 1e-10
    assert rep.residuals["A01_minus_2ReL"] < 1e-10
    assert rep.residuals["A02_minus_formula"] < 1e-8
    # the uncorrected n-sum does not reproduce the contour value
    assert abs(rep.derived["A02"] - A02_formula(z, "printed")) > 1e-4
    assert A01_formula(z) == pytest.approx(rep.derived["A01"].real, abs=1e-10)
    with pytest.raises(ValueError):
        eisenstein_taylor(z, 9)
