import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hoam.explicit_forms import (A_form, AB_forms, B11, H_derivative, H_form, K_form, L_cov, PathSpec, W_form,
                                 ab_table, b11, form_handle, gcom_act, gcom_matrix, h_vw, lambda_hom,
                                 random_gcom_word)
from hoam.handles import RegionError
from hoam.special_functions import DEFAULT_LATTICE, RHO, eta4, log_eta
from hoam.special_functions.quadrature import cauchy_derivative
from hoam.verifier import DifferenceProductSpec, apply_difference_product

LAT = DEFAULT_LATTICE
P = LAT.varpi
upper = st.tuples(st.floats(-0.5, 0.5), st.floats(0.6, 2.0)).map(lambda t: complex(*t))


def test_generators_lie_in_commutator_subgroup():
    for w in ("C", "D", "C*D^-1*C"):
        (a, b), (c, d) = gcom_matrix(w)
        assert a * d - b * c == 1
    assert gcom_matrix("C*C^-1") == ((1, 0), (0, 1))
    with pytest.raises(ValueError):
        gcom_matrix("t")


def test_lambda_hom_values():
    assert lambda_hom("C") == pytest.approx(RHO * P)
    assert lambda_hom("D") == pytest.approx(RHO.conjugate() * P)
    assert lambda_hom("C*D*C^-1*D^-1") == pytest.approx(0)


def test_H_series_vs_reduction():
    z = np.array([0.1 + 1.2j, -0.4 + 0.9j])
    assert np.max(np.abs(H_form(z, method="series") - H_form(z))) < 1e-13


def test_H_derivative_is_eta4():
    z = 0.15 + 1.05j
    d = cauchy_derivative(lambda w: H_form(w), z, 1, radius=0.1)
    assert d == pytest.approx(-2j * math.pi * complex(eta4(z)), rel=1e-10)
    assert H_derivative(z) == pytest.approx(-2j * math.pi * complex(eta4(z)), rel=1e-12)


@given(upper)
def test_H_modular_laws(z):
    assert H_form(z + 1) == pytest.approx(RHO * H_form(z), abs=1e-11)
    assert H_form(-1 / z) == pytest.approx(2 * H_form(1j) - H_form(z), abs=1e-11)


@given(upper, st.integers(0, 10**6))
def test_H_translation_by_lambda(z, seed):
    w = random_gcom_word(np.random.default_rng(seed), 4)
    assert H_form(complex(gcom_act(w, z))) - H_form(z) == pytest.approx(lambda_hom(w), abs=1e-9)


def test_W_is_zeta_of_H_and_quasi_periodic():
    z = 0.2 + 1.1j
    assert W_form(z) == pytest.approx(LAT.zeta(H_form(z)))
    for g in ("C", "D"):
        dW = W_form(complex(gcom_act(g, z))) - W_form(z)
        assert dW == pytest.approx(LAT.quasi_period(lambda_hom(g)), abs=1e-9)


def test_K_second_order_identity():
    K = form_handle("K")
    for g, h in (("C", "D"), ("D", "C"), ("C", "C")):
        v = apply_difference_product(K, DifferenceProductSpec((g, h), "mobius_weight_k"), 0.3 + 1.1j)
        ref = LAT.quasi_period(lambda_hom(g)) * lambda_hom(h)
        assert abs(v - ref) < 1e-7


def test_K_path_independent():
    z = 0.2 + 0.9j
    a = K_form(z, PathSpec(base_point=1j, waypoints=(-0.4 + 1.6j,)))
    b = K_form(z, PathSpec(base_point=1j, waypoints=(0.7 + 0.8j, 0.5 + 0.5j)))
    assert abs(a - b) < 1e-9


def test_b11_harmonic_and_A_plus_B():
    u = 0.9 + 1.3j
    h = 1e-2
    lap = (b11(u + h) + b11(u - h) + b11(u + 1j * h) + b11(u - 1j * h) - 4 * b11(u)) / h**2
    assert abs(lap) < 1e-4 * max(1, abs(b11(u)))
    z = 0.1 + 1.2j
    A, B = AB_forms(z)
    assert A + B == pytest.approx(B11(z))
    # A is holomorphic: d/dzbar by finite differences vanishes
    e = 1e-4
    dzbar = 0.5 * ((A_form(z + e) - A_form(z - e)) / (2 * e) + 1j * (A_form(z + 1j * e) - A_form(z - 1j * e)) / (2 * e))
    assert abs(dzbar) < 1e-6


def test_ab_table_constant():
    t1, t2 = ab_table(0.1 + 1.3j), ab_table(-0.35 + 0.8j)
    for k in t1:
        assert abs(t1[k] - t2[k]) < 1e-7


def test_L_cov_definition_and_variants():
    z, t = 0.3 + 1.2j, 0.4
    ref = 0.5 * math.log(z.imag) + 2 * log_eta(z) + 1j * t
    assert L_cov(z, t) == pytest.approx(ref)
    assert L_cov(z, t, "power", k=3) == pytest.approx(ref**3)
    assert L_cov(z, t, "ImL") == pytest.approx(ref.imag)
    assert L_cov(z, t, "L1", N=5) == pytest.approx(ref + L_cov(5 * z, t))
    with pytest.raises(ValueError):
        L_cov(z, t, "nope")


def test_L_invariance_under_modular_lift():
    # |eta|^2 sqrt(y) is SL2(Z) invariant, so Re L is invariant
    z = 0.2 + 1.1j
    for m in (lambda w: w + 1, lambda w: -1 / w):
        assert L_cov(m(z)).real == pytest.approx(L_cov(z).real, abs=1e-12)


def test_h_vw_regions():
    with pytest.raises(RegionError):
        h_vw(0.3, 0.4, 0.5 - 0.1j)
    u = 0.7 + 0.8j
    assert cmath.isfinite(h_vw(0.3 + 0.1j, 0.2, u))


def test_handles_validity():
    K = form_handle("K")
    assert not K.valid(0.005j)
    with pytest.raises(ValueError):
        form_handle("Z")
    H = form_handle("H")
    assert H.valid(1e-6j + 0.3)
