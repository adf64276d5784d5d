import json
import math
from fractions import Fraction

import numpy as np
import pytest

from hoam.covering_group import PointHTheta, lie_apply
from hoam.explicit_forms import form_handle
from hoam.group_algebra import Presentation, dual_function
from hoam.handles import RegionError
from hoam.verifier import (DifferenceProductSpec, VerificationReport, apply_difference_product, check_order,
                           check_perturbation, estimate_multilinear, operator_residual, sample_points)


def test_spec_validation():
    with pytest.raises(ValueError):
        DifferenceProductSpec(())
    with pytest.raises(ValueError):
        DifferenceProductSpec(("t",), "nope")
    with pytest.raises(ValueError):
        DifferenceProductSpec(("a1",), "group_word")


def test_difference_product_expansion_by_hand():
    # f|(g-1)(h-1)(z) = f(g h z) - f(g z) - f(h z) + f(z) for translations
    f = lambda u: u.real**3 + 2 * u.imag  # noqa: E731
    spec = DifferenceProductSpec((0.5, 1j), "torus_translation")
    z = 0.3 + 0.2j
    ref = f(z + 0.5 + 1j) - f(z + 0.5) - f(z + 1j) + f(z)
    assert apply_difference_product(f, spec, z) == pytest.approx(ref)
    # cubic in x has vanishing fourth differences
    spec4 = DifferenceProductSpec((0.5, 0.25, 1.0, 0.3), "torus_translation")
    assert abs(apply_difference_product(f, spec4, z)) < 1e-12


def test_group_word_exact():
    p = Presentation.free(3)
    g12 = lambda w: dual_function("g", (1, 2), w, p)  # noqa: E731
    for words, ref in ((("a1", "a2"), 1), (("a2", "a1"), 0), (("a1", "a1"), 0)):
        v = apply_difference_product(g12, DifferenceProductSpec(words, "group_word", presentation=p))
        assert isinstance(v, Fraction) and v == ref


def test_mobius_weight_factor():
    k = 2
    f = lambda z: z.imag ** (k / 2)  # noqa: E731
    spec = DifferenceProductSpec(("s",), "mobius_weight_k", weight=k)
    z = 0.3 + 1.2j
    v = apply_difference_product(f, spec, z)
    assert abs(v) == pytest.approx(abs(f(-1 / z) * np.exp(-1j * k * np.angle(z)) - f(z)))


def test_region_error_names_composite():
    K = form_handle("K")
    spec = DifferenceProductSpec(("C", "D", "C"), "mobius_weight_k")
    with pytest.raises(RegionError, match="composite"):
        apply_difference_product(K, spec, 0.005j + 0.4)


def test_L_first_order_on_covering():
    L = form_handle("L")
    alpha = {"t": math.pi / 6, "s": -math.pi / 2}
    p = PointHTheta(0.1 + 1.3j, 0.4)
    for w, a in alpha.items():
        v = apply_difference_product(L, DifferenceProductSpec((w,)), p)
        assert v == pytest.approx(1j * a, abs=1e-12)
    assert abs(apply_difference_product(L, DifferenceProductSpec(("t", "s")), p)) < 1e-12


def test_reports_and_json():
    rng = np.random.default_rng(1)
    pts = sample_points(rng, 3, covering=True)
    rep = check_perturbation(form_handle("L"), 1.0, lambda w: 1j * math.pi / 6, 1, ["t"], pts, 1e-10)
    assert rep.passed and rep.metadata["commutative"]
    js = json.loads(json.dumps(rep.to_json()))
    assert list(js) == ["check", "verdict", "max_residual", "tolerance", "samples", "metadata"]
    order = check_order(form_handle("L"), 2, ["t", "s"], pts, 1e-10)
    assert order.passed
    empty = VerificationReport("nothing", tolerance=1.0)
    assert empty.verdict == "fail"


def test_estimate_multilinear_L2():
    pts = sample_points(np.random.default_rng(0), 2, covering=True)
    est = estimate_multilinear(form_handle("L^2"), 1.0, 2, [("t", "s")], pts)
    ref = (1j**2) * 2 * (math.pi / 6) * (-math.pi / 2)
    assert est["table"][("t", "s")] == pytest.approx(ref, abs=1e-9)
    assert est["spread"][("t", "s")] < 1e-9
    with pytest.raises(ZeroDivisionError):
        estimate_multilinear(form_handle("L"), 0.0, 1, [("t",)], pts)


def test_operator_residuals_of_L():
    pts = [PointHTheta(0.1 + 1.2j, 0.3), PointHTheta(-0.3 + 2.0j, -1.0)]
    L = form_handle("L")
    # L is not an eigenfunction: the Casimir sends it to the constant 1/2
    for p in pts:
        assert lie_apply("Casimir", L, p) == pytest.approx(0.5, abs=1e-7)
    assert not operator_residual(L, "Casimir", 0.0, pts, 1e-6).passed
    assert operator_residual(L, "Eminus", 0.0, pts, 1e-8).passed
    assert operator_residual(form_handle("ImL"), "Casimir", 0.0, pts, 1e-7).passed
    with pytest.raises(ValueError):
        operator_residual(L, "bogus", 0, pts, 1)


def test_laplace_weight_on_eisenstein_like():
    s = 0.3
    f = lambda z: z.imag ** (0.5 + s)  # noqa: E731
    rep = operator_residual(f, "laplace_weight", 0.25 - s * s, [0.1 + 1.1j], 1e-7, k=0)
    assert rep.passed
