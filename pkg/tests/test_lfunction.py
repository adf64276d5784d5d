import math
from dataclasses import replace

import mpmath
import numpy as np
import pytest

from hoam import lfunction as lf
from hoam.explicit_forms import L_cov

NF = lf.builtin_37a()
HEADER = "# level: 11\n# weight: 2\n# fricke_sign: 1\n"


def test_builtin_known_coefficients():
    # q - 2q^2 - 3q^3 + 2q^4 - 2q^5 + 6q^6 - q^7 + 6q^9 + 4q^10
    assert list(NF.coeffs[1:11]) == [1, -2, -3, 2, -2, 6, -1, 0, 6, 4]
    assert NF.coeffs[37] == -1
    assert NF.level == 37 and NF.root_number == -1


def test_parse_errors():
    with pytest.raises(lf.CoefficientError, match=":5:"):
        lf.parse_coeffs(HEADER + "1 1\n2 x\n")
    with pytest.raises(lf.CoefficientError, match="a_1"):
        lf.parse_coeffs(HEADER + "1 2\n")
    with pytest.raises(lf.CoefficientError, match="expected n = 2"):
        lf.parse_coeffs(HEADER + "1 1\n3 0\n")
    with pytest.raises(lf.CoefficientError, match="level"):
        lf.parse_coeffs("1 1\n")
    with pytest.raises(lf.CoefficientError, match="weight"):
        lf.parse_coeffs("# level: 11\n# weight: 4\n1 1\n")
    with pytest.raises(lf.CoefficientError, match="fricke"):
        lf.parse_coeffs("# level: 11\n# fricke_sign: -1\n1 1\n")


def test_multiplicativity_enforced():
    lines = [f"{n} {int(a)}" for n, a in enumerate(NF.coeffs[1:80], 1)]
    lines[5] = "6 7"  # a_6 != a_2 a_3
    with pytest.raises(lf.CoefficientError, match="multiplicativity"):
        lf.parse_coeffs("# level: 37\n" + "\n".join(lines))


def test_load_coeffs_file(tmp_path):
    p = tmp_path / "c.txt"
    p.write_text("# level: 37\n" + "\n".join(f"{n} {int(a)}" for n, a in enumerate(NF.coeffs[1:300], 1)))
    nf = lf.load_coeffs(p)
    assert nf.n_max == 299 and nf.label == ""


def test_fold_is_continuous_and_matches_direct():
    cut = 1 / math.sqrt(37)
    a = lf.eval_form(NF, cut * (1 - 1e-12))
    b = lf.eval_form(NF, cut)
    assert a == pytest.approx(b, rel=1e-9)
    # the direct series still converges a little below the cut
    y = 0.8 * cut
    n = np.arange(1, NF.n_max + 1)
    direct = float(np.sum(NF.coeffs[1:] * np.exp(-2 * math.pi * n * y)))
    assert lf.eval_form(NF, y) == pytest.approx(direct, rel=1e-10)


def test_large_y_ratio():
    y = 3.0
    assert lf.eval_form(NF, y) / math.exp(-2 * math.pi * y) == pytest.approx(1.0, rel=1e-7)


def test_insufficient_coefficients_raise():
    short = replace(NF, coeffs=NF.coeffs[:6])
    with pytest.raises(lf.CoefficientError):
        lf.eval_form(short, 0.2)
    with pytest.raises(lf.CoefficientError):
        lf.oracle_lprime(short)


def test_oracle_value_and_truncation():
    ref = 2 * sum(float(NF.coeffs[n]) / n * float(mpmath.e1(2 * mpmath.pi * n / mpmath.sqrt(37)))
                  for n in range(1, 200))
    assert lf.oracle_lprime(NF) == pytest.approx(ref, rel=1e-13)
    half = replace(NF, coeffs=NF.coeffs[: NF.n_max // 2 + 1])
    assert lf.oracle_lprime(half) == lf.oracle_lprime(NF)
    assert lf.oracle_lprime(NF) == pytest.approx(lf.ORACLE_37A, rel=1e-12)


def test_lvalue_vanishes():
    assert abs(lf.lvalue_at_one(NF)) < 1e-10


def test_axis_integral_panel_stability():
    g = lambda y: np.log(y)  # noqa: E731
    a, _ = lf.axis_integral(NF, g, panels=48)
    b, _ = lf.axis_integral(NF, g, panels=96)
    assert abs(a - b) < 1e-13


def test_L1_axis_matches_covering_form():
    for y in (0.4, 1.3):
        ref = L_cov(1j * y, 0.7) + L_cov(37j * y, 0.7)
        assert lf.L1_axis(NF, y, 0.7) == pytest.approx(ref, abs=1e-12)


def test_goldfeld_report():
    r = lf.goldfeld_report(NF)
    assert r.passed
    assert abs(r.pairing_integral) < 1e-10
    assert r.relative_difference < 1e-10
    js = r.to_json()
    assert js["verdict"] == "pass" and js["level"] == 37
