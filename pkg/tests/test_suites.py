import json
import math

import numpy as np
import pytest

from hoam import suites
from hoam.explicit_forms import form_handle
from hoam.verifier import check_order, sample_points
from hoam.parallel import pmap, thread_count


def test_lower_bound_and_single():
    assert suites.lower_bound("gap", 2.0, 1e-3).passed
    assert not suites.lower_bound("gap", 1e-4, 1e-3).passed
    assert not suites.lower_bound("gap", 0.0, 1e-3).passed
    assert suites.single("exact", 0.0, 0.0).passed


@pytest.mark.parametrize("form", ["L", "Lk", "K", "A", "B11"])
def test_order_suites_pass(form):
    s = suites.order_suite(form)
    assert s.passed, [(r.check, r.max_residual) for r in s.reports]


def test_order_fails_one_step_too_early():
    # L^2 is third order, so its second differences do not vanish
    s = suites.order_suite("Lk", k=2)
    assert s.passed
    pts = sample_points(np.random.default_rng(0), 2, covering=True)
    assert not check_order(form_handle("L^2"), 2, ("t", "s"), pts, 1e-7).passed


def test_perturbation_L_and_json_shape():
    s = suites.perturbation_suite("L")
    js = s.to_json()
    assert s.passed and js["schema"] == "hoam/1" and list(js) == ["schema", "suite", "verdict", "checks", "metadata"]
    json.dumps(js)


def test_unknown_forms():
    with pytest.raises(ValueError):
        suites.perturbation_suite("Z")
    with pytest.raises(ValueError):
        suites.order_suite("Z")
    with pytest.raises(ValueError):
        suites.fourier_suite("Z")


def test_alpha_word():
    assert suites.alpha_word("t*s") == pytest.approx(math.pi / 6 - math.pi / 2)
    assert suites.alpha_word("s*t^-1*s") == pytest.approx(-math.pi - math.pi / 6)


def test_type_relations_low_degree():
    assert all(r.passed for r in suites.type_relations())
    assert all(r.passed for r in suites.typem_relations(families=("zero_mode", "zero_mode_log")))


def test_parallel(monkeypatch):
    monkeypatch.setenv("HOAM_THREADS", "3")
    assert thread_count() == 3
    assert pmap(lambda x: x * x, range(20)) == [x * x for x in range(20)]
    monkeypatch.setenv("HOAM_THREADS", "0")
    assert thread_count() == 1
    monkeypatch.setenv("HOAM_THREADS", "x")
    with pytest.raises(ValueError):
        thread_count()
