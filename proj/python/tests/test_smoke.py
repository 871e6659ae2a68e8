import math
from fractions import Fraction

import pytest

import dioph

INSTANCE = """
field = [-2, 0, 1]
places = ["inf"]
r = [12, 1]
x = [[2, 3], [12, 17]]
a = [[1, [0, 1]], [1, [0, 1]]]
delta = "1/5"
"""


def test_height_matches_log_norm():
    h = dioph.height(3, 4)
    assert h["value"] == pytest.approx(math.log(5.0), rel=1e-15)


def test_mu_is_exact():
    # mu_2(t) = t^2/2 (1 - 2t/3) on [0, 1].
    t = Fraction(1, 3)
    assert Fraction(dioph.mu(2, "1/3")) == t * t / 2 * (1 - 2 * t / 3)
    assert dioph.mu(2, 1) == "1/6"
    with pytest.raises(TypeError):
        dioph.mu(2, 0.5)


def test_convergents_of_sqrt2():
    assert dioph.generate_convergents([-2, 0, 1], 5) == [(1, 1), (3, 2), (7, 5), (17, 12), (41, 29)]
    with pytest.raises(ValueError, match="NotRealQuadratic"):
        dioph.generate_convergents([1, 0, 1], 3)


def test_param_pipeline_values():
    p = dioph.param_pipeline(2, 2, "1/5", [12, 1])
    assert p["all_pass"]
    assert p["eps"] == "1/12"
    assert p["t_a"]["value"] == pytest.approx(math.sqrt(0.8), abs=1e-12)
    assert p["u_tilde"]["value"] == pytest.approx(math.sqrt(17 / 30), abs=1e-12)
    assert p["w"]["value"] == pytest.approx(1.6035764624, abs=1e-9)


def test_run_matches_cli_contract():
    assert "melb" in dioph.command_names()
    code, report = dioph.run("melb", INSTANCE)
    assert code == 0
    assert report["verdict"] == "True"
    code, report = dioph.run("melb", "r = [12, 1")
    assert code == 2
    assert report["error"]["kind"] == "InputError"
