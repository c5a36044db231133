import math

import numpy as np
import pytest

import bipdo


def test_product_of_modes():
    x = np.array(bipdo.grid_points(32))
    f = np.exp(2j * x)
    g = np.exp(3j * x)
    out = bipdo.apply_bilinear("1", f, g)
    assert np.max(np.abs(out - np.exp(5j * x))) < 1e-12


def test_round_trip_and_parseval():
    rng = np.random.default_rng(3)
    v = rng.normal(size=16) + 1j * rng.normal(size=16)
    spec = bipdo.transform(v)
    assert np.max(np.abs(bipdo.inverse_transform(spec) - v)) < 1e-12
    lhs = np.sum(np.abs(v) ** 2) * (2 * math.pi / 16)
    assert abs(lhs - 2 * math.pi * np.sum(np.abs(spec) ** 2)) < 1e-12 * lhs


def test_sobolev_single_mode():
    f = bipdo.sample_function("exp(3*i*x)", 32)
    assert abs(bipdo.sobolev_norm(f, 2.0, 2.0) - 10 * math.sqrt(2 * math.pi)) < 1e-12


def test_parser_errors():
    with pytest.raises(ValueError, match="offset 8"):
        bipdo.parse("1/(alpha")


def test_differentiate_and_evaluate():
    d = bipdo.differentiate("alpha^2", "alpha")
    assert bipdo.evaluate(d, alpha=1.5) == pytest.approx(3.0)


def test_check_class_discriminates():
    report = bipdo.check_class("atan(beta-alpha)", "classical", order=1)
    assert not report["pass"]
    report = bipdo.check_class("atan(beta-alpha)", "classical_theta", theta=math.pi / 4, order=1)
    assert report["pass"]


def test_adjoint_closed_form_gaussian():
    sigma = "exp(-(alpha^2+beta^2))"
    adj = bipdo.adjoint_exact(sigma, 1, 16)
    sampled = bipdo.sample_symbol(sigma, 16)
    # sigma*1(alpha, beta) = sigma(-alpha-beta, beta) on the reflection-closed block
    n = 16
    err = 0.0
    for j in range(n):
        for l in range(n):
            k, m = j - n // 2, l - n // 2
            r = -k - m
            if -n // 2 < r < n // 2:
                err = max(err, abs(adj[0, j, l] - sampled[0, r + n // 2, l]))
    assert err < 1e-12


def test_expansion_json_and_angles():
    series = bipdo.adjoint_expansion("sin(x)*exp(-alpha^2)", 1, 2)
    assert series["orders"] == [2, 0]
    assert len(series["terms"]) == 2
    theta = 0.4
    assert bipdo.adjoint_angle(bipdo.adjoint_angle(theta, 1), 1) == pytest.approx(theta, abs=1e-14)


def test_identity_suite_passes_for_constant_symbol():
    report = bipdo.identity_suite("1", n=16, seed=1)
    failed = [e["name"] for e in report["entries"] if not e["pass"]]
    assert failed == []


def test_cli_exit_codes():
    code, out, _ = bipdo.run_cli(["apply", "--symbol", "1", "--f", "exp(i*2*x)", "--g", "exp(i*3*x)", "--n", "8"])
    assert code == 0 and '"schema_version": 1' in out
    code, _, err = bipdo.run_cli(["frobnicate"])
    assert code == 2 and err
