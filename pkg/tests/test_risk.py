from __future__ import annotations

import json
import math

import numpy as np
import pytest
from scipy import stats

from conftest import SEEDS, within_se
from fraccpp import dist, moments, process, risk, specfun
from fraccpp.process import RngStream
from fraccpp.risk import HittingSpec, RiskModel

LAM = (0.5, 0.5)


def test_model_validation():
    with pytest.raises(ValueError):
        RiskModel(0.0, LAM, 0.7)
    with pytest.raises(ValueError):
        RiskModel(1.0, LAM, 1.3)
    assert RiskModel(1.0, LAM).rates.delta == 1.0
    with pytest.raises(ValueError):
        HittingSpec(0, (1.0,))
    with pytest.raises(ValueError):
        HittingSpec(1, (2.0, 1.0))


@pytest.mark.parametrize("beta", [0.4, 0.8, 1.0])
def test_level_one_hitting_is_ml_law(beta):
    s = np.array([0.01, 0.3, 1.0, 5.0, 40.0])
    got = risk.hitting_time_cdf(LAM, beta, 1, s)
    np.testing.assert_allclose(got, specfun.ml_dist_cdf(beta, 1.0, s), atol=1e-12)
    assert risk.hitting_time_cdf(LAM, beta, 1, 0.0) == 0.0


def test_hitting_cdf_monotone_in_s_and_k():
    s = np.geomspace(1e-3, 1e3, 40)
    prev = None
    for k in (1, 2, 4):
        c = risk.hitting_time_cdf(LAM, 0.7, k, s)
        assert np.all(np.diff(c) >= -1e-14)
        if prev is not None:
            assert np.all(c <= prev + 1e-14)
        prev = c


def test_hitting_cdf_beta_one_unit_jumps_is_gamma():
    s = np.array([0.5, 2.0, 6.0])
    np.testing.assert_allclose(risk.hitting_time_cdf((1.5,), 1.0, 3, s), stats.gamma(3, scale=1 / 1.5).cdf(s),
                               rtol=1e-12)


def test_hitting_pdf_matches_ml_density():
    s = [0.2, 1.0, 3.0]
    np.testing.assert_allclose(risk.hitting_time_pdf(LAM, 0.6, 1, s), specfun.ml_dist_pdf(0.6, 1.0, np.array(s)),
                               rtol=1e-7)
    with pytest.raises(ValueError):
        risk.hitting_time_pdf(LAM, 0.6, 1, [1.0])
    with pytest.raises(ValueError):
        risk.hitting_time_pdf(LAM, 0.6, 1, [0.0, 1.0])


def test_interpolant_accuracy():
    interp = risk.hitting_time_cdf_interp(LAM, 0.7, 3, 1e-2, 1e3, n_grid=600)
    assert interp.max_error < 1e-8
    s = np.array([1e-3, 0.05, 3.3, 700.0, 5e3])
    np.testing.assert_allclose(interp(s), risk.hitting_time_cdf(LAM, 0.7, 3, s), atol=1e-8)


def test_simulated_hitting_times_ks():
    x = process.hitting_times(LAM, 0.7, 2, 20_000, RngStream(SEEDS["hitting"]))
    interp = risk.hitting_time_cdf_interp(LAM, 0.7, 2, max(x.min(), 1e-8), x.max() * 1.01, n_grid=600)
    assert stats.kstest(x, interp).pvalue > 0.01


def test_risk_stats_closed_form():
    m = RiskModel(2.0, (0.4, 0.3), 0.6)
    mean, var = risk.risk_stats(m, 3.0)
    hm, hv = moments.tfcpp_mean_var((0.4, 0.3), 3.0, 0.6)
    assert mean == pytest.approx(6.0 - hm) and var == hv
    assert risk.risk_stats(m, 0.0) == (0.0, 0.0)


def test_risk_paths_ensemble_mean():
    m = RiskModel(2.0, LAM, 0.7)
    ens = risk.risk_paths(m, 2.0, 4000, RngStream(SEEDS["risk"]), n_times=5)
    for j, t in enumerate(ens.times):
        mean, var = risk.risk_stats(m, float(t))
        assert within_se(ens.reserve[:, j].mean(), mean, math.sqrt(max(var, 1e-300) / 4000))
    assert np.all(ens.min_reserve <= 0)
    assert np.all(ens.min_reserve <= ens.reserve.min(axis=1) + 1e-12)


def test_tiny_premium_ruin_equals_claim_before_horizon():
    # with c -> 0 the reserve is negative as soon as a claim arrives, so ruin by T
    # is the event {T_1 <= T}
    T = 1.5
    m = RiskModel(1e-300, LAM, 0.7)
    ens = risk.risk_paths(m, T, 3000, RngStream(SEEDS["risk"]).spawn(5))
    p = risk.hitting_time_cdf(LAM, 0.7, 1, T)
    assert within_se(ens.ruin_frequency, p, math.sqrt(p * (1 - p) / 3000))


def test_ensemble_serialization_and_determinism():
    m = RiskModel(1.0, LAM, 0.8)
    a = risk.risk_paths(m, 1.0, 50, 11, n_times=3)
    b = risk.risk_paths(m, 1.0, 50, RngStream(11), n_times=3)
    assert a.to_csv() == b.to_csv()
    summary = json.loads(a.summary_json())
    assert summary["kind"] == "risk-summary" and summary["n_paths"] == 50
    assert "empirical" in summary["note"]
    assert a.to_csv().splitlines()[0] == "path,t,reserve"
    with pytest.raises(ValueError):
        risk.risk_paths(m, 1.0, 0)
    with pytest.raises(ValueError):
        risk.risk_paths(m, 0.0, 10)
