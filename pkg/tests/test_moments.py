from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate, special

from conftest import SEEDS, within_se
from fraccpp import dist, moments, process, specfun
from fraccpp.dist import RateSequence
from fraccpp.process import RngStream

LAM = (0.4, 0.3, 0.2)


def test_q_factor():
    assert moments.q_factor(1.0) == 0.0
    # beta = 1/2: E(1) is half-normal with E E^2 = 2, E E = 2/sqrt(pi)
    assert moments.q_factor(0.5) == pytest.approx(2 - 4 / math.pi, rel=1e-14)
    with pytest.raises(ValueError):
        moments.q_factor(1.5)


@pytest.mark.parametrize("a,b,x", [(0.5, 1.5, 0.3), (2.0, 0.7, 0.9), (0.3, 1.3, 1.0), (1.2, 0.4, 1.0)])
def test_incomplete_beta_against_scipy(a, b, x):
    ref = special.betainc(a, b, x) * special.beta(a, b)
    assert moments.incomplete_beta(a, b, x) == pytest.approx(ref, rel=1e-11)


def test_incomplete_beta_validation():
    assert moments.incomplete_beta(0.5, 0.5, 0.0) == 0.0
    with pytest.raises(ValueError):
        moments.incomplete_beta(0.5, 0.5, 1.5)
    with pytest.raises(ValueError):
        moments.incomplete_beta(-1.0, 0.5, 0.5)


def test_cpp_moments_and_correlation():
    r = RateSequence(LAM)
    m, v = moments.cpp_moments(r, 2.0)
    assert m == pytest.approx(2.0 * r.weighted_sum(1)) and v == pytest.approx(2.0 * r.weighted_sum(2))
    assert moments.cpp_cov(r, 1.0, 3.0) == pytest.approx(r.weighted_sum(2))
    assert moments.cpp_corr(r, 1.0, 4.0) == pytest.approx(0.5, rel=1e-15)
    with pytest.raises(ValueError):
        moments.cpp_cov(r, 3.0, 1.0)


def test_tfpp_mean_var_beta_one():
    m, v = moments.tfpp_mean_var(1.7, 2.0, 1.0)
    assert m == pytest.approx(3.4) and v == pytest.approx(3.4)


@pytest.mark.parametrize("beta", [0.35, 0.6, 0.85])
def test_inverse_stable_cov_diagonal_is_variance(beta):
    s = 1.3
    assert moments.inverse_stable_cov(beta, s, s) == pytest.approx(
        s ** (2 * beta) * specfun.inverse_stable_variance_factor(beta), rel=1e-10)


@pytest.mark.parametrize("beta", [0.4, 0.7])
def test_inverse_stable_cov_against_quadrature(beta):
    # E[E(s)E(t)] = int_0^s ((t-u)^b + (s-u)^b) u^(b-1) du / (Gamma(b) Gamma(1+b))
    s, t = 0.8, 2.5
    g = math.gamma(beta) ** 2
    i1 = integrate.quad(lambda u: (t - u) ** beta * u ** (beta - 1), 0, s, limit=200)[0]
    i2 = integrate.quad(lambda u: (s - u) ** beta * u ** (beta - 1), 0, s, limit=200)[0]
    cross = (i1 + i2) / (beta * g)
    mean = lambda x: specfun.inverse_stable_mean(beta, x)
    assert moments.inverse_stable_cov(beta, s, t) == pytest.approx(cross - mean(s) * mean(t), rel=1e-8)


def test_tfcpp_mean_var_against_pmf():
    for beta in (0.5, 0.9):
        tab = dist.tfcpp_pmf_table(LAM, 1.4, beta)
        m, v = moments.tfcpp_mean_var(LAM, 1.4, beta)
        assert tab.mean() == pytest.approx(m, abs=1e-8)
        assert tab.variance() == pytest.approx(v, abs=1e-8)


@settings(max_examples=20)
@given(st.floats(0.1, 1.0), st.floats(0.05, 5.0))
def test_tfcpp_overdispersed(beta, t):
    m, v = moments.tfcpp_mean_var(LAM, t, beta)
    assert v > m
    r = RateSequence(LAM)
    # (q t^beta / delta) sum j(j-1) lambda_j + E(Y)^2 delta^2 t^(2 beta) Q(beta), q = delta / Gamma(1+beta)
    closed = (t**beta / math.gamma(1 + beta) * (r.weighted_sum(2) - r.weighted_sum(1))
              + r.weighted_sum(1) ** 2 * t ** (2 * beta) * moments.q_factor(beta))
    assert moments.tfcpp_overdispersion(r, t, beta) == pytest.approx(closed, rel=1e-12)
    assert moments.tfcpp_overdispersion(r, t, beta) == pytest.approx(v - m, rel=1e-12)


def test_tfcpp_beta_one_reduces_to_cpp():
    r = RateSequence(LAM)
    assert moments.tfcpp_mean_var(r, 2.0, 1.0) == pytest.approx(moments.cpp_moments(r, 2.0), rel=1e-12)
    assert moments.tfcpp_cov(r, 1.0, 3.0, 1.0) == pytest.approx(moments.cpp_cov(r, 1.0, 3.0), rel=1e-12)


@settings(max_examples=20)
@given(st.floats(0.2, 0.95), st.floats(0.1, 3.0), st.floats(1.0, 5.0))
def test_tfcpp_cov_properties(beta, s, ratio):
    t = s * ratio
    c = moments.tfcpp_cov(LAM, s, t, beta)
    vs = moments.tfcpp_mean_var(LAM, s, beta)[1]
    vt = moments.tfcpp_mean_var(LAM, t, beta)[1]
    assert c > 0
    assert c <= math.sqrt(vs * vt) * (1 + 1e-12)
    assert moments.tfcpp_cov(LAM, s, s, beta) == pytest.approx(vs, rel=1e-10)


def test_tfcpp_cov_monte_carlo():
    beta, s, t = 0.6, 1.0, 2.0
    est = process.mc_estimate("covariance", lambda g, n: process.tfcpp_at_times(LAM, beta, [s, t], n, g),
                              100_000, RngStream(SEEDS["tfcpp_cov"]))
    assert within_se(est.estimate, moments.tfcpp_cov(LAM, s, t, beta), est.std_error)


def test_cov_asymptote_is_limit():
    beta, s = 0.6, 1.0
    exact = moments.tfcpp_cov(LAM, s, 1e8, beta)
    assert exact == pytest.approx(moments.tfcpp_cov_asymptote(LAM, s, beta), rel=1e-3)


def test_composition_sum_small_cases():
    w = [Fraction(0), Fraction(2), Fraction(3), Fraction(5)]
    # k=1: w_r ; k=r: r! w_1^r
    assert moments.composition_sum(w, 1, 3) == 5
    assert moments.composition_sum(w, 3, 3) == 6 * 8
    # k=2, r=3: compositions (1,2),(2,1) each multinomial 3 -> 2*3*2*3
    assert moments.composition_sum(w, 2, 3) == 36
    assert moments.composition_sum(w, 0, 0) == 1


def test_hoppe_matches_faa_di_bruno():
    # g(f(x)) with g = exp, f = sin at 0: derivatives of exp(sin x) at 0 are 1,1,1,0,-3,-8
    f = [0, 1, 0, -1, 0, 1]
    g = [1] * 6
    got = [moments.hoppe_derivative(g, f, m) for m in range(6)]
    assert [float(x) for x in got] == pytest.approx([1, 1, 1, 0, -3, -8])


@pytest.mark.parametrize("beta", [0.5, 0.8, 1.0])
def test_raw_moments_against_pmf(beta):
    t = 1.2
    tab = dist.tfcpp_pmf_table(LAM, t, beta, n_max=120)
    n = np.arange(tab.probs.size, dtype=float)
    for r in range(1, 5):
        ref = math.fsum(n**r * tab.probs)
        assert moments.tfcpp_raw_moment(LAM, t, beta, r) == pytest.approx(ref, rel=1e-9)
        fref = math.fsum(math.prod(n - i for i in range(r)) * tab.probs) if r > 1 else ref
        fact = np.array([math.perm(int(k), r) for k in n], dtype=float)
        assert moments.tfcpp_factorial_moment(LAM, t, beta, r) == pytest.approx(
            math.fsum(fact * tab.probs), rel=1e-9)


def test_moment_spec_kinds():
    beta, t = 0.7, 2.0
    m, v = moments.tfcpp_mean_var(LAM, t, beta)
    assert moments.tfcpp_moment(LAM, beta, moments.MomentSpec(2, t, "central")) == pytest.approx(v, rel=1e-10)
    assert moments.tfcpp_moment(LAM, beta, moments.MomentSpec(2, t, "raw")) == pytest.approx(v + m * m, rel=1e-12)
    assert moments.tfcpp_moment(LAM, beta, moments.MomentSpec(2, t, "factorial")) == pytest.approx(
        v + m * m - m, rel=1e-12)
    with pytest.raises(ValueError):
        moments.MomentSpec(0, 1.0)
    with pytest.raises(ValueError):
        moments.MomentSpec(1, 1.0, "weird")


def test_lrd_fit_analytic():
    grid = np.geomspace(1e2, 1e4, 9)
    cpp = moments.lrd_fit("cpp", LAM, 1.0, 1.0, grid)
    assert cpp.gamma == pytest.approx(0.5, abs=1e-9)
    assert cpp.to_dict()["method"] == "analytic"
    asym = moments.lrd_fit("tfcpp", LAM, 0.6, 1.0, np.geomspace(1e4, 1e6, 9), method="asymptotic")
    assert asym.gamma == pytest.approx(0.6, abs=1e-2)


def test_lrd_grid_validation():
    with pytest.raises(ValueError, match="degenerate"):
        moments.lrd_fit("cpp", LAM, 1.0, 1.0, [10, 20, 30])
    with pytest.raises(ValueError, match="degenerate"):
        moments.lrd_fit("cpp", LAM, 1.0, 1.0, [2, 3, 4, 5])
    with pytest.raises(ValueError):
        moments.lrd_fit("cpp", LAM, 1.0, 1.0, np.geomspace(1e2, 1e4, 5), method="asymptotic")
    with pytest.raises(ValueError):
        moments.LrdFit(1.0, (1, 2, 3), 0.5, 0.0, 1.0, 0.0)
