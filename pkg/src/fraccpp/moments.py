"""Closed-form moments, covariances and long-range-dependence fits.

Notation: ``H(t)`` is the compound Poisson process with rates ``lambda_j``,
``delta = sum lambda_j``, jumps ``Y`` with ``P{Y = j} = lambda_j / delta``,
and ``H_beta(t)`` its time-fractional version.  ``q = delta / Gamma(1 + beta)``.

Moments of order ``r`` follow from differentiating the Mittag-Leffler
generating function with Hoppe's formula.  Only compositions of ``r`` with
every part ``n_i >= 1`` contribute, because the inner function vanishes at
the expansion point; the sums over such compositions are evaluated exactly
by a dynamic program over exponential generating coefficients.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np
from scipy import integrate

from . import specfun
from .dist import JumpLaw, RateSequence, _rates, jump_law

__all__ = [
    "MomentSpec",
    "LrdFit",
    "q_factor",
    "incomplete_beta",
    "cpp_moments",
    "cpp_cov",
    "cpp_corr",
    "tfpp_mean_var",
    "tfpp_cov",
    "inverse_stable_cov",
    "tfcpp_mean_var",
    "tfcpp_cov",
    "tfcpp_corr",
    "tfcpp_cov_asymptote",
    "tfcpp_overdispersion",
    "hoppe_coefficients",
    "hoppe_derivative",
    "composition_sum",
    "tfcpp_raw_moment",
    "tfcpp_factorial_moment",
    "tfcpp_moment",
    "lrd_fit",
]

MOMENT_KINDS = ("raw", "factorial", "central")


@dataclass(frozen=True)
class MomentSpec:
    """Order ``r``, time ``t`` and kind (raw, factorial or central) of a moment."""

    r: int
    t: float
    kind: str = "raw"

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("moment order r must be >= 1")
        if not self.t >= 0:
            raise ValueError("t must be >= 0")
        if self.kind not in MOMENT_KINDS:
            raise ValueError(f"kind must be one of {MOMENT_KINDS}")


@dataclass(frozen=True)
class LrdFit:
    """Least-squares fit ``log Corr(s, t) = log c(s) - gamma log t`` on a grid of ``t``."""

    s: float
    t_grid: tuple[float, ...]
    gamma: float
    gamma_se: float
    prefactor: float
    residual_norm: float
    method: str = "analytic"

    def __post_init__(self):
        grid = tuple(float(x) for x in self.t_grid)
        if len(grid) < 4 or any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("t grid must be strictly increasing with at least 4 points")
        object.__setattr__(self, "t_grid", grid)

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


def q_factor(beta: float) -> float:
    """``Q(beta) = (1/beta) (1/Gamma(2 beta) - 1/(beta Gamma(beta)^2))``, ``Var E_beta(t) = t^(2 beta) Q``."""
    if not 0 < beta <= 1:
        raise ValueError("beta must lie in (0, 1]")
    if beta == 1.0:
        return 0.0
    return specfun.inverse_stable_variance_factor(beta)


def _quad(f, a, b, what):
    val, err = integrate.quad(f, a, b, epsabs=0.0, epsrel=1e-12, limit=200)
    if not err <= 1e-9 * max(abs(val), 1e-300):
        raise ArithmeticError(f"quadrature for {what} did not converge (error estimate {err:.3g})")
    return val


def incomplete_beta(a: float, b: float, x: float) -> float:
    """``B(a, b; x) = int_0^x u^(a-1) (1-u)^(b-1) du`` for ``0 <= x <= 1``.

    Adaptive quadrature after ``v = u^a``, which removes the endpoint
    singularity: ``B = (1/a) int_0^(x^a) (1 - v^(1/a))^(b-1) dv``.
    """
    if not (a > 0 and b > 0):
        raise ValueError("a and b must be > 0")
    if not 0 <= x <= 1:
        raise ValueError("x must lie in [0, 1]")
    if x == 0:
        return 0.0
    if b < 1 and x == 1:
        # keep the (integrable) singularity at u = 1 away from the substitution
        return math.gamma(a) * math.gamma(b) / math.gamma(a + b)
    return _quad(lambda v: (1.0 - v ** (1.0 / a)) ** (b - 1.0), 0.0, x**a, "incomplete beta") / a


def _beta_gap(beta: float, x: float) -> float:
    """``beta B(beta, 1+beta; x) - x^beta`` computed without cancellation.

    Equals ``beta int_0^x u^(beta-1) ((1-u)^beta - 1) du``; with ``v = u^beta``
    this is ``int_0^(x^beta) expm1(beta log1p(-v^(1/beta))) dv``.
    """
    if x == 0:
        return 0.0
    return _quad(lambda v: math.expm1(beta * math.log1p(-(v ** (1.0 / beta)))),
                 0.0, x**beta, "covariance integral")


# ---------------------------------------------------------------------------
# compound Poisson process


def _ordered(s, t):
    if not 0 <= s <= t:
        raise ValueError("covariances need 0 <= s <= t (order the arguments)")


def cpp_moments(rates, t: float) -> tuple[float, float]:
    """``(t sum j lambda_j, t sum j^2 lambda_j)``."""
    rates = _rates(rates)
    if not t >= 0:
        raise ValueError("t must be >= 0")
    return t * rates.weighted_sum(1), t * rates.weighted_sum(2)


def cpp_cov(rates, s: float, t: float) -> float:
    """``Cov(H(s), H(t)) = s sum j^2 lambda_j`` for ``s <= t``."""
    _ordered(s, t)
    return s * _rates(rates).weighted_sum(2)


def cpp_corr(rates, s: float, t: float) -> float:
    """``sqrt(s / t)``, whatever the rates."""
    _ordered(s, t)
    rates = _rates(rates)
    if s == 0:
        return 0.0
    return cpp_cov(rates, s, t) / math.sqrt(cpp_moments(rates, s)[1] * cpp_moments(rates, t)[1])


# ---------------------------------------------------------------------------
# time-fractional Poisson process and inverse stable subordinator


def tfpp_mean_var(lam: float, t: float, beta: float) -> tuple[float, float]:
    """``(q t^beta, q t^beta + lam^2 t^(2 beta) Q(beta))`` with ``q = lam / Gamma(1+beta)``."""
    q = lam / math.gamma(1.0 + beta)
    mean = q * t**beta
    return mean, mean + lam**2 * t ** (2 * beta) * q_factor(beta)


def inverse_stable_cov(beta: float, s: float, t: float) -> float:
    """``Cov(E_beta(s), E_beta(t))`` for ``0 <= s <= t``.

    ``(beta B(beta,1+beta) s^(2beta) + beta t^(2beta) B(beta,1+beta; s/t) - (st)^beta) / Gamma(1+beta)^2``.
    """
    _ordered(s, t)
    if not 0 < beta <= 1:
        raise ValueError("beta must lie in (0, 1]")
    if s == 0 or beta == 1.0:
        return 0.0
    g2 = math.gamma(1.0 + beta) ** 2
    full = beta * math.gamma(beta) * math.gamma(1.0 + beta) / math.gamma(1.0 + 2.0 * beta)
    return (full * s ** (2 * beta) + t ** (2 * beta) * _beta_gap(beta, s / t)) / g2


def tfpp_cov(lam: float, s: float, t: float, beta: float) -> float:
    """``q s^beta + d s^(2beta) + q^2 [beta t^(2beta) B(beta,1+beta; s/t) - (st)^beta]``.

    With ``d = beta q^2 B(beta, 1+beta)``; written as ``q s^beta + lam^2 Cov(E(s), E(t))``.
    """
    q = lam / math.gamma(1.0 + beta)
    return q * s**beta + lam**2 * inverse_stable_cov(beta, s, t)


# ---------------------------------------------------------------------------
# time-fractional compound Poisson process


def tfcpp_mean_var(rates, t: float, beta: float) -> tuple[float, float]:
    """Mean ``q t^beta E(Y)`` and variance ``q t^beta E(Y^2) + E(Y)^2 delta^2 t^(2beta) Q(beta)``."""
    rates = _rates(rates)
    if not t >= 0:
        raise ValueError("t must be >= 0")
    law = jump_law(rates, 1)
    q = rates.delta / math.gamma(1.0 + beta)
    mean = q * t**beta * law.mean
    var = q * t**beta * law.second_moment + (law.mean * rates.delta) ** 2 * t ** (2 * beta) * q_factor(beta)
    return mean, var


def tfcpp_overdispersion(rates, t: float, beta: float) -> float:
    """``Var - Mean = (q t^beta / delta) sum j(j-1) lambda_j + E(Y)^2 delta^2 t^(2beta) Q(beta)``."""
    mean, var = tfcpp_mean_var(rates, t, beta)
    return var - mean


def tfcpp_cov(rates, s: float, t: float, beta: float) -> float:
    """``Var(Y) q s^beta + E(Y)^2 Cov(N_beta(s, delta), N_beta(t, delta))`` for ``s <= t``."""
    rates = _rates(rates)
    _ordered(s, t)
    law = jump_law(rates, 1)
    q = rates.delta / math.gamma(1.0 + beta)
    var_y = law.second_moment - law.mean**2
    return var_y * q * s**beta + law.mean**2 * tfpp_cov(rates.delta, s, t, beta)


def tfcpp_corr(rates, s: float, t: float, beta: float) -> float:
    if s == 0:
        return 0.0
    return tfcpp_cov(rates, s, t, beta) / math.sqrt(
        tfcpp_mean_var(rates, s, beta)[1] * tfcpp_mean_var(rates, t, beta)[1])


def tfcpp_cov_asymptote(rates, s: float, beta: float) -> float:
    """Large-``t`` limit ``q s^beta E(Y^2) + delta^2 E(Y)^2 s^(2beta) / Gamma(2beta + 1)``."""
    rates = _rates(rates)
    law = jump_law(rates, 1)
    q = rates.delta / math.gamma(1.0 + beta)
    return (q * s**beta * law.second_moment
            + (rates.delta * law.mean) ** 2 * s ** (2 * beta) / math.gamma(2 * beta + 1))


# ---------------------------------------------------------------------------
# Hoppe's formula and higher moments


def _taylor_power(coef: Sequence, j: int, m: int) -> list:
    """Taylor coefficients up to degree ``m`` of the ``j``-th power of a series."""
    out = [coef[0] * 0 + 1] + [coef[0] * 0] * m
    for _ in range(j):
        new = [coef[0] * 0] * (m + 1)
        for a, x in enumerate(out):
            if x:
                for b in range(m + 1 - a):
                    new[a + b] += x * coef[b]
        out = new
    return out


def hoppe_coefficients(k: int, m: int, f_derivs: Sequence) -> object:
    """``A_{k,m}(f) = sum_j C(k,j) (-f)^(k-j) (f^j)^(m)`` at one point.

    ``f_derivs = (f, f', .., f^(m))`` evaluated at that point (exact
    Fractions stay exact).  ``A_{0,0} = 1`` and ``A_{0,m} = 0`` for ``m >= 1``.
    """
    if not 0 <= k <= m:
        raise ValueError("need 0 <= k <= m")
    if len(f_derivs) < m + 1:
        raise ValueError("need derivatives f, f', ..., f^(m)")
    if k == 0:
        return 1 if m == 0 else 0
    coef = [d / math.factorial(i) for i, d in enumerate(f_derivs[: m + 1])]
    f0 = f_derivs[0]
    total = 0
    for j in range(k + 1):
        power_m = _taylor_power(coef, j, m)[m] * math.factorial(m)
        total += math.comb(k, j) * (-f0) ** (k - j) * power_m
    return total


def hoppe_derivative(g_derivs: Sequence, f_derivs: Sequence, m: int):
    """``(g o f)^(m) = sum_k g^(k)(f) / k! A_{k,m}(f)``; ``g_derivs[k] = g^(k)`` at ``f``."""
    return sum(g_derivs[k] / math.factorial(k) * hoppe_coefficients(k, m, f_derivs)
               for k in range(m + 1))


def composition_sum(weights: Sequence[Fraction], k: int, r: int) -> Fraction:
    """``sum over n_1+..+n_k = r, n_i >= 1`` of ``multinom(r; n) prod w[n_i]``.

    ``weights[n]`` is used for ``n >= 1``.  Computed as ``r!`` times the
    coefficient of ``x^r`` in ``(sum_n w_n x^n / n!)^k``.
    """
    if k == 0:
        return Fraction(1) if r == 0 else Fraction(0)
    egf = [Fraction(0)] + [Fraction(weights[n]) / math.factorial(n) for n in range(1, r + 1)]
    return _taylor_power(egf, k, r)[r] * math.factorial(r)


def _moment_sum(rates: RateSequence, t: float, beta: float, r: int, weight) -> float:
    law = jump_law(rates, 1)
    w = [Fraction(0)] + [weight(law, n) for n in range(1, r + 1)]
    terms = []
    for k in range(1, r + 1):
        c = float(composition_sum(w, k, r))
        terms.append(c * math.exp(k * (beta * math.log(t) + math.log(rates.delta))
                                  - math.lgamma(k * beta + 1.0)))
    return math.fsum(terms)


def tfcpp_raw_moment(rates, t: float, beta: float, r: int) -> float:
    """``E H_beta(t)^r = sum_k t^(k beta) delta^k / Gamma(k beta + 1) * S_k``.

    ``S_k = sum_{n_i >= 1} multinom(r; n) prod E(Y^(n_i))``, which equals
    ``sum_j (-1)^(k-j) C(k, j) E(T_j^r)`` for ``T_j = Y_1 + .. + Y_j``.
    """
    rates = _rates(rates)
    if r < 1:
        raise ValueError("r must be >= 1")
    if not 0 < beta <= 1:
        raise ValueError("beta must lie in (0, 1]")
    if t == 0:
        return 0.0
    return _moment_sum(rates, t, beta, r, lambda law, n: law.moment(n))


def tfcpp_factorial_moment(rates, t: float, beta: float, r: int) -> float:
    """``E H(H-1)..(H-r+1)``: the raw-moment formula with factorial moments of ``Y``."""
    rates = _rates(rates)
    if r < 1:
        raise ValueError("r must be >= 1")
    if not 0 < beta <= 1:
        raise ValueError("beta must lie in (0, 1]")
    if t == 0:
        return 0.0
    return _moment_sum(rates, t, beta, r, lambda law, n: law.factorial_moment(n))


def tfcpp_moment(rates, beta: float, spec: MomentSpec) -> float:
    """Raw, factorial or central moment described by ``spec``."""
    if spec.kind == "raw":
        return tfcpp_raw_moment(rates, spec.t, beta, spec.r)
    if spec.kind == "factorial":
        return tfcpp_factorial_moment(rates, spec.t, beta, spec.r)
    mean = tfcpp_raw_moment(rates, spec.t, beta, 1)
    raw = [1.0] + [tfcpp_raw_moment(rates, spec.t, beta, i) for i in range(1, spec.r + 1)]
    return math.fsum(math.comb(spec.r, i) * raw[i] * (-mean) ** (spec.r - i)
                     for i in range(spec.r + 1))


# ---------------------------------------------------------------------------
# long-range dependence


def _fit_loglog(t_grid: np.ndarray, corr: np.ndarray) -> tuple[float, float, float, float]:
    if not np.all(np.isfinite(corr) & (corr > 0)):
        raise ArithmeticError("correlation estimate is not positive on the whole grid; "
                              "use more replications or a shorter grid")
    x = np.log(t_grid)
    y = np.log(corr)
    a = np.vstack([np.ones_like(x), x]).T
    coef, *_ = np.linalg.lstsq(a, y, rcond=None)
    resid = y - a @ coef
    dof = len(x) - 2
    s2 = float(resid @ resid) / dof if dof > 0 else 0.0
    cov = s2 * np.linalg.inv(a.T @ a)
    return -float(coef[1]), math.sqrt(max(cov[1, 1], 0.0)), math.exp(coef[0]), float(np.linalg.norm(resid))


def _check_grid(s, t_grid):
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.ndim != 1 or t_grid.size < 4 or np.any(np.diff(t_grid) <= 0):
        raise ValueError("degenerate grid: need at least 4 strictly increasing times")
    if not s > 0 or t_grid[0] < s:
        raise ValueError("degenerate grid: need 0 < s <= t for every grid point")
    if t_grid[-1] < 100.0 * s:
        raise ValueError("degenerate grid: the t grid must reach two decades beyond s")
    return t_grid


def lrd_fit(kind: str, rates, beta: float, s: float, t_grid: Sequence[float], rng=None,
            method: str = "analytic", n_replications: int = 100_000, n_chunks: int = 20) -> LrdFit:
    """Fit the decay exponent of ``t -> Corr(X(s), X(t))``.

    ``kind`` is ``"cpp"`` or ``"tfcpp"``.  ``method`` selects the correlation
    curve: ``"analytic"`` (exact covariance), ``"asymptotic"`` (large-``t``
    covariance limit over the exact standard deviations; ``tfcpp`` only) or
    ``"mc"`` (simulated paths; ``gamma_se`` from batch estimates).
    """
    from . import process

    rates = _rates(rates)
    t_grid = _check_grid(s, t_grid)
    if kind not in ("cpp", "tfcpp"):
        raise ValueError("kind must be 'cpp' or 'tfcpp'")
    if method in ("analytic", "asymptotic"):
        if kind == "cpp":
            if method == "asymptotic":
                raise ValueError("the asymptotic form applies to the fractional process only")
            corr = np.array([cpp_corr(rates, s, t) for t in t_grid])
        elif method == "analytic":
            corr = np.array([tfcpp_corr(rates, s, t, beta) for t in t_grid])
        else:
            num = tfcpp_cov_asymptote(rates, s, beta)
            sd_s = math.sqrt(tfcpp_mean_var(rates, s, beta)[1])
            corr = np.array([num / (sd_s * math.sqrt(tfcpp_mean_var(rates, t, beta)[1]))
                             for t in t_grid])
        gamma, se, pref, res = _fit_loglog(t_grid, corr)
        return LrdFit(s, tuple(t_grid), gamma, se, pref, res, method)
    if method != "mc":
        raise ValueError("method must be 'analytic', 'asymptotic' or 'mc'")

    stream = process._stream(rng)
    times = np.concatenate(([s], t_grid))
    sizes = [n_replications // n_chunks + (i < n_replications % n_chunks) for i in range(n_chunks)]
    draws = []
    for i, size in enumerate(sizes):
        sub = stream.spawn(i)
        if kind == "cpp":
            draws.append(process.cpp_at_times(rates, times, size, sub))
        else:
            draws.append(process.tfcpp_at_times(rates, beta, times, size, sub))

    def corr_curve(x):
        # degenerate tiny batches give nan here and are dropped by the caller
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            c = np.corrcoef(x, rowvar=False)
        return c[0, 1:]

    allx = np.concatenate(draws)
    gamma, _, pref, res = _fit_loglog(t_grid, corr_curve(allx))
    batch = []
    for d in draws:
        try:
            batch.append(_fit_loglog(t_grid, corr_curve(d))[0])
        except ArithmeticError:
            continue  # a noisy batch; the pooled fit above succeeded
    if len(batch) < 2:
        raise ArithmeticError("too few usable batches for a standard error; use more replications")
    se = float(np.std(batch, ddof=1) / math.sqrt(len(batch)))
    return LrdFit(s, tuple(t_grid), gamma, se, pref, res, "mc")
