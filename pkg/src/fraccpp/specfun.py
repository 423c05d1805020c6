"""Mittag-Leffler, Wright and subordinator-density special functions.

All functions take real arguments and accept either scalars or numpy arrays
for the main argument.  They are evaluated from their defining power series
through :mod:`fraccpp._series`, which switches to mpmath accumulation when
double precision cannot resolve the cancellation of an alternating series.

Documented accuracy domain
--------------------------
For the Mittag-Leffler family the relative error is below ``series_tol``
for real ``z`` with ``|z| ** (1 / alpha) <= 100`` when ``z < 0`` (the
alternating terms then peak near ``exp(100)``, and accumulation runs with
about 45 guard digits above that), and for ``z >= 0`` as long as the value
fits in a double.  Beyond that bound the same algorithm still converges,
but the working precision and the cost grow like ``|z| ** (1 / alpha)``.
No asymptotic expansion is used.  Complex arguments are not supported.

The M-Wright function uses its series for ``z <= 1`` and, beyond that, a
positive integral over ``(0, pi)`` derived from the Kanter representation
of the one-sided stable law, which avoids the cancellation that makes the
alternating series impractical for ``beta`` near 1.  Values whose
asymptotic size falls below the smallest subnormal double are returned as
0.0.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate, special

from ._series import (
    DEFAULT_MAX_TERMS,
    DEFAULT_TOL,
    SeriesConvergenceError,
    evaluate,
    mwright_series,
    prabhakar_series,
    wright_series,
)

__all__ = [
    "MLParams",
    "SubordinatorQuery",
    "SeriesConvergenceError",
    "ml_one",
    "ml_two",
    "ml_prabhakar",
    "ml_derivative",
    "ml_dist_cdf",
    "ml_dist_pdf",
    "ml_convolution_pdf",
    "wright",
    "m_wright",
    "stable_density",
    "inv_stable_density",
    "tfpp_pmf",
    "inverse_stable_mean",
    "inverse_stable_variance_factor",
]

# log of the smallest positive subnormal double, with margin
_LOG_UNDERFLOW = -750.0


@dataclass(frozen=True)
class MLParams:
    """Parameter bundle for the Mittag-Leffler family.

    ``alpha`` and ``beta`` are the two ML parameters, ``gamma`` the
    Prabhakar exponent (1 for the two-parameter function).
    """

    alpha: float
    beta: float = 1.0
    gamma: float = 1.0
    series_tol: float = DEFAULT_TOL
    max_terms: int = DEFAULT_MAX_TERMS

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError(f"alpha must be > 0, got {self.alpha}")
        if not self.beta > 0:
            raise ValueError(f"beta must be > 0, got {self.beta}")
        if not self.gamma > 0:
            raise ValueError(f"gamma must be > 0, got {self.gamma}")
        if not self.series_tol > 0:
            raise ValueError("series_tol must be > 0")
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")

    def __call__(self, z):
        return ml_prabhakar(self.alpha, self.beta, self.gamma, z,
                            tol=self.series_tol, max_terms=self.max_terms)


@dataclass(frozen=True)
class SubordinatorQuery:
    """Point ``x`` at time ``t`` for the beta-stable subordinator or its inverse."""

    beta: float
    t: float
    x: float

    def __post_init__(self):
        if not 0 < self.beta < 1:
            raise ValueError(f"beta must lie in (0, 1), got {self.beta}")
        if not self.t > 0:
            raise ValueError(f"t must be > 0, got {self.t}")
        if not np.all(np.asarray(self.x) > 0):
            raise ValueError("x must be > 0")


def ml_one(alpha: float, z, *, tol: float = DEFAULT_TOL, max_terms: int = DEFAULT_MAX_TERMS):
    """One-parameter Mittag-Leffler function ``sum_k z^k / Gamma(alpha k + 1)``."""
    return ml_two(alpha, 1.0, z, tol=tol, max_terms=max_terms)


def ml_two(alpha: float, beta: float, z, *, tol: float = DEFAULT_TOL,
           max_terms: int = DEFAULT_MAX_TERMS):
    """Two-parameter Mittag-Leffler function ``sum_k z^k / Gamma(alpha k + beta)``."""
    return ml_prabhakar(alpha, beta, 1.0, z, tol=tol, max_terms=max_terms)


def ml_prabhakar(alpha: float, beta: float, gamma: float, z, *, tol: float = DEFAULT_TOL,
                 max_terms: int = DEFAULT_MAX_TERMS):
    """Prabhakar function ``(1/Gamma(gamma)) sum_k Gamma(gamma+k) z^k / (k! Gamma(alpha k + beta))``.

    ``gamma == 1`` gives the two-parameter function; at ``z == 0`` the
    value is ``1 / Gamma(beta)``.
    """
    if not alpha > 0:
        raise ValueError(f"alpha must be > 0, got {alpha}")
    if not beta > 0:
        raise ValueError(f"beta must be > 0, got {beta}")
    if not gamma > 0:
        raise ValueError(f"gamma must be > 0, got {gamma}")
    series = prabhakar_series(float(alpha), float(beta), float(gamma))
    return evaluate(series, z, tol=tol, max_terms=max_terms)


def ml_derivative(alpha: float, beta: float, n: int, x, *, tol: float = DEFAULT_TOL,
                  max_terms: int = DEFAULT_MAX_TERMS):
    """n-th derivative of the two-parameter ML function.

    Uses the closed form ``n! * M^{n+1}_{alpha, n alpha + beta}(x)``; no
    numerical differentiation is involved.
    """
    n = int(n)
    if n < 0:
        raise ValueError("derivative order must be >= 0")
    val = ml_prabhakar(alpha, n * alpha + beta, n + 1.0, x, tol=tol, max_terms=max_terms)
    return math.factorial(n) * val


def _check_ml_dist(alpha, lam):
    if not 0 < alpha <= 1:
        raise ValueError(f"alpha must lie in (0, 1], got {alpha}")
    if not lam > 0:
        raise ValueError(f"lambda must be > 0, got {lam}")


def ml_dist_cdf(alpha: float, lam: float, t):
    """CDF ``1 - M_alpha(-lam t^alpha)`` of the Mittag-Leffler distribution.

    Beyond the series domain the survival function is evaluated as the
    Laplace transform of the M-Wright density.
    """
    _check_ml_dist(alpha, lam)
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("t must be >= 0")
    scalar = t.ndim == 0
    t = np.atleast_1d(t)
    z = lam * t**alpha
    far = _far(alpha, z)
    survival = np.empty_like(z)
    if np.any(~far):
        survival[~far] = ml_one(alpha, -z[~far])
    if np.any(far):
        # M_alpha(-z) = int exp(-z y) W_alpha(y) dy
        survival[far] = np.exp(log_laguerre_wright(alpha, z[far], [0])[:, 0] - np.log(z[far]))
    out = np.clip(1.0 - survival, 0.0, 1.0)
    return float(out[0]) if scalar else out


def ml_dist_pdf(alpha: float, lam: float, t):
    """Density ``lam t^(alpha-1) M_{alpha,alpha}(-lam t^alpha)``; infinite at 0 when alpha < 1."""
    return ml_convolution_pdf(alpha, lam, 1, t)


def ml_convolution_pdf(alpha: float, lam: float, n: int, t):
    """Density of the sum of ``n`` i.i.d. ML(alpha, lam) variables.

    ``lam^n t^(alpha n - 1) M^{(n-1)}_{alpha,alpha}(-lam t^alpha) / (n-1)!``,
    written through the Prabhakar function ``M^n_{alpha, n alpha}``; beyond
    the series domain a Gauss-Laguerre form of the same density is used.
    """
    _check_ml_dist(alpha, lam)
    n = int(n)
    if n < 1:
        raise ValueError("fold count n must be >= 1")
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("t must be >= 0")
    scalar = t.ndim == 0
    t = np.atleast_1d(t)
    out = np.zeros_like(t)
    pos = t > 0
    z = lam * t**alpha
    far = pos & _far(alpha, z)
    near = pos & ~far
    if np.any(near):
        tp = t[near]
        ml = ml_prabhakar(alpha, n * alpha, float(n), -z[near])
        out[near] = lam**n * tp ** (alpha * n - 1.0) * ml
    if np.any(far):
        # derivative of P{N_alpha(t) >= n}; the sum over k < n telescopes to
        # alpha / (t z (n-1)!) int u^n exp(-u) W_alpha(u / z) du
        zf, tf = z[far], t[far]
        logs = log_laguerre_wright(alpha, zf, [n])[:, 0]
        out[far] = np.exp(logs + math.log(alpha) - np.log(tf * zf) - math.lgamma(n))
    # value at t = 0 is the limit of lam^n t^(alpha n - 1) / Gamma(alpha n)
    zero = ~pos
    if np.any(zero):
        power = alpha * n - 1.0
        if power < 0:
            out[zero] = math.inf
        elif power == 0:
            out[zero] = lam**n / math.gamma(alpha * n)
    return float(out[0]) if scalar else out


def wright(alpha: float, beta: float, z, *, tol: float = DEFAULT_TOL,
           max_terms: int = DEFAULT_MAX_TERMS):
    """Wright function ``sum_n z^n / (n! Gamma(alpha n + beta))`` for ``alpha > -1``."""
    if not alpha > -1:
        raise ValueError(f"alpha must be > -1, got {alpha}")
    return evaluate(wright_series(float(alpha), float(beta)), z, tol=tol, max_terms=max_terms)


def _mwright_log_envelope(beta: float, z: np.ndarray) -> np.ndarray:
    """Leading exponential decay of W_beta(z) for large positive z."""
    p = 1.0 / (1.0 - beta)
    c = (1.0 - beta) * beta ** (beta * p)
    return -c * np.maximum(z, 0.0) ** p


def m_wright(beta: float, z, *, tol: float = DEFAULT_TOL, max_terms: int = DEFAULT_MAX_TERMS):
    """M-Wright function ``W_beta(z) = wright(-beta, 1 - beta, -z)`` for ``0 < beta < 1``.

    Series for ``z <= 1``, Kanter integral above; values whose exponential
    envelope is below the double underflow threshold are returned as 0.0.
    """
    if not 0 < beta < 1:
        raise ValueError(f"beta must lie in (0, 1), got {beta}")
    z = np.asarray(z, dtype=float)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    out = np.zeros_like(z)
    live = _mwright_log_envelope(beta, z) > _LOG_UNDERFLOW
    near = live & (z <= _MWRIGHT_SWITCH)
    if np.any(near):
        out[near] = evaluate(mwright_series(float(beta)), -z[near], tol=tol, max_terms=max_terms)
    for i in np.flatnonzero(live & ~near):
        out[i] = _mwright_integral(float(beta), float(z[i]))
    return float(out[0]) if scalar else out


# above this point the alternating series loses too many digits for beta near 1
_MWRIGHT_SWITCH = 1.0


def _kanter_factor(beta: float, u):
    """``A(u) = (sin(beta u)^beta sin((1-beta) u)^(1-beta) / sin u)^(1/(1-beta))``."""
    return (np.sin(beta * u) ** beta * np.sin((1.0 - beta) * u) ** (1.0 - beta)
            / np.sin(u)) ** (1.0 / (1.0 - beta))


def _mwright_integral(beta: float, z: float) -> float:
    """W_beta(z) for z > 0 from the Kanter representation of the stable law.

    ``W_beta(z) = z^(beta/(1-beta)) / (1-beta) * (1/pi) int_0^pi A(u) exp(-a A(u)) du``
    with ``a = z^(1/(1-beta))``.  The integrand is positive and smooth;
    ``A`` is smallest at ``u = 0``, so that factor is pulled out first.
    """
    a = z ** (1.0 / (1.0 - beta))
    a0 = (beta**beta * (1.0 - beta) ** (1.0 - beta)) ** (1.0 / (1.0 - beta))

    def f(u):
        if u == 0.0:
            return a0
        au = float(_kanter_factor(beta, u))
        return au * math.exp(-a * (au - a0))

    val, err = integrate.quad(f, 0.0, math.pi, epsabs=0.0, epsrel=1e-13, limit=200)
    if not err <= 1e-10 * val:
        raise ArithmeticError(f"M-Wright integral did not converge at z={z!r} (error {err:.3g})")
    log_pref = beta / (1.0 - beta) * math.log(z) - math.log1p(-beta) - math.log(math.pi) - a * a0
    return val * math.exp(log_pref)


# scipy's Laguerre rule is reliable up to about 350 nodes; with 320 nodes it
# integrates u^k times ~100 Taylor terms of W exactly for k <= _LAGUERRE_K_MAX
_LAGUERRE_MAX_NODES = 320
_LAGUERRE_K_MAX = 224


@lru_cache(maxsize=16)
def _laguerre_rule(n: int):
    """Gauss-Laguerre nodes and log-weights (weights that underflow become -inf)."""
    with warnings.catch_warnings(), np.errstate(all="ignore"):
        warnings.simplefilter("ignore", RuntimeWarning)
        u, w = special.roots_laguerre(n)
        return u, np.log(u), np.log(w)


def _log_gamma_weighted_wright(beta: float, z: float, k: int) -> float:
    """``log int u^k exp(-u) W_beta(u / z) du`` by adaptive quadrature around ``u = k``."""
    sd = math.sqrt(k + 1.0)
    lo, hi = max(0.0, k - 40.0 * sd), k + 40.0 * sd
    # the Gamma(k+1) kernel relative to its peak, times W
    f = lambda u: math.exp(k * math.log(u / k) - (u - k)) * m_wright(beta, u / z) if u > 0 else 0.0
    val, err = integrate.quad(f, lo, hi, points=[float(k)], epsabs=0.0, epsrel=1e-12, limit=400)
    if not err <= 1e-9 * val:
        raise ArithmeticError(f"Laplace-type integral did not converge (k={k}, z={z!r})")
    return math.log(val) + k * math.log(k) - k

# |z|^(1/alpha) bound of the documented series domain for negative arguments
SERIES_DOMAIN = 100.0


def log_laguerre_wright(beta: float, z, orders) -> np.ndarray:
    """``log int_0^inf u^k exp(-u) W_beta(u / z) du`` for ``k`` in ``orders``, rows over ``z``.

    Since ``int_0^inf y^k exp(-z y) W_beta(y) dy`` equals ``z^-(k+1)`` times
    this integral, it gives Laplace-type moments of the inverse stable law
    for large ``z``, where the Laguerre weight carries the decay and
    ``W_beta`` is only probed near the origin.  The rule is exact for
    polynomials of degree below twice its node count, so the count grows
    with the largest order (up to 320 nodes, beyond which adaptive
    quadrature around the peak ``u = k`` takes over); nodes more than 40
    nats below the largest weighted term are skipped.
    """
    z = np.atleast_1d(np.asarray(z, dtype=float))
    ks = np.atleast_1d(np.asarray(orders, dtype=int))
    out = np.empty((z.size, ks.size))
    big = ks > _LAGUERRE_K_MAX
    for j in np.flatnonzero(big):
        out[:, j] = [_log_gamma_weighted_wright(beta, float(zi), int(ks[j])) for zi in z]
    if np.all(big):
        return out
    small = ks[~big]
    n_nodes = min(_LAGUERRE_MAX_NODES, 32 * math.ceil((int(small.max()) + 96) / 32))
    u, log_u, log_w = _laguerre_rule(n_nodes)
    logc = log_w[None, :] + small[:, None] * log_u[None, :]
    keep = np.any(logc > logc.max(axis=1, keepdims=True) - 40.0, axis=0)
    u = u[keep]
    logc = logc[:, keep]
    shift = logc.max(axis=1)
    weights = np.exp(logc - shift[:, None])
    wv = m_wright(beta, (u[None, :] / z[:, None]).ravel()).reshape(z.size, u.size)
    with np.errstate(divide="ignore"):
        out[:, ~big] = np.log(wv @ weights.T) + shift[None, :]
    return out


def _far(alpha: float, z: np.ndarray) -> np.ndarray:
    """Arguments of ``M_alpha(-z)`` beyond the series domain (``alpha < 1`` only)."""
    if alpha >= 1.0:
        return np.zeros(z.shape, dtype=bool)
    return z ** (1.0 / alpha) > SERIES_DOMAIN


def _subordinator_args(q):
    if isinstance(q, SubordinatorQuery):
        return q.beta, q.t, np.asarray(q.x, dtype=float)
    beta, t, x = q
    return _subordinator_args(SubordinatorQuery(beta, t, x))


def stable_density(q: SubordinatorQuery):
    """Density ``beta t x^-(beta+1) W_beta(t x^-beta)`` of the beta-stable subordinator at time t."""
    beta, t, x = _subordinator_args(q)
    val = beta * t * x ** (-(beta + 1.0)) * m_wright(beta, t * x ** (-beta))
    return float(val) if np.ndim(val) == 0 else val


def inv_stable_density(q: SubordinatorQuery):
    """Density ``t^-beta W_beta(t^-beta x)`` of the inverse beta-stable subordinator at time t."""
    beta, t, x = _subordinator_args(q)
    scale = t ** (-beta)
    val = scale * m_wright(beta, scale * x)
    return float(val) if np.ndim(val) == 0 else val


def inverse_stable_mean(beta: float, t: float) -> float:
    """``E[E_beta(t)] = t^beta / Gamma(1 + beta)``."""
    return t**beta / math.gamma(1.0 + beta)


def inverse_stable_variance_factor(beta: float) -> float:
    """``Q(beta)`` with ``Var[E_beta(t)] = t^(2 beta) Q(beta)``."""
    return (1.0 / math.gamma(2.0 * beta) - 1.0 / (beta * math.gamma(beta) ** 2)) / beta


def tfpp_pmf(n: int, t, lam: float, beta: float):
    """Time-fractional Poisson PMF ``(lam t^beta)^n M_beta^{(n)}(-lam t^beta) / n!``.

    Computed as ``(lam t^beta)^n M^{n+1}_{beta, n beta + 1}(-lam t^beta)``,
    which avoids the ``n!`` round trip.  Beyond the series domain
    (``(lam t^beta)^(1/beta) > 100``) the pmf is the Gauss-Laguerre mixture
    ``E[exp(-y E) (y E)^n / n!]`` over ``E = E_beta(1)``.  At ``t == 0`` the
    law is a unit mass at 0.
    """
    n = int(n)
    if n < 0:
        raise ValueError("n must be >= 0")
    if not 0 < beta <= 1:
        raise ValueError(f"beta must lie in (0, 1], got {beta}")
    if not lam >= 0:
        raise ValueError(f"lambda must be >= 0, got {lam}")
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("t must be >= 0")
    scalar = t.ndim == 0
    t = np.atleast_1d(t)
    out = np.zeros_like(t)
    y = lam * t**beta
    pos = y > 0
    if n == 0:
        out[~pos] = 1.0
    far = pos & _far(beta, y)
    near = pos & ~far
    if np.any(near):
        ml = ml_prabhakar(beta, n * beta + 1.0, n + 1.0, -y[near])
        out[near] = y[near] ** n * ml
    if np.any(far):
        # E[exp(-y E) (y E)^n / n!] with E = E_beta(1)
        logs = log_laguerre_wright(beta, y[far], [n])[:, 0]
        out[far] = np.exp(logs - np.log(y[far]) - math.lgamma(n + 1.0))
    return float(out[0]) if scalar else out
