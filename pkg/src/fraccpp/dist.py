"""Exact laws of the compound Poisson distribution and its process versions.

A :class:`RateSequence` ``lambda_1..lambda_J`` defines the generalized
Poisson variable ``sum_j j N_j`` with independent ``N_j ~ Poi(lambda_j)``.
Equivalently it is the compound Poisson sum ``Y_1 + ... + Y_N`` with
``N ~ Poi(delta)``, ``delta = sum_j lambda_j`` and jump law
``P{Y = j} = lambda_j / delta`` (:class:`JumpLaw`).

Every probability is available from two independent formulas:

* composition form ``sum_m Poi(m; delta) h_m(n)``, where ``h_m`` is the
  ``m``-fold convolution of the jump law;
* Bell form ``exp(-delta) B_n(1! lambda_1, .., n! lambda_n) / n!`` in exact
  rational arithmetic.

The time-fractional process (TFCPP) is the compound sum run with a
time-fractional Poisson counter, equivalently the process at the inverse
stable time ``E_beta(t)``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy import integrate

from . import bell, specfun

__all__ = [
    "RateSequence",
    "JumpLaw",
    "PmfTable",
    "QuadratureError",
    "jump_law",
    "cpd_pmf",
    "cpd_pmf_table",
    "cpd_identity_check",
    "poisson_order_k_pmf",
    "cpp_pmf",
    "cpp_pmf_table",
    "cpd_pgf",
    "cpp_pgf",
    "tfcpp_pgf",
    "tfcpp_pmf",
    "tfcpp_pmf_table",
    "default_nmax",
    "inverse_stable_moments",
]

SCHEMA_VERSION = 1
DEFAULT_TAIL_TARGET = 1e-10
PMF_METHODS = ("composition", "bell")
TFCPP_METHODS = ("ml_derivative", "bell_expectation", "auto")

# beyond this value of (delta t^beta)^(1/beta) the series route is outside
# its documented accuracy domain and "auto" switches to quadrature
_SERIES_DOMAIN = specfun.SERIES_DOMAIN


class QuadratureError(ArithmeticError):
    """Adaptive quadrature did not reach the requested accuracy."""

    def __init__(self, message: str, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


@dataclass(frozen=True)
class RateSequence:
    """Finite rate sequence ``lambda_1..lambda_J`` with cached total mass.

    ``truncation_bound`` is a user-supplied bound on the rate mass that was
    dropped when an infinite sequence was cut at ``J``; it is carried along
    as metadata and never enters the formulas.
    """

    lam: tuple[float, ...]
    truncation_bound: float = 0.0
    delta: float = field(init=False, repr=False, compare=False)
    _prefix: tuple[float, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        lam = tuple(float(x) for x in np.atleast_1d(np.asarray(self.lam, dtype=float)))
        if not lam:
            raise ValueError("rate sequence is empty")
        if not all(math.isfinite(x) for x in lam):
            raise ValueError("rates must be finite")
        if any(x < 0 for x in lam):
            raise ValueError("rates must be nonnegative")
        if not any(x > 0 for x in lam):
            raise ValueError("at least one rate must be positive")
        if not self.truncation_bound >= 0:
            raise ValueError("truncation_bound must be >= 0")
        # drop trailing zeros so equal laws compare equal
        while lam[-1] == 0:
            lam = lam[:-1]
        object.__setattr__(self, "lam", lam)
        prefix = tuple(math.fsum(lam[:i]) for i in range(len(lam) + 1))
        object.__setattr__(self, "_prefix", prefix)
        object.__setattr__(self, "delta", prefix[-1])

    @property
    def support(self) -> int:
        """Largest jump size ``J`` with positive rate."""
        return len(self.lam)

    def delta_partial(self, n: int) -> float:
        """``delta_n = lambda_1 + ... + lambda_n``."""
        if n < 0:
            raise ValueError("n must be >= 0")
        return self._prefix[min(n, self.support)]

    def scaled(self, t: float) -> RateSequence:
        """Rates ``t lambda_j`` (the CPP at time ``t``)."""
        if not t > 0:
            raise ValueError("scale must be > 0")
        return RateSequence(tuple(t * x for x in self.lam), self.truncation_bound * t)

    def truncated(self, k: int) -> RateSequence:
        """Order-``k`` truncation ``lambda_1..lambda_k``."""
        return RateSequence(self.lam[:k], self.truncation_bound + math.fsum(self.lam[k:]))

    def weighted_sum(self, power: int = 1) -> float:
        """``sum_j j^power lambda_j``."""
        return math.fsum(j**power * x for j, x in enumerate(self.lam, start=1))

    def as_fractions(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x) for x in self.lam)

    def log_mgf(self, theta: float) -> float:
        """``sum_j lambda_j (exp(theta j) - 1)``: log-MGF of the compound sum."""
        return math.fsum(x * math.expm1(theta * j) for j, x in enumerate(self.lam, start=1))


def _rates(rates) -> RateSequence:
    return rates if isinstance(rates, RateSequence) else RateSequence(tuple(np.atleast_1d(rates)))


@dataclass(frozen=True)
class JumpLaw:
    """Jump law ``P{Y = j} = lambda_j / delta`` with convolution powers up to ``n_max``.

    ``pmf`` is exact (sums to 1 as a Fraction).  ``h[k, n] = P{T_k = n}``
    with ``T_k = Y_1 + ... + Y_k`` is a float table built at construction.
    """

    rates: RateSequence
    n_max: int
    pmf: tuple[Fraction, ...] = field(init=False)
    h: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        exact = self.rates.as_fractions()
        total = sum(exact, Fraction(0))
        object.__setattr__(self, "pmf", tuple(x / total for x in exact))
        n = self.n_max
        p = np.zeros(n + 1)
        for j, x in enumerate(self.pmf, start=1):
            if j <= n:
                p[j] = float(x)
        h = np.zeros((n + 1, n + 1))
        h[0, 0] = 1.0
        for k in range(1, n + 1):
            # h_k(n) = 0 for n < k since every jump is at least 1
            h[k, k:] = np.convolve(h[k - 1], p)[k : n + 1]
        h.setflags(write=False)
        object.__setattr__(self, "h", h)

    def moment(self, r: int) -> Fraction:
        """``E(Y^r)`` exactly."""
        return sum((j**r * x for j, x in enumerate(self.pmf, start=1)), Fraction(0))

    def factorial_moment(self, r: int) -> Fraction:
        """``E(Y (Y-1) .. (Y-r+1))`` exactly."""
        return sum((math.perm(j, r) * x for j, x in enumerate(self.pmf, start=1)), Fraction(0))

    @property
    def mean(self) -> float:
        return float(self.moment(1))

    @property
    def second_moment(self) -> float:
        return float(self.moment(2))

    def convolution(self, k: int, n: int) -> float:
        """``h_k(n) = P{Y_1 + .. + Y_k = n}``."""
        if not (0 <= k <= self.n_max and 0 <= n <= self.n_max):
            raise IndexError(f"(k, n) = ({k}, {n}) outside the table built for n_max={self.n_max}")
        return float(self.h[k, n])


@lru_cache(maxsize=256)
def _jump_law_cached(rates: RateSequence, n_max: int) -> JumpLaw:
    return JumpLaw(rates, n_max)


def jump_law(rates, n_max: int = 64) -> JumpLaw:
    """Jump law of the compound representation with convolutions up to ``n_max``."""
    return _jump_law_cached(_rates(rates), int(n_max))


@dataclass(frozen=True)
class PmfTable:
    """Probabilities on ``0..n_max`` with a provenance tag and the missing mass."""

    probs: np.ndarray
    method: str
    params: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        probs = np.array(self.probs, dtype=float)
        if probs.ndim != 1 or probs.size == 0:
            raise ValueError("probs must be a non-empty 1-d sequence")
        if np.any(probs < -1e-15):
            raise ValueError("probabilities must be nonnegative")
        probs = np.maximum(probs, 0.0)
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)

    @property
    def n_max(self) -> int:
        return self.probs.size - 1

    @property
    def tail_bound(self) -> float:
        """``1 - sum(probs)``, clipped at 0."""
        return max(0.0, 1.0 - math.fsum(self.probs))

    def mean(self) -> float:
        return math.fsum(np.arange(self.probs.size) * self.probs)

    def variance(self) -> float:
        n = np.arange(self.probs.size)
        m = self.mean()
        return math.fsum((n - m) ** 2 * self.probs)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "prob", "method"])
        for n, p in enumerate(self.probs):
            w.writerow([n, format(float(p), ".17g"), self.method])
        return buf.getvalue()

    def to_json(self) -> str:
        rec = {
            "schema_version": SCHEMA_VERSION,
            "kind": "pmf",
            "method": self.method,
            "n_max": self.n_max,
            "tail_bound": self.tail_bound,
            "params": self.params,
            "probs": [float(p) for p in self.probs],
        }
        return json.dumps(rec, indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_csv(cls, text: str) -> PmfTable:
        rows = list(csv.DictReader(io.StringIO(text)))
        if not rows:
            raise ValueError("empty pmf CSV")
        ns = [int(r["n"]) for r in rows]
        if ns != list(range(len(ns))):
            raise ValueError("pmf CSV rows must list n = 0, 1, 2, ... in order")
        return cls(np.array([float(r["prob"]) for r in rows]), rows[0]["method"])

    @classmethod
    def from_json(cls, text: str) -> PmfTable:
        rec = json.loads(text)
        if rec.get("kind") != "pmf":
            raise ValueError("not a pmf record")
        return cls(np.array(rec["probs"], dtype=float), rec["method"], rec.get("params", {}))


# ---------------------------------------------------------------------------
# truncation


def _chernoff_nmax(log_mgf, mean: float, target: float) -> int:
    """Smallest ``N`` with ``min_theta exp(log_mgf(theta) - theta N) < target``."""
    thetas = np.geomspace(1e-3, 20.0, 400)
    vals = []
    for th in thetas:
        try:
            v = log_mgf(float(th))
        except (OverflowError, ArithmeticError):
            v = math.inf
        vals.append(v)
    vals = np.array(vals)
    ok = np.isfinite(vals)
    thetas, vals = thetas[ok], vals[ok]
    log_target = math.log(target)
    n = max(1, int(math.ceil(mean)))
    while True:
        if np.min(vals - thetas * n) < log_target:
            return n
        n = max(n + 1, int(n * 1.05))


def default_nmax(rates, t: float = 1.0, beta: float = 1.0,
                 target: float = DEFAULT_TAIL_TARGET) -> int:
    """Support cutoff whose Chernoff tail bound ``P{X > n_max}`` is below ``target``.

    For ``beta < 1`` the bound uses the moment generating function of the
    inverse stable time, ``E exp(s E_beta(t)) = M_beta(s t^beta)``.
    """
    rates = _rates(rates)
    if t == 0:
        return 0
    if beta == 1.0:
        def lmgf(th):
            return t * rates.log_mgf(th)
    else:
        def lmgf(th):
            s = rates.log_mgf(th) * t**beta
            if s ** (1.0 / beta) > 650:
                return math.inf
            return math.log(specfun.ml_one(beta, s))
    mean = rates.weighted_sum(1) * (t if beta == 1.0 else specfun.inverse_stable_mean(beta, t))
    # P{X > N} <= P{X >= N} < target
    return max(1, _chernoff_nmax(lmgf, mean, target))


# ---------------------------------------------------------------------------
# compound Poisson distribution


def _poisson_weights(mu: float, m_max: int) -> np.ndarray:
    m = np.arange(m_max + 1)
    if mu == 0:
        out = np.zeros(m_max + 1)
        out[0] = 1.0
        return out
    lg = np.array([math.lgamma(x + 1.0) for x in m])
    return np.exp(-mu + m * math.log(mu) - lg)


def _composition_probs(rates: RateSequence, n_max: int) -> np.ndarray:
    law = jump_law(rates, n_max)
    w = _poisson_weights(rates.delta, n_max)
    # P{T_N = n} = sum_m P{N = m} h_m(n); terms with m > n vanish
    return w @ law.h


def _bell_prob(rates: RateSequence, n: int) -> float:
    if n == 0:
        return math.exp(-rates.delta)
    u = [math.factorial(j) * x for j, x in enumerate(rates.as_fractions(), start=1)]
    u = u[:n] + [Fraction(0)] * max(0, n - len(u))
    val = bell.complete_bell(n, u) / math.factorial(n)
    if val == 0:
        return 0.0
    # exp(-delta) * val without overflowing either factor
    log_val = math.log(val.numerator) - math.log(val.denominator)
    return math.exp(log_val - rates.delta)


def cpd_pmf(rates, n: int, method: str = "composition") -> float:
    """``P{T_N = n}`` for the compound Poisson law of ``rates``.

    ``method="composition"`` sums ``P{N = m} h_m(n)`` over ``m``;
    ``method="bell"`` evaluates ``exp(-delta) B_n(u) / n!`` with
    ``u_j = j! lambda_j`` exactly.
    """
    rates = _rates(rates)
    n = int(n)
    if n < 0:
        raise ValueError("n must be >= 0")
    if method == "composition":
        return float(_composition_probs(rates, n)[n])
    if method == "bell":
        return _bell_prob(rates, n)
    raise ValueError(f"unknown method {method!r}; expected one of {PMF_METHODS}")


def cpd_pmf_table(rates, n_max: int | None = None, method: str = "composition") -> PmfTable:
    rates = _rates(rates)
    if n_max is None:
        n_max = default_nmax(rates)
    if method == "composition":
        probs = _composition_probs(rates, n_max)
    elif method == "bell":
        probs = np.array([_bell_prob(rates, n) for n in range(n_max + 1)])
    else:
        raise ValueError(f"unknown method {method!r}; expected one of {PMF_METHODS}")
    return PmfTable(probs, f"exact-{method}", {"rates": list(rates.lam)})


def cpd_identity_check(rates, n: int) -> tuple[float, float]:
    """``(P{T_N = n}, exp(-(delta - delta_n)) P{W_n = n})``.

    ``W_n = sum_{j <= n} j N_j`` is the order-``n`` Poisson variable; its
    mass at ``n`` comes from a direct convolution of Poisson masses.
    """
    rates = _rates(rates)
    n = int(n)
    if n < 1:
        raise ValueError("n must be >= 1")
    lhs = cpd_pmf(rates, n)
    w = bell.poisson_weight_pmf(rates.lam[:n], n)
    rhs = math.exp(-(rates.delta - rates.delta_partial(n))) * float(w[n])
    return lhs, rhs


def poisson_order_k_pmf(rates, n: int, k: int | None = None, method: str = "composition") -> float:
    """Poisson distribution of order ``k``: law of ``sum_{j <= k} j N_j``.

    ``method="enumeration"`` sums ``prod_j P{N_j = x_j}`` over all
    ``x`` with ``sum j x_j = n`` directly; ``"composition"`` reuses
    :func:`cpd_pmf` on the truncated rates.
    """
    rates = _rates(rates)
    if k is not None:
        if k < 1:
            raise ValueError("order k must be >= 1")
        if math.fsum(rates.lam[:k]) == 0:
            raise ValueError("the order-k truncation has no positive rate")
        rates = rates.truncated(k)
    n = int(n)
    if n < 0:
        raise ValueError("n must be >= 0")
    if method == "composition":
        return cpd_pmf(rates, n)
    if method != "enumeration":
        raise ValueError("method must be 'composition' or 'enumeration'")
    lam = rates.lam
    parts = [j for j, x in enumerate(lam, start=1) if x > 0 and j <= n]
    total = []
    for x in bell.CompositionSet(n, None, parts):
        logp = 0.0
        for j in parts:
            xj = x[j - 1]
            logp += xj * math.log(lam[j - 1]) - math.lgamma(xj + 1.0)
        total.append(math.exp(logp))
    return math.exp(-rates.delta) * math.fsum(total)


def cpp_pmf(rates, t: float, n: int, method: str = "composition") -> float:
    """``P{H(t) = n}`` for the compound Poisson process: the CPD with rates ``t lambda_j``."""
    if not t >= 0:
        raise ValueError("t must be >= 0")
    if t == 0:
        return 1.0 if n == 0 else 0.0
    return cpd_pmf(_rates(rates).scaled(t), n, method)


def cpp_pmf_table(rates, t: float, n_max: int | None = None, method: str = "composition") -> PmfTable:
    rates = _rates(rates)
    if not t >= 0:
        raise ValueError("t must be >= 0")
    if t == 0:
        probs = np.zeros((n_max or 0) + 1)
        probs[0] = 1.0
        return PmfTable(probs, f"exact-{method}", {"rates": list(rates.lam), "t": 0.0})
    table = cpd_pmf_table(rates.scaled(t), n_max, method)
    return PmfTable(table.probs, table.method, {"rates": list(rates.lam), "t": t})


# ---------------------------------------------------------------------------
# generating functions


def _check_z(z):
    z = np.asarray(z, dtype=float)
    if np.any(np.abs(z) > 1):
        raise ValueError("generating functions are defined here for |z| <= 1")
    return z


def _exponent(rates: RateSequence, z: np.ndarray) -> np.ndarray:
    """``sum_j lambda_j (z^j - 1)``."""
    out = np.zeros_like(z)
    for j, x in enumerate(rates.lam, start=1):
        out = out + x * (z**j - 1.0)
    return out


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


def cpd_pgf(rates, z):
    """``E z^{T_N} = exp(sum_j lambda_j (z^j - 1))``."""
    rates = _rates(rates)
    return _out(np.exp(_exponent(rates, _check_z(z))))


def cpp_pgf(rates, t: float, z):
    """``E z^{H(t)} = exp(t sum_j lambda_j (z^j - 1))``."""
    rates = _rates(rates)
    return _out(np.exp(t * _exponent(rates, _check_z(z))))


def tfcpp_pgf(rates, t: float, z, beta: float):
    """``E z^{H_beta(t)} = M_beta(-t^beta sum_j lambda_j (1 - z^j))``."""
    rates = _rates(rates)
    if not 0 < beta <= 1:
        raise ValueError("beta must lie in (0, 1]")
    return _out(specfun.ml_one(beta, t**beta * _exponent(rates, _check_z(z))))


# ---------------------------------------------------------------------------
# time-fractional compound Poisson process


def _check_tfcpp(beta, t):
    if not 0 < beta <= 1:
        raise ValueError(f"beta must lie in (0, 1], got {beta}")
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("t must be >= 0")
    return t


def _ml_derivative_probs(rates: RateSequence, t: np.ndarray, beta: float, n_max: int) -> np.ndarray:
    """``q(n|t) = sum_k h_k(n) p_beta(k|t, delta)`` for ``n <= n_max``; shape ``(len(t), n_max+1)``.

    ``p_beta(k|t, delta) = (delta t^beta)^k M_beta^{(k)}(-delta t^beta) / k!`` is the
    time-fractional Poisson pmf.
    """
    law = jump_law(rates, n_max)
    p = np.empty((t.size, n_max + 1))
    for k in range(n_max + 1):
        p[:, k] = specfun.tfpp_pmf(k, t, rates.delta, beta)
    return p @ law.h


def _mwright_cutoff(beta: float, c: float, k_max: int) -> float:
    """Point past which ``max_k y^k exp(-c y) W_beta(y)`` stays 1e-16 below its peak."""
    def log_env(y):
        w = specfun.m_wright(beta, y)
        if w <= 0:
            return -math.inf
        return (k_max * math.log(y) if y > 1 else 0.0) - c * y + math.log(w)

    peak = log_env(0.0)
    y = 0.25
    while True:
        v = log_env(y)
        peak = max(peak, v)
        if v < peak - 37.0 and y > 1.0:
            return y
        y *= 1.25


def inverse_stable_moments(beta: float, t: float, c: float, k_max: int,
                           epsrel: float = 1e-11) -> np.ndarray:
    """``E[E_beta(t)^k exp(-c E_beta(t))]`` for ``k = 0..k_max`` by adaptive quadrature.

    Integrates against ``h_beta(x; t) = t^-beta W_beta(t^-beta x)``; after
    ``x = t^beta y`` the ``k``-th integral is
    ``t^(beta k) int y^k exp(-c t^beta y) W_beta(y) dy``.
    Each component is normalized by a first-pass estimate so the relative
    tolerance applies to every ``k`` separately.  Raises
    :class:`QuadratureError` when the error estimate stays above tolerance.
    """
    if not 0 < beta < 1:
        raise ValueError("beta must lie in (0, 1)")
    ct = c * t**beta
    upper = _mwright_cutoff(beta, ct, k_max)
    ks = np.arange(k_max + 1)

    def integrand(y, scale):
        w = specfun.m_wright(beta, y)
        if y == 0:
            base = np.zeros(k_max + 1)
            base[0] = w
            return base / scale
        return np.exp(ks * math.log(y) - ct * y) * w / scale

    ones = np.ones(k_max + 1)
    rough, _ = integrate.quad_vec(integrand, 0.0, upper, args=(ones,), epsrel=1e-4, norm="max")
    scale = np.where(rough > 0, rough, 1.0)
    val, err = integrate.quad_vec(integrand, 0.0, upper, args=(scale,), epsrel=epsrel,
                                  epsabs=0.0, norm="max", limit=2000)
    if not err <= 100 * epsrel * max(1.0, float(np.max(np.abs(val)))):
        raise QuadratureError(
            f"quadrature error estimate {err:.3g} exceeds tolerance",
            estimate=val * scale, error=err)
    return val * scale * t ** (beta * ks)


def _bell_coefficients(rates: RateSequence, n_max: int) -> np.ndarray:
    """``C[n, k] = B_{n,k}(1! lambda_1, ..) / n!`` as floats."""
    u = [math.factorial(j) * x for j, x in enumerate(rates.as_fractions(), start=1)]
    table = bell.exp_partial_bell_table(n_max, u[:n_max])
    coef = np.zeros((n_max + 1, n_max + 1))
    for n in range(n_max + 1):
        fn = math.factorial(n)
        for k in range(n + 1):
            if table[n][k]:
                coef[n, k] = float(table[n][k] / fn)
    return coef


@lru_cache(maxsize=64)
def _bell_coefficients_cached(rates: RateSequence, n_max: int) -> np.ndarray:
    out = _bell_coefficients(rates, n_max)
    out.setflags(write=False)
    return out


def _bell_expectation_probs(rates: RateSequence, t, beta: float, n_max: int) -> np.ndarray:
    """``q(n|t) = E[exp(-delta E) B_n(u_1 E, u_2 E, ..)] / n!`` with ``E = E_beta(t)``.

    Homogeneity ``B_{n,k}(x u) = x^k B_{n,k}(u)`` turns the expectation into
    ``sum_k B_{n,k}(u) / n! * E[E^k exp(-delta E)]``.  ``t`` may be an
    array; the result then has one row per time.
    """
    coef = _bell_coefficients_cached(rates, n_max)
    tt = np.atleast_1d(np.asarray(t, dtype=float))
    ks = np.arange(n_max + 1)
    if beta == 1.0:
        # E_1(t) = t is deterministic
        m = np.exp(ks[None, :] * np.log(tt)[:, None] - rates.delta * tt[:, None])
    else:
        m = np.empty((tt.size, n_max + 1))
        ct = rates.delta * tt**beta
        far = ct ** (1.0 / beta) > _SERIES_DOMAIN
        if np.any(far):
            logs = specfun.log_laguerre_wright(beta, ct[far], ks)
            # t^(beta k) ct^-(k+1) combined in logs to stay in range for large k
            m[far] = np.exp(logs + beta * ks[None, :] * np.log(tt[far])[:, None]
                            - (ks[None, :] + 1.0) * np.log(ct[far])[:, None])
        for i in np.flatnonzero(~far):
            m[i] = inverse_stable_moments(beta, float(tt[i]), rates.delta, n_max)
    out = m @ coef.T
    return out[0] if np.ndim(t) == 0 else out


def _series_mask(rates, t, beta):
    """True where ``delta t^beta`` lies inside the documented series domain."""
    if beta == 1.0:
        return np.ones(t.shape, dtype=bool)
    return (rates.delta * t**beta) ** (1.0 / beta) <= _SERIES_DOMAIN


def tfcpp_pmf(rates, t, beta: float, n: int, method: str = "ml_derivative"):
    """``P{H_beta(t) = n}`` for the time-fractional compound Poisson process.

    ``method="ml_derivative"`` mixes the time-fractional Poisson pmf over
    the number of jumps, ``sum_k h_k(n) (delta t^beta)^k
    M_beta^{(k)}(-delta t^beta) / k!``.  ``method="bell_expectation"``
    averages the Bell form of the CPD pmf over the inverse stable time by
    quadrature.  ``"auto"`` uses the series at times where ``delta t^beta``
    lies inside its documented domain and the quadrature elsewhere.
    ``t`` may be an array.
    """
    rates = _rates(rates)
    t = _check_tfcpp(beta, t)
    if method not in TFCPP_METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {TFCPP_METHODS}")
    n = int(n)
    if n < 0:
        raise ValueError("n must be >= 0")
    scalar = t.ndim == 0
    tt = np.atleast_1d(t)
    out = np.zeros(tt.size)
    pos = tt > 0
    out[~pos] = 1.0 if n == 0 else 0.0
    if method == "ml_derivative":
        series = pos
    elif method == "bell_expectation":
        series = np.zeros_like(pos)
    else:
        series = pos & _series_mask(rates, tt, beta)
    quad = pos & ~series
    if np.any(series):
        tp = tt[series]
        if n == 0:
            out[series] = specfun.tfpp_pmf(0, tp, rates.delta, beta)
        else:
            out[series] = _ml_derivative_probs(rates, tp, beta, n)[:, n]
    if np.any(quad):
        out[quad] = _bell_expectation_probs(rates, tt[quad], beta, n)[:, n]
    out = np.clip(out, 0.0, 1.0)
    return float(out[0]) if scalar else out


def tfcpp_pmf_table(rates, t: float, beta: float, n_max: int | None = None,
                    method: str = "ml_derivative") -> PmfTable:
    """Time-fractional compound Poisson pmf on ``0..n_max`` (default: Chernoff cutoff)."""
    rates = _rates(rates)
    _check_tfcpp(beta, t)
    t = float(t)
    if n_max is None:
        n_max = default_nmax(rates, t, beta)
    params = {"rates": list(rates.lam), "t": t, "beta": beta}
    if t == 0:
        probs = np.zeros(n_max + 1)
        probs[0] = 1.0
        return PmfTable(probs, f"exact-{method}", params)
    if method not in TFCPP_METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {TFCPP_METHODS}")
    how = method
    if method == "auto":
        how = "ml_derivative" if _series_mask(rates, np.array(t), beta) else "bell_expectation"
    if how == "ml_derivative":
        probs = _ml_derivative_probs(rates, np.array([t]), beta, n_max)[0]
    else:
        probs = _bell_expectation_probs(rates, t, beta, n_max)
    return PmfTable(np.clip(probs, 0.0, 1.0), f"exact-{how}", params)
