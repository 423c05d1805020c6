"""Adaptive-precision summation of gamma-weighted power series.

Every special function in :mod:`fraccpp.specfun` is a power series

.. math::

    S(z) = \\sum_{k \\ge 0} c_k z^k, \\qquad c_k = w_k / \\Gamma(a k + b),

with a combinatorial weight :math:`w_k`.  Evaluation runs in double
precision first.  Each term carries an error estimate derived from the
magnitude of its log-coefficient; when the accumulated rounding error
exceeds the requested relative tolerance (cancellation for negative
arguments), or a term overflows, the point is recomputed with mpmath at a
working precision chosen from the size of the largest term.
"""

from __future__ import annotations

import math
import threading
from functools import lru_cache

import mpmath
import numpy as np

DEFAULT_TOL = 1e-12
DEFAULT_MAX_TERMS = 10_000

_EPS = float(np.finfo(float).eps)
_LOG_OVERFLOW = 700.0
_LN10 = math.log(10.0)
_STOP_RUN = 3
_BLOCK = 32
_SCALAR_CUTOFF = 4
_DPS_BUCKET = 48


class SeriesConvergenceError(ArithmeticError):
    """The series did not meet its stopping rule within ``max_terms``.

    Attributes
    ----------
    partial_sum : float
        Sum of the terms computed so far.
    bound : float
        Magnitude of the last computed term, a heuristic bound on the
        neglected tail.
    """

    def __init__(self, message: str, partial_sum: float, bound: float):
        super().__init__(message)
        self.partial_sum = partial_sum
        self.bound = bound


def log_rgamma(x: float) -> tuple[float, float]:
    """Return ``(log|1/Gamma(x)|, sign(1/Gamma(x)))``; sign is 0 at poles."""
    if x > 0:
        return -math.lgamma(x), 1.0
    if x == math.floor(x):
        return -math.inf, 0.0
    sign = -1.0 if math.floor(x) % 2 else 1.0
    return -math.lgamma(x), sign


class GammaSeries:
    """Coefficients ``c_k = w_k / Gamma(a k + b)`` with cached float and mp forms.

    Subclasses define ``_float_coef(k) -> (log|c_k|, sign)`` and
    ``w_k / w_{k-1}`` and the gamma argument ``a k + b`` as mp numbers
    (evaluated under the active mp context).
    """

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._flog: list[float] = []
        self._fsign: list[float] = []
        self._mp: dict[int, list] = {}

    def float_coef_lists(self, upto: int) -> tuple[list[float], list[float]]:
        """Log-magnitudes and signs of at least ``upto`` coefficients (append-only lists)."""
        if len(self._flog) < upto:
            with self._lock:
                for k in range(len(self._flog), upto):
                    lc, sc = self._float_coef(k)
                    self._fsign.append(sc)
                    self._flog.append(lc)
        return self._flog, self._fsign

    def float_coefs(self, upto: int) -> tuple[np.ndarray, np.ndarray]:
        flog, fsign = self.float_coef_lists(upto)
        return np.asarray(flog[:upto]), np.asarray(fsign[:upto])

    def mp_coefs(self, upto: int, dps: int) -> list:
        """Coefficients at ``dps`` digits, reusing any cached list at least that precise."""
        with self._lock:
            best = None
            for d in sorted(self._mp):
                if d >= dps:
                    best = d
                    break
            if best is None:
                best = -(-dps // _DPS_BUCKET) * _DPS_BUCKET
                self._mp[best] = ([], [])
            coefs, weights = self._mp[best]
            if len(coefs) < upto:
                with mpmath.workdps(best):
                    w = weights[-1] if weights else None
                    for k in range(len(coefs), upto):
                        w = mpmath.mpf(1) if k == 0 else w * self._mp_weight_ratio(k)
                        weights.append(w)
                        coefs.append(w * mpmath.rgamma(self._mp_gamma_arg(k)))
            return coefs[:upto]

    def _float_coef(self, k: int) -> tuple[float, float]:  # pragma: no cover
        raise NotImplementedError

    def _mp_weight_ratio(self, k: int):  # pragma: no cover
        """``w_k / w_{k-1}`` under the active mp context."""
        raise NotImplementedError

    def _mp_gamma_arg(self, k: int):  # pragma: no cover
        raise NotImplementedError

    def __call__(self, z, tol: float = DEFAULT_TOL, max_terms: int = DEFAULT_MAX_TERMS):
        return evaluate(self, z, tol=tol, max_terms=max_terms)


class PrabhakarSeries(GammaSeries):
    """``w_k = (gamma)_k / k!`` -- covers the one-, two- and three-parameter ML functions."""

    def __init__(self, alpha: float, beta: float, gamma: float):
        super().__init__()
        self.alpha, self.beta, self.gamma = float(alpha), float(beta), float(gamma)
        self._lg_gamma = math.lgamma(self.gamma)

    def _float_coef(self, k):
        lw = 0.0
        if self.gamma != 1.0:
            lw = math.lgamma(self.gamma + k) - self._lg_gamma - math.lgamma(k + 1.0)
        lr, sr = log_rgamma(self.alpha * k + self.beta)
        return lw + lr, sr

    def _mp_weight_ratio(self, k):
        return (mpmath.mpf(self.gamma) + (k - 1)) / k

    def _mp_gamma_arg(self, k):
        return mpmath.mpf(self.alpha) * k + mpmath.mpf(self.beta)


class WrightSeries(GammaSeries):
    """``c_n = 1 / (n! Gamma(alpha n + beta))``.

    ``mwright_beta`` switches the gamma argument to ``1 - beta (n + 1)``
    computed at full precision, which is the M-Wright coefficient.
    """

    def __init__(self, alpha: float, beta: float, mwright_beta: float | None = None):
        super().__init__()
        self.alpha, self.beta = float(alpha), float(beta)
        self.mwright_beta = mwright_beta

    def _float_coef(self, k):
        if self.mwright_beta is not None:
            arg = 1.0 - self.mwright_beta * (k + 1)
        else:
            arg = self.alpha * k + self.beta
        lr, sr = log_rgamma(arg)
        return lr - math.lgamma(k + 1.0), sr

    def _mp_weight_ratio(self, k):
        return mpmath.mpf(1) / k

    def _mp_gamma_arg(self, k):
        if self.mwright_beta is not None:
            return 1 - mpmath.mpf(self.mwright_beta) * (k + 1)
        return mpmath.mpf(self.alpha) * k + mpmath.mpf(self.beta)


@lru_cache(maxsize=512)
def prabhakar_series(alpha: float, beta: float, gamma: float) -> PrabhakarSeries:
    return PrabhakarSeries(alpha, beta, gamma)


@lru_cache(maxsize=128)
def wright_series(alpha: float, beta: float) -> WrightSeries:
    return WrightSeries(alpha, beta)


@lru_cache(maxsize=64)
def mwright_series(beta: float) -> WrightSeries:
    return WrightSeries(-beta, 1.0 - beta, mwright_beta=beta)


def evaluate(series: GammaSeries, z, tol: float = DEFAULT_TOL, max_terms: int = DEFAULT_MAX_TERMS):
    """Sum ``series`` at real ``z`` (scalar or array) to relative tolerance ``tol``."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    if max_terms < 1:
        raise ValueError("max_terms must be >= 1")
    scalar = np.ndim(z) == 0
    zarr = np.atleast_1d(np.asarray(z, dtype=float))
    if not np.all(np.isfinite(zarr)):
        raise ValueError("series argument must be finite")
    flat = zarr.ravel()
    if flat.size <= _SCALAR_CUTOFF:
        out = np.empty(flat.size)
        need_mp = np.zeros(flat.size, dtype=bool)
        maxlog = np.empty(flat.size)
        for i, zi in enumerate(flat):
            out[i], need_mp[i], maxlog[i] = _scalar_float(series, float(zi), tol, max_terms)
    else:
        out, need_mp, maxlog = _evaluate_float(series, flat, tol, max_terms)
    for i in np.flatnonzero(need_mp):
        out[i] = _evaluate_mp(series, float(zarr.ravel()[i]), tol, max_terms, maxlog[i])
    out = out.reshape(zarr.shape)
    return float(out[0]) if scalar else out


def _scalar_float(series, z, tol, max_terms):
    """Pure-Python double-precision pass for one point; returns (value, needs_mp, max log-term)."""
    flog, fsign = series.float_coef_lists(1)
    if z == 0.0:
        return (fsign[0] * math.exp(flog[0]) if fsign[0] else 0.0), False, flog[0]
    logz = math.log(abs(z))
    neg = z < 0
    terms = []
    partial = 0.0
    err = 0.0
    run = 0
    maxlog = -math.inf
    k = 0
    while True:
        if k >= max_terms:
            raise SeriesConvergenceError(
                f"series did not converge within {max_terms} terms at z={z!r}",
                partial_sum=partial, bound=abs(terms[-1]) if terms else math.inf)
        if k >= len(flog):
            flog, fsign = series.float_coef_lists(k + _BLOCK)
        sc = fsign[k]
        if sc == 0.0:
            t = 0.0
        else:
            lt = flog[k] + k * logz
            if lt > maxlog:
                maxlog = lt
            if lt > _LOG_OVERFLOW:
                return math.nan, True, maxlog
            t = sc * math.exp(lt)
            if neg and k % 2:
                t = -t
            err += abs(t) * (2.0 + abs(flog[k]) + abs(k * logz))
        terms.append(t)
        partial += t
        if abs(t) <= tol * abs(partial):
            run += 1
            if run >= _STOP_RUN:
                break
        else:
            run = 0
        k += 1
    total = math.fsum(terms)
    return total, not (err * _EPS <= tol * abs(total)), maxlog


def _evaluate_float(series, z, tol, max_terms):
    n = z.size
    logz = np.full(n, -np.inf)
    nz = z != 0
    logz[nz] = np.log(np.abs(z[nz]))
    neg = z < 0

    blocks: list[np.ndarray] = []
    partial = np.zeros(n)
    abs_err = np.zeros(n)
    run = np.zeros(n, dtype=int)
    maxlog = np.full(n, -np.inf)
    overflow = np.zeros(n, dtype=bool)
    done = np.zeros(n, dtype=bool)

    lc0, sc0 = series.float_coefs(1)
    c0 = sc0[0] * math.exp(lc0[0]) if sc0[0] else 0.0
    # z == 0 only sees the k = 0 term
    done[~nz] = True

    k0 = 0
    while not done.all():
        if k0 >= max_terms:
            i = int(np.flatnonzero(~done)[0])
            last = blocks[-1][i, -1] if blocks else c0
            raise SeriesConvergenceError(
                f"series did not converge within {max_terms} terms at z={z[i]!r}",
                partial_sum=float(partial[i]), bound=float(abs(last)))
        k1 = min(k0 + _BLOCK, max_terms)
        lc, sc = series.float_coefs(k1)
        ks = np.arange(k0, k1)
        lc, sc = lc[k0:k1], sc[k0:k1]
        with np.errstate(invalid="ignore"):
            lt = lc[None, :] + ks[None, :] * logz[:, None]
        lt[~nz, :] = -np.inf
        if k0 == 0:
            lt[~nz, 0] = lc[0]
        lt[:, sc == 0] = -np.inf
        maxlog = np.maximum(maxlog, lt.max(axis=1))
        overflow |= lt.max(axis=1) > _LOG_OVERFLOW
        with np.errstate(over="ignore"):
            mag = np.exp(np.minimum(lt, _LOG_OVERFLOW))
        sign = sc[None, :] * np.where(neg[:, None] & (ks[None, :] % 2 == 1), -1.0, 1.0)
        terms = sign * mag
        terms[done, :] = 0.0
        blocks.append(terms)
        with np.errstate(invalid="ignore"):
            rel = (2.0 + np.abs(lc)[None, :] + np.abs(ks[None, :] * logz[:, None]))
        rel[~np.isfinite(rel)] = 2.0
        abs_err += (mag * rel * (~done)[:, None]).sum(axis=1) * _EPS

        # stopping rule: _STOP_RUN consecutive terms below tol * |partial sum|
        csum = partial[:, None] + np.cumsum(terms, axis=1)
        small = np.abs(terms) <= tol * np.abs(csum)
        for j in range(terms.shape[1]):
            col = small[:, j]
            run = np.where(col, run + 1, 0)
            done |= (run >= _STOP_RUN)
        partial = csum[:, -1]
        done |= overflow
        k0 = k1

    allterms = np.concatenate(blocks, axis=1) if blocks else np.zeros((n, 0))
    out = np.empty(n)
    for i in range(n):
        if not nz[i]:
            out[i] = c0
        else:
            out[i] = math.fsum(allterms[i])
    with np.errstate(divide="ignore", invalid="ignore"):
        relerr = abs_err / np.abs(out)
    need_mp = nz & (overflow | ~(relerr <= tol))
    return out, need_mp, maxlog


def _evaluate_mp(series, z, tol, max_terms, maxlog):
    """Recompute one point with mpmath, raising precision until the digits survive cancellation."""
    if maxlog > _LOG_OVERFLOW:
        maxlog = _log_peak(series, z, max_terms)
    max_digits = max(0.0, maxlog / _LN10)
    dps = int(max_digits) + 30
    for _ in range(8):
        total, lost = _mp_sum(series, z, tol, max_terms, dps, maxlog)
        if total != 0 and dps - lost >= 20:
            break
        # a garbage total understates the loss, so grow geometrically as well
        dps = max(int(lost) + 35, 2 * dps) if math.isfinite(lost) else 2 * dps
    else:
        raise SeriesConvergenceError(
            f"extended-precision summation failed to resolve the value at z={z!r}",
            partial_sum=float(total), bound=math.exp(min(maxlog, _LOG_OVERFLOW)))
    val = float(total)
    if math.isinf(val):
        raise OverflowError(f"series value at z={z!r} exceeds double range")
    return val


def _log_peak(series, z, max_terms):
    """Largest ``log|c_k z^k|`` found by scanning the log-coefficients past the maximum."""
    logz = math.log(abs(z))
    peak = -math.inf
    k = 0
    while k < max_terms:
        flog, fsign = series.float_coef_lists(k + _BLOCK)
        for kk in range(k, min(len(flog), max_terms)):
            if fsign[kk] == 0.0:
                continue
            lt = flog[kk] + kk * logz
            if lt > peak:
                peak = lt
            elif lt < peak - 60.0:
                return peak
        k = len(flog)
    return peak


def _term_count_hint(series, z, floor_log, max_terms):
    """Index past the peak where log-terms drop below ``floor_log`` (where summation should end)."""
    logz = math.log(abs(z))
    peak = -math.inf
    k = 0
    while k < max_terms:
        flog, fsign = series.float_coef_lists(k + _BLOCK)
        for kk in range(k, min(len(flog), max_terms)):
            if fsign[kk] == 0.0:
                continue
            lt = flog[kk] + kk * logz
            peak = max(peak, lt)
            if lt < floor_log and lt < peak:
                return kk
        k = len(flog)
    return max_terms


def _mp_sum(series, z, tol, max_terms, dps, maxlog):
    inner_tol = min(tol, 1e-17)
    with mpmath.workdps(dps):
        zz = mpmath.mpf(z)
        total = mpmath.mpf(0)
        power = mpmath.mpf(1)
        run = 0
        k = 0
        chunk = _term_count_hint(series, z, maxlog - dps * _LN10, max_terms) + 8
        peak = mpmath.mpf(0)
        while True:
            if k >= max_terms:
                raise SeriesConvergenceError(
                    f"series did not converge within {max_terms} terms at z={z!r}",
                    partial_sum=float(total), bound=float(abs(term)))
            coefs = series.mp_coefs(min(k + chunk, max_terms), dps)
            stop = False
            for kk in range(k, len(coefs)):
                term = coefs[kk] * power
                total += term
                power *= zz
                at = abs(term)
                if at > peak:
                    peak = at
                if at <= inner_tol * abs(total):
                    run += 1
                    if run >= _STOP_RUN:
                        stop = True
                        k = kk + 1
                        break
                else:
                    run = 0
            if stop:
                break
            k = len(coefs)
            chunk = _BLOCK
        if total == 0:
            return total, math.inf
        lost = float(mpmath.log10(peak / abs(total))) if peak > 0 else 0.0
        return total, max(lost, 0.0)
