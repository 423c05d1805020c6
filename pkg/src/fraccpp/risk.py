"""First-passage times of the time-fractional compound Poisson process and a risk-reserve model.

``T_k = inf{s : H_beta(s) >= k}`` satisfies ``P{T_k <= s} = P{H_beta(s) >= k}``
(whether the event is written with ``<`` or ``<=`` only changes a null set),
so its CDF is one minus a finite sum of pmf values.  The reserve is
``R(t) = c t - H_beta(t)``.  The ruin frequency reported by
:func:`risk_paths` is an empirical ensemble statistic with no closed form
behind it.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import interpolate

from . import moments, process
from .dist import RateSequence, _rates, tfcpp_pmf

__all__ = [
    "RiskModel",
    "HittingSpec",
    "RiskEnsemble",
    "hitting_time_cdf",
    "hitting_time_pdf",
    "hitting_time_cdf_interp",
    "HittingCdfInterpolant",
    "risk_stats",
    "risk_paths",
]


@dataclass(frozen=True)
class RiskModel:
    """Premium rate ``c > 0``, claim rates and fractional order ``beta``."""

    c: float
    rates: RateSequence
    beta: float = 1.0

    def __post_init__(self):
        if not self.c > 0:
            raise ValueError(f"premium rate c must be > 0, got {self.c}")
        if not 0 < self.beta <= 1:
            raise ValueError(f"beta must lie in (0, 1], got {self.beta}")
        object.__setattr__(self, "rates", _rates(self.rates))


@dataclass(frozen=True)
class HittingSpec:
    """Level ``k >= 1`` and an increasing grid of times ``s``."""

    k: int
    s_grid: tuple[float, ...]

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("level k must be >= 1")
        grid = tuple(float(x) for x in self.s_grid)
        if any(x < 0 for x in grid) or any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("s grid must be nonnegative and strictly increasing")
        object.__setattr__(self, "s_grid", grid)


def hitting_time_cdf(rates, beta: float, k: int, s):
    """``P{T_k <= s} = 1 - sum_{m<k} P{H_beta(s) = m}``; vectorized in ``s``."""
    rates = _rates(rates)
    if k < 1:
        raise ValueError("level k must be >= 1")
    s = np.asarray(s, dtype=float)
    if np.any(s < 0):
        raise ValueError("s must be >= 0")
    scalar = s.ndim == 0
    s = np.atleast_1d(s)
    below = sum(np.atleast_1d(tfcpp_pmf(rates, s, beta, m, method="auto")) for m in range(k))
    out = np.clip(1.0 - below, 0.0, 1.0)
    out[s == 0] = 0.0
    return float(out[0]) if scalar else out


@dataclass(frozen=True)
class HittingCdfInterpolant:
    """Monotone (PCHIP) interpolation of the hitting-time CDF in ``log s``.

    Exact CDF values sit on a geometric grid over ``[s_min, s_max]``;
    outside it the exact CDF is evaluated directly.  ``max_error`` is the largest deviation from the exact CDF at the grid
    midpoints.
    """

    rates: RateSequence
    beta: float
    k: int
    grid: np.ndarray
    values: np.ndarray
    max_error: float

    def __call__(self, s):
        s = np.asarray(s, dtype=float)
        out = np.empty(s.shape)
        lo, hi = self.grid[0], self.grid[-1]
        inside = (s >= lo) & (s <= hi)
        out[inside] = self._pchip(np.log(s[inside]))
        if not np.all(inside):
            out[~inside] = hitting_time_cdf(self.rates, self.beta, self.k, s[~inside])
        return out

    @property
    def _pchip(self):
        return interpolate.PchipInterpolator(np.log(self.grid), self.values)


def hitting_time_cdf_interp(rates, beta: float, k: int, s_min: float, s_max: float,
                            n_grid: int = 1500) -> HittingCdfInterpolant:
    """Build a :class:`HittingCdfInterpolant` for fast evaluation on large samples."""
    rates = _rates(rates)
    if not 0 < s_min < s_max:
        raise ValueError("need 0 < s_min < s_max")
    grid = np.geomspace(s_min, s_max, n_grid)
    values = hitting_time_cdf(rates, beta, k, grid)
    mids = np.sqrt(grid[:-1] * grid[1:])[::7]
    interp = HittingCdfInterpolant(rates, beta, k, grid, values, 0.0)
    err = float(np.max(np.abs(interp(mids) - hitting_time_cdf(rates, beta, k, mids))))
    return HittingCdfInterpolant(rates, beta, k, grid, values, err)


def hitting_time_pdf(rates, beta: float, k: int, s_grid: Sequence[float], *, rtol: float = 1e-7,
                     max_halvings: int = 8) -> np.ndarray:
    """Density of ``T_k`` on ``s_grid`` by central differences of the CDF.

    The step starts at ``min(s/4, 1/16)`` and is halved until two successive
    Richardson-extrapolated quotients agree to ``rtol``.
    """
    rates = _rates(rates)
    spec = HittingSpec(k, tuple(s_grid))
    s = np.asarray(spec.s_grid)
    if s.size < 2:
        raise ValueError("grid too coarse: need at least two points")
    if s[0] <= 0:
        raise ValueError("the density is evaluated at s > 0 only")

    def quotient(h):
        up = hitting_time_cdf(rates, beta, k, s + h)
        dn = hitting_time_cdf(rates, beta, k, s - h)
        return (up - dn) / (2.0 * h)

    h = np.minimum(s / 4.0, 1.0 / 16.0)
    prev_d = quotient(h)
    prev_r = None
    for _ in range(max_halvings):
        h = h / 2.0
        d = quotient(h)
        r = (4.0 * d - prev_d) / 3.0
        if prev_r is not None and np.all(np.abs(r - prev_r) <= rtol * np.maximum(np.abs(r), 1e-12)):
            return np.maximum(r, 0.0)
        prev_d, prev_r = d, r
    return np.maximum(prev_r, 0.0)


def risk_stats(model: RiskModel, t: float) -> tuple[float, float]:
    """``(c t - q t^beta E(Y), Var H_beta(t))``; the variance does not depend on ``c``."""
    if not t >= 0:
        raise ValueError("t must be >= 0")
    if t == 0:
        return 0.0, 0.0
    mean, var = moments.tfcpp_mean_var(model.rates, t, model.beta)
    return model.c * t - mean, var


@dataclass(frozen=True)
class RiskEnsemble:
    """Reserve paths on a time grid plus ensemble statistics.

    ``reserve[i, j]`` is ``R(times[j])`` on path ``i``; ``min_reserve[i]`` is
    the infimum over ``[0, T]``, attained just after a claim or at 0.
    """

    model: RiskModel
    times: np.ndarray
    reserve: np.ndarray
    min_reserve: np.ndarray
    seed_lineage: str

    @property
    def ruin_frequency(self) -> float:
        """Empirical fraction of paths whose reserve drops below 0 on ``[0, T]``."""
        return float(np.mean(self.min_reserve < 0))

    def summary(self) -> dict:
        mr = self.min_reserve
        n = mr.size
        freq = self.ruin_frequency
        return {
            "schema_version": 1,
            "kind": "risk-summary",
            "c": self.model.c,
            "rates": list(self.model.rates.lam),
            "beta": self.model.beta,
            "horizon": float(self.times[-1]),
            "n_paths": n,
            "seed_lineage": self.seed_lineage,
            "mean_reserve": [float(x) for x in self.reserve.mean(axis=0)],
            "times": [float(x) for x in self.times],
            "min_reserve_mean": float(mr.mean()),
            "min_reserve_quantiles": {str(q): float(np.quantile(mr, q)) for q in (0.05, 0.5, 0.95)},
            "empirical_ruin_frequency": freq,
            "empirical_ruin_frequency_se": math.sqrt(freq * (1 - freq) / n),
            "note": "ruin frequency is an empirical ensemble statistic, not a closed form",
        }

    def summary_json(self) -> str:
        return json.dumps(self.summary(), indent=2, sort_keys=True)

    def to_csv(self) -> str:
        lines = ["path,t,reserve"]
        for i, row in enumerate(self.reserve):
            lines += [f"{i},{t:.17g},{r:.17g}" for t, r in zip(self.times, row)]
        return "\n".join(lines) + "\n"


def risk_paths(model: RiskModel, T: float, n_paths: int, rng=None, n_times: int = 21) -> RiskEnsemble:
    """Simulate ``n_paths`` reserve paths ``c t - H_beta(t)`` on ``[0, T]``.

    Path ``i`` draws from substream ``i`` of the master stream, so results do
    not depend on how paths are batched.
    """
    if n_paths < 1:
        raise ValueError("n_paths must be >= 1")
    if not T > 0:
        raise ValueError("T must be > 0")
    stream = process._stream(rng)
    times = np.linspace(0.0, T, n_times)
    reserve = np.empty((n_paths, n_times))
    min_reserve = np.empty(n_paths)
    for i in range(n_paths):
        path = process.sample_tfcpp(model.rates, model.beta, T, stream.spawn(i))
        reserve[i] = model.c * times - path.value_at(times)
        et = np.asarray(path.event_times)
        if et.size:
            after = model.c * et - np.cumsum(path.jump_sizes)
            min_reserve[i] = min(0.0, float(after.min()))
        else:
            min_reserve[i] = 0.0
    return RiskEnsemble(model, times, reserve, min_reserve, stream.lineage)
