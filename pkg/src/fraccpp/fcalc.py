"""Grid approximations of Caputo and Riemann-Liouville derivatives of order ``0 < beta <= 1``.

* Caputo: the L1 scheme.  ``f`` is replaced by its piecewise-linear
  interpolant and the kernel ``(t - s)^(-beta) / Gamma(1 - beta)`` is
  integrated exactly, giving
  ``h^(-beta) / Gamma(2 - beta) * sum_j b_(n-1-j) (f_(j+1) - f_j)`` with
  ``b_k = (k+1)^(1-beta) - k^(1-beta)``.  Consistency is ``O(h^(2-beta))``
  for smooth ``f``.
* Riemann-Liouville: Grunwald-Letnikov weights ``(-1)^j C(beta, j)``, a
  first-order scheme that is independent of the L1 construction, so the
  relation ``D f = d f + t^(-beta) f(0) / Gamma(1 - beta)`` can be checked
  between the two.

At ``beta = 1`` both reduce to second-order finite differences.

The residual checks evaluate the pmfs exactly (through the special-function
layer) on grids of decreasing step, apply the L1 scheme, and report the
maximum residual over the nodes of a window bounded away from ``t = 0``,
where the pmfs have a weakly singular derivative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import specfun
from .dist import _rates, jump_law, tfcpp_pmf

__all__ = [
    "FracGrid",
    "FdeRow",
    "FdeReport",
    "caputo_derivative",
    "rl_derivative",
    "verify_tfpp_fde",
    "verify_tfcpp_fde",
    "DEFAULT_STEPS",
]

DEFAULT_STEPS = (1 / 64, 1 / 128, 1 / 256, 1 / 512)
DEFAULT_WINDOW = (0.1, 2.0)


@dataclass(frozen=True)
class FracGrid:
    """Values ``f(t_i)`` on the uniform grid ``t_i = i h``, ``i = 0..M``."""

    h: float
    values: np.ndarray

    def __post_init__(self):
        vals = np.array(self.values, dtype=float)
        if vals.ndim != 1:
            raise ValueError("grid values must be one-dimensional")
        if not self.h > 0:
            raise ValueError("step h must be > 0")
        if vals.size - 1 < 4:
            raise ValueError("grid too coarse: need M >= 4 intervals")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def m(self) -> int:
        return self.values.size - 1

    @property
    def times(self) -> np.ndarray:
        return self.h * np.arange(self.m + 1)

    @classmethod
    def from_function(cls, f, T: float, m: int) -> FracGrid:
        """Sample ``f`` (vectorized) on ``[0, T]`` with ``m`` intervals."""
        if m < 4:
            raise ValueError("grid too coarse: need M >= 4 intervals")
        h = T / m
        return cls(h, np.asarray(f(h * np.arange(m + 1)), dtype=float))


def _check_beta(beta):
    if not 0 < beta <= 1:
        raise ValueError(f"beta must lie in (0, 1], got {beta}")


def _first_derivative(grid: FracGrid) -> FracGrid:
    return FracGrid(grid.h, np.gradient(grid.values, grid.h, edge_order=2))


def _l1_weights(beta: float, m: int) -> np.ndarray:
    k = np.arange(m + 1, dtype=float)
    return (k + 1.0) ** (1.0 - beta) - k ** (1.0 - beta)


def caputo_derivative(grid: FracGrid, beta: float) -> FracGrid:
    """L1 approximation of the Caputo derivative on every node (0 at ``t = 0``)."""
    _check_beta(beta)
    if beta == 1.0:
        return _first_derivative(grid)
    m = grid.m
    diffs = np.diff(grid.values)
    b = _l1_weights(beta, m)
    # out[n] = sum_{j<n} b[n-1-j] diffs[j]: a causal convolution
    conv = np.convolve(b[:m], diffs)[:m]
    out = np.empty(m + 1)
    out[0] = 0.0
    out[1:] = conv * grid.h ** (-beta) / math.gamma(2.0 - beta)
    return FracGrid(grid.h, out)


def _gl_weights(beta: float, m: int) -> np.ndarray:
    w = np.empty(m + 1)
    w[0] = 1.0
    for j in range(1, m + 1):
        w[j] = w[j - 1] * (1.0 - (beta + 1.0) / j)
    return w


def rl_derivative(grid: FracGrid, beta: float) -> FracGrid:
    """Grunwald-Letnikov approximation of the Riemann-Liouville derivative.

    Node 0 is set to the exact boundary behaviour: 0 when ``f(0) = 0`` and
    ``inf`` (with the sign of ``f(0)``) otherwise.
    """
    _check_beta(beta)
    if beta == 1.0:
        return _first_derivative(grid)
    m = grid.m
    w = _gl_weights(beta, m)
    out = np.convolve(w, grid.values)[: m + 1] * grid.h ** (-beta)
    f0 = grid.values[0]
    out[0] = 0.0 if f0 == 0 else math.copysign(math.inf, f0)
    return FracGrid(grid.h, out)


@dataclass(frozen=True)
class FdeRow:
    n: int
    h: float
    residual: float
    order: float | None


@dataclass(frozen=True)
class FdeReport:
    """Maximum residuals per level ``n`` and step ``h`` with observed orders.

    ``order`` is ``log2(r(h) / r(h/2))`` between consecutive steps
    (``None`` on the coarsest row of each level).
    """

    kind: str
    beta: float
    window: tuple[float, float]
    rows: tuple[FdeRow, ...] = field(default_factory=tuple)

    def residuals(self, n: int) -> list[float]:
        return [r.residual for r in self.rows if r.n == n]

    def orders(self, n: int) -> list[float]:
        return [r.order for r in self.rows if r.n == n and r.order is not None]

    @property
    def levels(self) -> list[int]:
        return sorted({r.n for r in self.rows})

    @property
    def min_order(self) -> float:
        return min(o for n in self.levels for o in self.orders(n))

    def fitted_order(self, n: int) -> float:
        """Least-squares slope of ``log r(h)`` against ``log h`` over every step of level ``n``."""
        rows = [r for r in self.rows if r.n == n and r.residual > 0]
        if len(rows) < 2:
            raise ValueError(f"level {n} has fewer than two nonzero residuals")
        return float(np.polyfit(np.log([r.h for r in rows]), np.log([r.residual for r in rows]), 1)[0])

    @property
    def estimated_order(self) -> float:
        """Smallest fitted order over the levels; less sensitive to the coarsest step than ``min_order``."""
        return min(self.fitted_order(n) for n in self.levels)

    @property
    def monotone(self) -> bool:
        """True when no residual grows under refinement."""
        return all(all(b < a for a, b in zip(res, res[1:]))
                   for res in (self.residuals(n) for n in self.levels))

    def bound_constant(self, n: int) -> float:
        """``C`` with ``residual <= C h^(2 - beta)`` on every step tested."""
        p = 2.0 - self.beta if self.beta < 1 else 2.0
        return max(r.residual / r.h**p for r in self.rows if r.n == n)

    def to_records(self) -> list[dict]:
        return [{"n": r.n, "h": r.h, "residual": r.residual, "order": r.order} for r in self.rows]


def _steps(steps: Sequence[float], window) -> tuple[list[float], float, float]:
    steps = [float(h) for h in steps]
    if len(steps) < 2 or any(b >= a for a, b in zip(steps, steps[1:])):
        raise ValueError("steps must be a decreasing sequence of at least two values")
    lo, hi = float(window[0]), float(window[1])
    if not 0 < lo < hi:
        raise ValueError("window must satisfy 0 < t_lo < t_hi")
    return steps, lo, hi


def _report(kind, beta, window, steps, n_values, residual_fn) -> FdeReport:
    steps, lo, hi = _steps(steps, window)
    rows = []
    for n in n_values:
        prev = None
        for h in steps:
            m = int(round(hi / h))
            if abs(m * h - hi) > 1e-9 * hi:
                raise ValueError("the window end must be a multiple of every step")
            t = h * np.arange(m + 1)
            res = residual_fn(n, t, h)
            # t_lo' = max(h, t_lo); compare on nodes inside the window only
            mask = t >= max(h, lo) - 1e-12
            r = float(np.max(np.abs(res[mask])))
            order = None if prev is None or r == 0 else math.log2(prev / r)
            rows.append(FdeRow(n, h, r, order))
            prev = r
    return FdeReport(kind, beta, (lo, hi), tuple(rows))


def verify_tfpp_fde(lam: float, beta: float, n_max: int, steps: Sequence[float] = DEFAULT_STEPS,
                    window=DEFAULT_WINDOW) -> FdeReport:
    """Residuals of ``d^beta p(n|t) = -lam (p(n|t) - p(n-1|t))`` (``p(-1) = 0``) for ``n <= n_max``."""
    _check_beta(beta)
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if not lam > 0:
        raise ValueError("lambda must be > 0")

    def residual(n, t, h):
        p_n = specfun.tfpp_pmf(n, t, lam, beta)
        p_prev = specfun.tfpp_pmf(n - 1, t, lam, beta) if n > 0 else 0.0
        d = caputo_derivative(FracGrid(h, p_n), beta).values
        return d + lam * (p_n - p_prev)

    return _report("tfpp", beta, window, steps, range(n_max + 1), residual)


def verify_tfcpp_fde(rates, beta: float, n_max: int, steps: Sequence[float] = DEFAULT_STEPS,
                     window=DEFAULT_WINDOW, method: str = "ml_derivative") -> FdeReport:
    """Residuals of ``d^beta q(n|t) = -delta q(n|t) + delta sum_k h_k(n) p(k-1|t, delta)``.

    ``q`` is the compound pmf (evaluated by ``method``), ``p`` the
    time-fractional Poisson pmf with rate ``delta`` and ``h_k(n)`` the
    ``k``-fold jump convolution.  For ``n = 0`` the sum is empty.
    """
    _check_beta(beta)
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    rates = _rates(rates)
    law = jump_law(rates, max(n_max, 1))
    delta = rates.delta
    cache: dict = {}

    def p_table(t, h):
        if h not in cache:
            cache[h] = np.stack([specfun.tfpp_pmf(k, t, delta, beta) for k in range(n_max + 1)], axis=1)
        return cache[h]

    def residual(n, t, h):
        q_n = tfcpp_pmf(rates, t, beta, n, method=method)
        p = p_table(t, h)
        source = sum(law.h[k, n] * p[:, k - 1] for k in range(1, n + 1)) if n > 0 else 0.0
        d = caputo_derivative(FracGrid(h, q_n), beta).values
        return d + delta * q_n - delta * source

    return _report("tfcpp", beta, window, steps, range(n_max + 1), residual)
