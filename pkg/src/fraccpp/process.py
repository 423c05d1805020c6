"""Sample paths and Monte-Carlo estimators for the counting processes.

Random streams
--------------
All randomness flows through :class:`RngStream`, a ``(seed, index)`` pair
mapped to an independent PCG64 generator via :class:`numpy.random.SeedSequence`
spawn keys.  Identical pairs reproduce identical draws, so a path or an
estimate is a pure function of its stream and its parameters.

Generators
----------
* one-sided ``beta``-stable variables with ``E exp(-s S) = exp(-s^beta)``
  use Kanter's representation ``S = (A(U) / W)^((1 - beta) / beta)`` with
  ``U`` uniform on (0, 1) and ``W`` standard exponential;
* the inverse stable time is ``E_beta(t) = (t / S)^beta``;
* Mittag-Leffler variates are ``(W / lambda)^(1/alpha) S`` (exponential
  mixture of a positive stable law);
* the time-fractional Poisson process is either a renewal process with
  Mittag-Leffler gaps or a Poisson process whose event epochs are mapped
  through the stable subordinator.

Monte-Carlo driver
------------------
:func:`mc_estimate` splits the replications into a fixed number of chunks,
chunk ``i`` drawing from ``stream.spawn(i)``.  Chunks can run on several
threads, but results are merged in chunk order with pairwise (Chan)
moment updates, so the estimate does not depend on the worker count.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import stats

from .dist import RateSequence, _rates

__all__ = [
    "RngStream",
    "SamplePath",
    "McSummary",
    "stable_variates",
    "sample_stable",
    "sample_inverse_stable",
    "sample_ml_variate",
    "sample_poisson_process",
    "sample_cpp",
    "sample_tfpp",
    "sample_tfcpp",
    "cpp_marginal",
    "tfpp_marginal",
    "tfcpp_marginal",
    "cpp_at_times",
    "tfcpp_at_times",
    "hitting_times",
    "mc_estimate",
    "limit_law_checks",
    "LimitLawReport",
]

DEFAULT_SEED = 20240917
MC_KINDS = ("mean", "variance", "covariance", "correlation", "pmf-frequency")
DEFAULT_CHUNKS = 20


@dataclass(frozen=True)
class RngStream:
    """Deterministic random stream identified by a master seed and a spawn path."""

    seed: int = DEFAULT_SEED
    index: tuple[int, ...] = ()

    def __post_init__(self):
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        idx = (self.index,) if isinstance(self.index, (int, np.integer)) else tuple(self.index)
        object.__setattr__(self, "seed", int(self.seed))
        object.__setattr__(self, "index", tuple(int(i) for i in idx))

    def spawn(self, i: int) -> RngStream:
        """Child stream ``i``; distinct children are statistically independent."""
        return RngStream(self.seed, self.index + (int(i),))

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(self.seed, spawn_key=self.index)
        return np.random.Generator(np.random.PCG64(ss))

    @property
    def lineage(self) -> str:
        return ":".join([str(self.seed), *map(str, self.index)])


def _gen(rng) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    if isinstance(rng, RngStream):
        return rng.generator()
    if rng is None:
        return RngStream().generator()
    return RngStream(int(rng)).generator()


def _stream(rng) -> RngStream:
    if isinstance(rng, RngStream):
        return rng
    seed = _seed_of(rng)
    if seed is None:
        raise TypeError("this routine needs a seed or RngStream, not a bare Generator")
    return RngStream(seed)


def _seed_of(rng) -> int | None:
    if isinstance(rng, RngStream):
        return rng.seed
    if isinstance(rng, (int, np.integer)):
        return int(rng)
    if rng is None:
        return DEFAULT_SEED
    return None


@dataclass(frozen=True, eq=False)
class SamplePath:
    """Event times and positive integer jump sizes of a counting path on ``[0, horizon]``."""

    horizon: float
    event_times: np.ndarray
    jump_sizes: np.ndarray
    seed: int | None = None
    stream: str | None = field(default=None, compare=False)

    def __post_init__(self):
        times = np.asarray(self.event_times, dtype=float).copy()
        jumps = np.asarray(self.jump_sizes, dtype=np.int64).copy()
        if not self.horizon > 0:
            raise ValueError("horizon must be > 0")
        if times.ndim != 1 or times.shape != jumps.shape:
            raise ValueError("event_times and jump_sizes must be aligned 1-d arrays")
        if times.size:
            if times[0] <= 0 or times[-1] > self.horizon:
                raise ValueError("event times must lie in (0, horizon]")
            if np.any(np.diff(times) <= 0):
                raise ValueError("event times must be strictly increasing")
            if np.any(jumps < 1):
                raise ValueError("jump sizes must be >= 1")
        times.setflags(write=False)
        jumps.setflags(write=False)
        object.__setattr__(self, "event_times", times)
        object.__setattr__(self, "jump_sizes", jumps)

    def __eq__(self, other):
        if not isinstance(other, SamplePath):
            return NotImplemented
        return (self.horizon == other.horizon and self.seed == other.seed
                and np.array_equal(self.event_times, other.event_times)
                and np.array_equal(self.jump_sizes, other.jump_sizes))

    __hash__ = None

    def value_at(self, t):
        """Right-continuous step value ``sum of jumps at times <= t``; 0 at ``t = 0``."""
        t = np.asarray(t, dtype=float)
        cum = np.concatenate(([0], np.cumsum(self.jump_sizes)))
        out = cum[np.searchsorted(self.event_times, t, side="right")]
        return int(out) if out.ndim == 0 else out

    @property
    def n_events(self) -> int:
        return int(self.event_times.size)

    def to_csv(self) -> str:
        lines = ["t,value"]
        lines.append(f"{0.0:.17g},0")
        total = 0
        for t, j in zip(self.event_times, self.jump_sizes):
            total += int(j)
            lines.append(f"{float(t):.17g},{total}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "horizon": float(self.horizon),
            "event_times": [float(x) for x in self.event_times],
            "jump_sizes": [int(x) for x in self.jump_sizes],
            "seed": self.seed,
            "stream": self.stream,
        }

    def to_json(self) -> str:
        rec = {"schema_version": 1, "kind": "sample_path", **self.to_dict()}
        return json.dumps(rec, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, rec: dict) -> SamplePath:
        return cls(rec["horizon"], np.array(rec["event_times"], dtype=float),
                   np.array(rec["jump_sizes"], dtype=np.int64), rec.get("seed"), rec.get("stream"))


@dataclass(frozen=True)
class McSummary:
    """Monte-Carlo point estimate with its standard error and provenance."""

    estimate: float
    std_error: float
    n_replications: int
    kind: str
    seed_lineage: str

    def __post_init__(self):
        if self.kind not in MC_KINDS:
            raise ValueError(f"unknown estimator kind {self.kind!r}")
        if not self.std_error >= 0:
            raise ValueError("std_error must be >= 0")
        if self.kind != "mean" and self.kind != "pmf-frequency" and self.n_replications < 2:
            raise ValueError("variance-type estimators need at least 2 replications")

    def z_score(self, target: float) -> float:
        if self.std_error == 0:
            return 0.0 if self.estimate == target else math.inf
        return (self.estimate - target) / self.std_error

    def to_dict(self) -> dict:
        return {
            "estimate": self.estimate,
            "std_error": self.std_error,
            "n_replications": self.n_replications,
            "kind": self.kind,
            "seed_lineage": self.seed_lineage,
        }


# ---------------------------------------------------------------------------
# elementary variates


def _check_beta_open(beta):
    if not 0 < beta < 1:
        raise ValueError(f"beta must lie in (0, 1), got {beta}")


def stable_variates(beta: float, size, rng) -> np.ndarray:
    """Positive ``beta``-stable draws with Laplace transform ``exp(-s^beta)``."""
    _check_beta_open(beta)
    gen = _gen(rng)
    u = gen.random(size)
    w = gen.standard_exponential(size)
    # u in (0, 1); guard the measure-zero endpoint
    u = np.where(u == 0.0, 0.5, u)
    pu = np.pi * u
    a = (np.sin(beta * pu) ** beta * np.sin((1.0 - beta) * pu) ** (1.0 - beta)
         / np.sin(pu)) ** (1.0 / (1.0 - beta))
    return (a / w) ** ((1.0 - beta) / beta)


def sample_stable(beta: float, times: Sequence[float], rng) -> np.ndarray:
    """Values ``D_beta(t_i)`` of one stable subordinator path at increasing times."""
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or np.any(times < 0) or np.any(np.diff(times) < 0):
        raise ValueError("times must be a nondecreasing sequence of nonnegative numbers")
    dt = np.diff(np.concatenate(([0.0], times)))
    s = stable_variates(beta, dt.size, rng)
    return np.cumsum(dt ** (1.0 / beta) * s)


def sample_inverse_stable(beta: float, t: float, rng, size=None):
    """Draws of ``E_beta(t) = (t / D_beta(1))^beta`` (first passage of level ``t``)."""
    if not t > 0:
        raise ValueError("t must be > 0")
    s = stable_variates(beta, size, rng)
    out = (t / s) ** beta
    return float(out) if size is None else out


def sample_ml_variate(alpha: float, lam: float, rng, size=None):
    """Mittag-Leffler(alpha, lam) draws, survival ``M_alpha(-lam t^alpha)``."""
    if not 0 < alpha <= 1:
        raise ValueError("alpha must lie in (0, 1]")
    if not lam > 0:
        raise ValueError("lambda must be > 0")
    gen = _gen(rng)
    w = gen.standard_exponential(size)
    if alpha == 1.0:
        out = w / lam
    else:
        out = (w / lam) ** (1.0 / alpha) * stable_variates(alpha, size, gen)
    return float(out) if size is None else out


# ---------------------------------------------------------------------------
# paths


def _jump_sampler(rates: RateSequence, gen, size):
    p = np.array(rates.lam) / rates.delta
    return gen.choice(np.arange(1, rates.support + 1), size=size, p=p)


def _make_path(T, times, jumps, rng):
    stream = rng.lineage if isinstance(rng, RngStream) else None
    return SamplePath(float(T), times, jumps, _seed_of(rng), stream)


def sample_poisson_process(lam: float, T: float, rng) -> SamplePath:
    """Poisson process with rate ``lam`` on ``[0, T]`` (unit jumps)."""
    if not lam > 0 or not T > 0:
        raise ValueError("rate and horizon must be > 0")
    gen = _gen(rng)
    n = gen.poisson(lam * T)
    times = np.sort(gen.uniform(0.0, T, n))
    return _make_path(T, times, np.ones(n, dtype=np.int64), rng)


def sample_cpp(rates, T: float, construction: str = "compound", rng=None) -> SamplePath:
    """Compound Poisson path on ``[0, T]``.

    ``"superposition"`` merges independent Poisson processes
    ``N(t, lambda_j)`` with jump size ``j``; ``"compound"`` runs a rate-``delta``
    Poisson process and draws i.i.d. jumps from ``lambda_j / delta``.
    """
    rates = _rates(rates)
    if not T > 0:
        raise ValueError("T must be > 0")
    gen = _gen(rng)
    if construction == "superposition":
        times, jumps = [], []
        for j, lam in enumerate(rates.lam, start=1):
            if lam == 0:
                continue
            n = gen.poisson(lam * T)
            times.append(gen.uniform(0.0, T, n))
            jumps.append(np.full(n, j, dtype=np.int64))
        times = np.concatenate(times)
        jumps = np.concatenate(jumps)
        order = np.argsort(times, kind="stable")
        return _make_path(T, times[order], jumps[order], rng)
    if construction == "compound":
        n = gen.poisson(rates.delta * T)
        times = np.sort(gen.uniform(0.0, T, n))
        return _make_path(T, times, _jump_sampler(rates, gen, n), rng)
    raise ValueError("construction must be 'superposition' or 'compound'")


def _renewal_times(gap_sampler, T, gen, batch=64):
    """Epochs of a renewal process on ``[0, T]`` from a vectorized gap sampler."""
    out = []
    t = 0.0
    while True:
        gaps = gap_sampler(gen, batch)
        epochs = t + np.cumsum(gaps)
        keep = epochs[epochs <= T]
        out.append(keep)
        if keep.size < batch:
            break
        t = float(epochs[-1])
    return np.concatenate(out)


def _subordinated_times(lam, beta, T, gen):
    """Poisson epochs in operational time mapped through a stable subordinator path."""
    out = []
    d = 0.0
    while True:
        gaps = gen.standard_exponential(64) / lam
        s = stable_variates(beta, 64, gen)
        real = d + np.cumsum(gaps ** (1.0 / beta) * s)
        keep = real[real <= T]
        out.append(keep)
        if keep.size < 64:
            break
        d = float(real[-1])
    return np.concatenate(out)


def sample_tfpp(lam: float, beta: float, T: float, construction: str = "subordination",
                rng=None) -> SamplePath:
    """Time-fractional Poisson path on ``[0, T]``.

    ``"renewal"`` uses Mittag-Leffler(beta, lam) gaps.  ``"subordination"``
    places Poisson(lam) epochs on the operational time axis and maps each
    one to the time the stable subordinator reaches it, i.e. the jump
    times of ``N(E_beta(t), lam)``.  ``beta = 1`` gives a Poisson process.
    """
    if not 0 < beta <= 1:
        raise ValueError("beta must lie in (0, 1]")
    if not lam > 0 or not T > 0:
        raise ValueError("rate and horizon must be > 0")
    gen = _gen(rng)
    if construction == "renewal" or beta == 1.0:
        times = _renewal_times(lambda g, n: sample_ml_variate(beta, lam, g, n), T, gen)
    elif construction == "subordination":
        times = _subordinated_times(lam, beta, T, gen)
    else:
        raise ValueError("construction must be 'renewal' or 'subordination'")
    return _make_path(T, times, np.ones(times.size, dtype=np.int64), rng)


def sample_tfcpp(rates, beta: float, T: float, rng=None, construction: str = "compound") -> SamplePath:
    """Time-fractional compound Poisson path: i.i.d. jumps at time-fractional Poisson epochs."""
    rates = _rates(rates)
    gen = _gen(rng)
    tfpp = sample_tfpp(rates.delta, beta, T,
                       "renewal" if construction == "compound" else "subordination", gen)
    jumps = _jump_sampler(rates, gen, tfpp.n_events)
    return _make_path(T, tfpp.event_times, jumps, rng)


# ---------------------------------------------------------------------------
# vectorized marginals


def cpp_marginal(rates, t: float, size: int, rng, construction: str = "superposition") -> np.ndarray:
    """``size`` draws of ``H(t)``."""
    rates = _rates(rates)
    gen = _gen(rng)
    if construction == "superposition":
        out = np.zeros(size, dtype=np.int64)
        for j, lam in enumerate(rates.lam, start=1):
            if lam > 0:
                out += j * gen.poisson(lam * t, size)
        return out
    if construction == "compound":
        n = gen.poisson(rates.delta * t, size)
        return _compound_sum(rates, n, gen)
    raise ValueError("construction must be 'superposition' or 'compound'")


def _compound_sum(rates: RateSequence, counts: np.ndarray, gen) -> np.ndarray:
    """``sum_{i <= counts} Y_i`` per entry via multinomial jump counts."""
    p = np.array(rates.lam) / rates.delta
    p = p / p.sum()
    m = gen.multinomial(counts, p)
    return m @ np.arange(1, rates.support + 1)


def tfpp_marginal(lam: float, beta: float, t: float, size: int, rng,
                  construction: str = "subordination") -> np.ndarray:
    """``size`` draws of ``N_beta(t, lam)``."""
    if not 0 < beta <= 1:
        raise ValueError("beta must lie in (0, 1]")
    gen = _gen(rng)
    if beta == 1.0:
        return gen.poisson(lam * t, size)
    if construction == "subordination":
        e = sample_inverse_stable(beta, t, gen, size)
        return gen.poisson(lam * e)
    if construction == "renewal":
        return _renewal_counts(lambda g, n: sample_ml_variate(beta, lam, g, n), [t], size, gen)[:, 0]
    raise ValueError("construction must be 'renewal' or 'subordination'")


def _renewal_counts(gap_sampler, times, size, gen) -> np.ndarray:
    """Counts of renewal epochs ``<= times[i]`` for ``size`` independent processes."""
    times = np.asarray(times, dtype=float)
    counts = np.zeros((size, times.size), dtype=np.int64)
    clock = np.zeros(size)
    active = np.arange(size)
    tmax = times[-1]
    while active.size:
        clock[active] += gap_sampler(gen, active.size)
        c = clock[active]
        counts[active] += c[:, None] <= times[None, :]
        active = active[c <= tmax]
    return counts


def tfcpp_marginal(rates, beta: float, t: float, size: int, rng,
                   construction: str = "subordinated") -> np.ndarray:
    """``size`` draws of ``H_beta(t)``.

    ``"subordinated"`` evaluates the generalized Poisson sum
    ``sum_j j N(E_beta(t), lambda_j)``; ``"compound"`` sums i.i.d. jumps over a
    renewal time-fractional Poisson count.
    """
    rates = _rates(rates)
    gen = _gen(rng)
    if construction == "subordinated":
        e = np.full(size, float(t)) if beta == 1.0 else sample_inverse_stable(beta, t, gen, size)
        out = np.zeros(size, dtype=np.int64)
        for j, lam in enumerate(rates.lam, start=1):
            if lam > 0:
                out += j * gen.poisson(lam * e)
        return out
    if construction == "compound":
        n = tfpp_marginal(rates.delta, beta, t, size, gen, "renewal")
        return _compound_sum(rates, n, gen)
    raise ValueError("construction must be 'subordinated' or 'compound'")


def cpp_at_times(rates, times: Sequence[float], size: int, rng) -> np.ndarray:
    """``(size, len(times))`` joint draws of ``H(t_1), .., H(t_m)`` from independent increments."""
    rates = _rates(rates)
    gen = _gen(rng)
    times = np.asarray(times, dtype=float)
    dt = np.diff(np.concatenate(([0.0], times)))
    if np.any(dt < 0):
        raise ValueError("times must be nondecreasing")
    inc = np.stack([cpp_marginal(rates, d, size, gen) for d in dt], axis=1)
    return np.cumsum(inc, axis=1)


def tfcpp_at_times(rates, beta: float, times: Sequence[float], size: int, rng) -> np.ndarray:
    """``(size, len(times))`` joint draws of ``H_beta`` along one renewal path per row."""
    rates = _rates(rates)
    gen = _gen(rng)
    times = np.asarray(times, dtype=float)
    if np.any(np.diff(times) < 0):
        raise ValueError("times must be nondecreasing")
    counts = _renewal_counts(lambda g, n: sample_ml_variate(beta, rates.delta, g, n),
                             times, size, gen)
    inc = np.diff(np.concatenate((np.zeros((size, 1), dtype=np.int64), counts), axis=1), axis=1)
    sums = np.stack([_compound_sum(rates, inc[:, i], gen) for i in range(times.size)], axis=1)
    return np.cumsum(sums, axis=1)


def hitting_times(rates, beta: float, k: int, size: int, rng) -> np.ndarray:
    """First times ``H_beta`` reaches level ``k`` (renewal epochs with i.i.d. jumps)."""
    rates = _rates(rates)
    if k < 1:
        raise ValueError("level k must be >= 1")
    gen = _gen(rng)
    clock = np.zeros(size)
    level = np.zeros(size, dtype=np.int64)
    active = np.arange(size)
    p = np.array(rates.lam) / rates.delta
    values = np.arange(1, rates.support + 1)
    while active.size:
        clock[active] += sample_ml_variate(beta, rates.delta, gen, active.size)
        level[active] += gen.choice(values, size=active.size, p=p)
        active = active[level[active] < k]
    return clock


# ---------------------------------------------------------------------------
# Monte-Carlo driver


class _Moments:
    """Pairwise-mergeable first and second moments of one or two variables."""

    __slots__ = ("n", "mx", "my", "sxx", "syy", "sxy")

    def __init__(self, x: np.ndarray, y: np.ndarray | None = None):
        x = np.asarray(x, dtype=float)
        self.n = x.size
        self.mx = float(x.mean()) if self.n else 0.0
        dx = x - self.mx
        self.sxx = float(dx @ dx)
        if y is None:
            self.my = self.syy = self.sxy = 0.0
        else:
            y = np.asarray(y, dtype=float)
            self.my = float(y.mean()) if self.n else 0.0
            dy = y - self.my
            self.syy = float(dy @ dy)
            self.sxy = float(dx @ dy)

    def merge(self, other: _Moments) -> _Moments:
        n = self.n + other.n
        if n == 0:
            return self
        out = _Moments.__new__(_Moments)
        out.n = n
        dx = other.mx - self.mx
        dy = other.my - self.my
        f = self.n * other.n / n
        out.mx = self.mx + dx * other.n / n
        out.my = self.my + dy * other.n / n
        out.sxx = self.sxx + other.sxx + dx * dx * f
        out.syy = self.syy + other.syy + dy * dy * f
        out.sxy = self.sxy + other.sxy + dx * dy * f
        return out

    def statistic(self, kind: str) -> float:
        if kind in ("mean", "pmf-frequency"):
            return self.mx
        if kind == "variance":
            return self.sxx / (self.n - 1)
        if kind == "covariance":
            return self.sxy / (self.n - 1)
        denom = math.sqrt(self.sxx * self.syy)
        return self.sxy / denom if denom > 0 else 0.0


def mc_estimate(kind: str, target: Callable[[np.random.Generator, int], np.ndarray],
                n_replications: int, rng=None, *, n: int | None = None, workers: int = 1,
                n_chunks: int = DEFAULT_CHUNKS) -> McSummary:
    """Monte-Carlo estimate of a mean, variance, covariance, correlation or pmf value.

    ``target(generator, size)`` returns ``size`` draws (shape ``(size,)``,
    or ``(size, 2)`` for covariance and correlation).  ``n`` selects the
    support point for ``kind="pmf-frequency"``.

    Standard errors: exact for means and frequencies; batch means over the
    chunks for the other kinds.
    """
    if kind not in MC_KINDS:
        raise ValueError(f"unknown estimator kind {kind!r}; expected one of {MC_KINDS}")
    if n_replications < 100:
        raise ValueError("mc_estimate needs at least 100 replications")
    if kind == "pmf-frequency" and n is None:
        raise ValueError("pmf-frequency needs the support point n")
    stream = _stream(rng)
    n_chunks = max(2, min(n_chunks, n_replications // 5))
    sizes = [n_replications // n_chunks + (i < n_replications % n_chunks) for i in range(n_chunks)]

    def run(i: int) -> _Moments:
        draws = np.asarray(target(stream.spawn(i).generator(), sizes[i]))
        if kind in ("covariance", "correlation"):
            if draws.ndim != 2 or draws.shape[1] != 2:
                raise ValueError("covariance/correlation targets must return (size, 2) arrays")
            return _Moments(draws[:, 0], draws[:, 1])
        if kind == "pmf-frequency":
            return _Moments(draws == n)
        return _Moments(draws)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, range(n_chunks)))
    else:
        parts = [run(i) for i in range(n_chunks)]

    total = parts[0]
    for p in parts[1:]:
        total = total.merge(p)
    est = total.statistic(kind)
    if kind in ("mean", "pmf-frequency"):
        se = math.sqrt(total.sxx / (total.n - 1) / total.n)
    else:
        batch = np.array([p.statistic(kind) for p in parts])
        se = float(batch.std(ddof=1) / math.sqrt(len(batch)))
    return McSummary(float(est), se, n_replications, kind, f"{stream.lineage}/chunks={n_chunks}")


# ---------------------------------------------------------------------------
# limit laws


@dataclass(frozen=True)
class LimitLawReport:
    """Outcome of the long-time checks.

    ``rms_deviation[i]`` is the root-mean-square of ``|H(t_i)/t_i - m|`` over
    the path ensemble (``m = sum_j j lambda_j``) and ``monotone_fraction`` the
    share of paths whose deviation decreases at every step.  ``ks_distance``
    compares ``H_beta(t)/(t^beta delta E Y)`` with independent ``E_beta(1)`` draws.
    """

    times: tuple[float, ...]
    rms_deviation: tuple[float, ...]
    monotone_fraction: float
    ks_distance: tuple[float, ...]
    ks_pvalue: tuple[float, ...]
    n_paths: int
    n_samples: int

    @property
    def rms_decreasing(self) -> bool:
        return all(b < a for a, b in zip(self.rms_deviation, self.rms_deviation[1:]))

    @property
    def ks_decreasing(self) -> bool:
        return all(b < a for a, b in zip(self.ks_distance, self.ks_distance[1:]))

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__} | {
            "rms_decreasing": self.rms_decreasing, "ks_decreasing": self.ks_decreasing}


def limit_law_checks(rates, beta: float, rng=None, times=(1e2, 1e3, 1e4),
                     n_paths: int = 2000, n_samples: int = 100_000) -> LimitLawReport:
    """Long-time behaviour of ``H(t)/t`` and ``H_beta(t)/t^beta``.

    Each of ``n_paths`` compound Poisson paths is followed through the
    increasing ``times`` (nested independent increments), so the deviation
    ``|H(t)/t - m|`` is tracked per path.  For the fractional process the
    scaled values share one set of ``E_beta(1)`` draws across ``times``
    (``E_beta(t) = t^beta E_beta(1)`` in law), so the KS distance to an
    independent ``E_beta(1)`` sample isolates the shrinking Poisson noise.
    """
    rates = _rates(rates)
    _check_beta_open(beta)
    stream = _stream(rng)
    times = tuple(float(t) for t in times)
    if list(times) != sorted(times) or len(times) < 2:
        raise ValueError("times must be increasing with at least two entries")
    m = rates.weighted_sum(1)

    h = cpp_at_times(rates, times, n_paths, stream.spawn(0))
    dev = np.abs(h / np.array(times) - m)
    rms = tuple(float(x) for x in np.sqrt((dev**2).mean(axis=0)))
    mono = float(np.mean(np.all(np.diff(dev, axis=1) < 0, axis=1)))

    gen = stream.spawn(1).generator()
    e1 = sample_inverse_stable(beta, 1.0, gen, n_samples)
    reference = sample_inverse_stable(beta, 1.0, stream.spawn(2), n_samples)
    dists, pvals = [], []
    for t in times:
        e = t**beta * e1
        h_beta = np.zeros(n_samples, dtype=np.int64)
        for j, lam in enumerate(rates.lam, start=1):
            if lam > 0:
                h_beta += j * gen.poisson(lam * e)
        # delta E(Y) = m
        res = stats.ks_2samp(h_beta / (t**beta * m), reference)
        dists.append(float(res.statistic))
        pvals.append(float(res.pvalue))
    return LimitLawReport(times, rms, mono, tuple(dists), tuple(pvals), n_paths, n_samples)
