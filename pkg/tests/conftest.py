from __future__ import annotations

import json
import math
import pathlib

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

DATA = pathlib.Path(__file__).parent / "data"

# Every stochastic test draws from a named master seed listed here, so a
# failure can be replayed exactly and reruns are deterministic.
SEEDS = {
    "cpp_marginal": 101,
    "cpp_constructions": 102,
    "cpp_increments": 103,
    "cpp_cov": 104,
    "stable": 111,
    "inverse_stable": 112,
    "ml_variate": 113,
    "tfpp": 121,
    "tfpp_constructions": 122,
    "tfcpp_marginal": 131,
    "tfcpp_routes": 132,
    "tfcpp_moments": 133,
    "tfcpp_cov": 134,
    "martingale": 141,
    "limit_law": 151,
    "lrd_mc": 161,
    "hitting": 171,
    "risk": 181,
    "reproducibility": 191,
    "acceptance_c6": 201,
    "acceptance_c7": 202,
    "acceptance_c9": 203,
    "acceptance_c10": 204,
    "acceptance_c11": 205,
}

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def seeds():
    return SEEDS


@pytest.fixture(scope="session")
def ml_battery():
    return json.loads((DATA / "ml_battery.json").read_text())


def within_se(estimate: float, target: float, se: float, k: float = 4.0) -> bool:
    """``|estimate - target| <= k se`` (with a floor for exactly degenerate estimates)."""
    return abs(estimate - target) <= k * se + 1e-12


def freq_se(p: float, n: int) -> float:
    """Standard error of an empirical frequency with true probability ``p``."""
    return math.sqrt(max(p * (1.0 - p), 1e-300) / n)


def chi2_pvalue(counts: np.ndarray, probs: np.ndarray, min_expected: float = 5.0) -> float:
    """Goodness-of-fit p-value, pooling the tail so every cell expects >= min_expected."""
    from scipy import stats

    n = counts.sum()
    exp = probs * n
    # pool from the right until each cell has enough expectation
    obs_c, exp_c = [], []
    acc_o = acc_e = 0.0
    for o, e in zip(counts[::-1], exp[::-1]):
        acc_o += o
        acc_e += e
        if acc_e >= min_expected:
            obs_c.append(acc_o)
            exp_c.append(acc_e)
            acc_o = acc_e = 0.0
    if acc_e and obs_c:
        obs_c[-1] += acc_o
        exp_c[-1] += acc_e
    obs_c, exp_c = np.array(obs_c[::-1]), np.array(exp_c[::-1])
    exp_c *= obs_c.sum() / exp_c.sum()
    return float(stats.chisquare(obs_c, exp_c).pvalue)


# Verdict lines recorded by the acceptance suite, echoed in the terminal summary.
ACCEPTANCE_LINES: list[str] = []


def report_criterion(number: int, title: str, ok: bool, detail: str, elapsed: float) -> None:
    line = f"{'PASS' if ok else 'FAIL'}  criterion {number:>2}  {title}: {detail} ({elapsed:.1f} s)"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2])):
            terminalreporter.write_line(line)
