"""Regenerate tests/data/ml_battery.json with plain mpmath series sums.

The oracle shares no code with the package: each value is a direct
high-precision sum of the defining series, with the working precision set
from the size of the largest term so cancellation cannot eat the digits.

Run from the repository root:  python3 tests/oracles/make_ml_battery.py
"""

from __future__ import annotations

import json
import pathlib

import mpmath as mp
import numpy as np

SEED = 20240601
N_POINTS = 500
N_DERIV = 70
DOMAIN = 100.0  # |z|^(1/alpha) bound for negative arguments


def series(term, guard=40):
    """Sum term(k) for k = 0, 1, ... at a precision covering the peak term.

    Summation stops once terms are 40 digits below the peak and below 1e-45
    in absolute size (values in the battery are far above that).
    """
    # pass 1: locate the peak magnitude cheaply
    with mp.workdps(30):
        peak, k, small = mp.mpf(0), 0, 0
        while True:
            t = abs(term(k))
            peak = max(peak, t)
            if t < peak * mp.mpf(10) ** -40 and t < mp.mpf(10) ** -45:
                small += 1
                if small > 5:
                    break
            else:
                small = 0
            k += 1
    digits = int(max(0, mp.log10(peak + 1))) + guard
    with mp.workdps(digits):
        total = mp.mpf(0)
        for j in range(k + 1):
            total += term(j)
        return total


def prabhakar(a, b, g, z):
    a, b, g, z = (mp.mpf(x) for x in (a, b, g, z))
    return series(lambda k: mp.rf(g, k) / mp.factorial(k) * z**k * mp.rgamma(a * k + b))


def ml_derivative_oracle(a, b, n, x):
    # n-th derivative of sum z^k / Gamma(a k + b), term by term
    a, b, x = mp.mpf(a), mp.mpf(b), mp.mpf(x)
    return series(lambda k: mp.ff(k + n, n) * x**k * mp.rgamma(a * (k + n) + b))


def main():
    rng = np.random.default_rng(SEED)
    points = []
    for i in range(N_POINTS):
        kind = ("ml_one", "ml_two", "ml_prabhakar")[i % 3]
        a = float(rng.uniform(0.2, 1.5))
        b = 1.0 if kind == "ml_one" else float(rng.uniform(0.1, 3.0))
        g = float(rng.uniform(0.1, 4.0)) if kind == "ml_prabhakar" else 1.0
        zmax = DOMAIN**a
        if rng.random() < 0.7:
            z = -float(rng.uniform(0.0, zmax))
        else:
            z = float(rng.uniform(0.0, min(zmax, 0.5 * 600.0**a)))
        v = prabhakar(a, b, g, z)
        points.append({"kind": kind, "alpha": a, "beta": b, "gamma": g, "z": z,
                       "value": mp.nstr(v, 25)})
    derivs = []
    for i in range(N_DERIV):
        a = float(rng.uniform(0.3, 1.0))
        b = float(rng.uniform(0.5, 2.0))
        n = int(i % 7)
        x = float(rng.uniform(-(30.0**a), 5.0))
        derivs.append({"alpha": a, "beta": b, "n": n, "x": x,
                       "value": mp.nstr(ml_derivative_oracle(a, b, n, x), 25)})
    out = {"seed": SEED, "domain": DOMAIN, "points": points, "derivatives": derivs}
    path = pathlib.Path(__file__).resolve().parents[1] / "data" / "ml_battery.json"
    path.write_text(json.dumps(out, indent=1) + "\n")
    print(f"wrote {path} ({len(points)} points, {len(derivs)} derivatives)")


if __name__ == "__main__":
    main()
