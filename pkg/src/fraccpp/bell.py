"""Ordinary and exponential Bell polynomials in exact rational arithmetic.

Three independent evaluations of the complete exponential polynomial are
provided so they can be checked against each other:

* ``"enumeration"`` sums the multinomial-weighted monomials over the
  composition index sets (see :class:`CompositionSet`);
* ``"determinant"`` evaluates an ``n x n`` almost-triangular determinant
  with fraction-free (Bareiss) elimination;
* ``"probabilistic"`` uses independent Poisson variables
  ``X_j ~ Poi(lambda_j)`` with ``u_j = j! lambda_j`` and returns
  ``n! P{W_n = n} / P{S_n = 0}``, where ``S_n = sum X_j`` and
  ``W_n = sum j X_j``, computed by a deterministic convolution of Poisson
  masses in double precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

__all__ = [
    "BellArgs",
    "CompositionSet",
    "as_fractions",
    "ordinary_partial_bell",
    "exp_partial_bell",
    "complete_bell",
    "bell_partial_probabilistic",
    "exp_partial_bell_table",
    "poisson_weight_pmf",
]

METHODS = ("enumeration", "determinant", "probabilistic")


def as_fractions(u) -> tuple[Fraction, ...]:
    """Convert ints, floats (exactly), strings such as ``"1/3"`` or Fractions."""
    out = []
    for x in u:
        if isinstance(x, Fraction):
            out.append(x)
        elif isinstance(x, (int, np.integer)):
            out.append(Fraction(int(x)))
        elif isinstance(x, str):
            out.append(Fraction(x))
        else:
            xf = float(x)
            if not math.isfinite(xf):
                raise ValueError(f"Bell arguments must be finite, got {x!r}")
            out.append(Fraction(xf))
    return tuple(out)


@dataclass(frozen=True)
class BellArgs:
    """Arguments ``u_1..u_n`` (exact rationals), degree ``n`` and optional part count ``k``."""

    u: tuple
    n: int
    k: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "u", as_fractions(self.u))
        if self.n < 1:
            raise ValueError(f"degree n must be >= 1, got {self.n}")
        if self.k is not None and not 1 <= self.k <= self.n:
            raise ValueError(f"part count k must satisfy 1 <= k <= n, got k={self.k}, n={self.n}")
        if len(self.u) < self.n:
            raise ValueError(f"need at least n={self.n} arguments, got {len(self.u)}")


class CompositionSet:
    """Tuples ``(c_1..c_n)`` of nonnegative integers with ``sum c_j = k`` and ``sum j c_j = n``.

    With ``k=None`` only the weighted constraint is imposed (all part
    counts).  ``parts`` restricts the indices ``j`` allowed to be nonzero,
    which prunes the search when most ``u_j`` vanish.  Tuples are emitted
    in colexicographic order (``c_n`` varies slowest).

    Iterating yields full length-``n`` tuples; :meth:`star` yields the
    truncation to length ``n - k + 1``, which loses nothing because no part
    can exceed ``n - k + 1``.
    """

    def __init__(self, n: int, k: int | None = None, parts: Sequence[int] | None = None):
        if n < 0:
            raise ValueError("n must be >= 0")
        if k is not None and k < 0:
            raise ValueError("k must be >= 0")
        self.n = int(n)
        self.k = None if k is None else int(k)
        allowed = range(1, self.n + 1) if parts is None else sorted(
            {int(j) for j in parts if 1 <= int(j) <= self.n})
        self.parts = tuple(allowed)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        n, k = self.n, self.k
        if n == 0:
            if k in (None, 0):
                yield ()
            return
        c = [0] * n
        yield from self._fill(c, len(self.parts) - 1, n, k)

    def _fill(self, c, idx, rem_w, rem_k):
        if idx < 0:
            if rem_w == 0 and rem_k in (None, 0):
                yield tuple(c)
            return
        j = self.parts[idx]
        smallest = self.parts[0]
        hi = rem_w // j
        if rem_k is not None:
            hi = min(hi, rem_k)
        for cj in range(hi + 1):
            w = rem_w - j * cj
            kk = None if rem_k is None else rem_k - cj
            if idx > 0:
                below = self.parts[idx - 1]
                if kk is not None:
                    # remaining kk parts must weigh between kk*smallest and kk*below
                    if w < kk * smallest or w > kk * below:
                        continue
                elif w > 0 and w < smallest:
                    continue
            c[j - 1] = cj
            yield from self._fill(c, idx - 1, w, kk)
        c[j - 1] = 0

    def star(self) -> Iterator[tuple[int, ...]]:
        if self.k is None:
            raise ValueError("the truncated index set needs a fixed part count k")
        width = self.n - self.k + 1
        for c in self:
            yield c[:width]

    def __len__(self) -> int:
        return sum(1 for _ in self)


def _coerce(n, k, u, need_k: bool):
    if isinstance(n, BellArgs):
        args = n
        n, k, u = args.n, args.k, args.u
    else:
        u = as_fractions(u if u is not None else ())
    if need_k and k is None:
        raise ValueError("partial Bell polynomials need a part count k")
    if len(u) < n:
        raise ValueError(f"need at least n={n} arguments, got {len(u)}")
    return int(n), (None if k is None else int(k)), u


def _support(u, n):
    return [j for j in range(1, n + 1) if u[j - 1] != 0]


def _scaled_integers(v):
    """Write rationals ``v`` as ``a_j / D`` with integer ``a_j`` and common ``D``."""
    d = 1
    for x in v:
        d = math.lcm(d, x.denominator)
    return [x.numerator * (d // x.denominator) for x in v], d


def _exp_partial_by_k(n: int, u, ks) -> dict[int, Fraction]:
    """``B_{n,k}(u)`` for every ``k`` in ``ks`` by pruned enumeration in integers.

    With ``v_j = u_j / j! = a_j / D`` each term is
    ``(n!/k!) multinom(k; c) prod a_j^{c_j} / D^k``.
    """
    parts = _support(u, n)
    v = [Fraction(0)] + [u[j - 1] / math.factorial(j) for j in range(1, n + 1)]
    a, d = _scaled_integers(v)
    fact = [math.factorial(i) for i in range(n + 1)]
    out = {}
    for k in ks:
        acc = 0
        for c in CompositionSet(n, k, parts):
            term = fact[k]
            for j in parts:
                cj = c[j - 1]
                if cj:
                    term = term // fact[cj] * a[j] ** cj
            acc += term
        out[k] = Fraction(acc * (fact[n] // fact[k]), d**k)
    return out


def exp_partial_bell(n, k=None, u=None) -> Fraction:
    """Partial exponential Bell polynomial ``B_{n,k}(u_1..u_{n-k+1})``.

    Accepts a :class:`BellArgs` or ``(n, k, u)``.  ``B_{0,0} = 1`` and
    ``B_{0,k} = 0`` for ``k >= 1``.
    """
    if not isinstance(n, BellArgs) and n == 0:
        return Fraction(1) if k == 0 else Fraction(0)
    n, k, u = _coerce(n, k, u, need_k=True)
    if k == 0 or k > n:
        return Fraction(0)
    return _exp_partial_by_k(n, u, [k])[k]


def exp_partial_bell_table(n_max: int, u) -> list[list[Fraction]]:
    """All ``B_{n,k}(u)`` for ``0 <= k <= n <= n_max`` as ``table[n][k]``.

    Uses the exact recurrence
    ``B_{n,k} = sum_i C(n-1, i-1) u_i B_{n-i,k-1}``, which costs
    ``O(n_max^2 J)`` for ``J`` nonzero arguments instead of a sweep over
    all compositions.
    """
    u = as_fractions(u)
    u = u + (Fraction(0),) * max(0, n_max - len(u))
    support = _support(u, n_max)
    table = [[Fraction(0)] * (n_max + 1) for _ in range(n_max + 1)]
    table[0][0] = Fraction(1)
    for n in range(1, n_max + 1):
        row = table[n]
        for i in support:
            if i > n:
                break
            w = math.comb(n - 1, i - 1) * u[i - 1]
            prev = table[n - i]
            for k in range(1, n - i + 2):
                if prev[k - 1]:
                    row[k] += w * prev[k - 1]
    return table


def ordinary_partial_bell(n, k=None, u=None) -> Fraction:
    """Ordinary partial Bell polynomial ``sum_c k!/(c_1!..c_n!) prod u_j^{c_j}``.

    It is the coefficient of ``t^n`` in ``(u_1 t + u_2 t^2 + ...)^k``.
    """
    if not isinstance(n, BellArgs) and n == 0:
        return Fraction(1) if k == 0 else Fraction(0)
    n, k, u = _coerce(n, k, u, need_k=True)
    if k == 0 or k > n:
        return Fraction(0)
    parts = _support(u, n)
    fk = math.factorial(k)
    total = Fraction(0)
    for c in CompositionSet(n, k, parts):
        term = Fraction(fk)
        for j in parts:
            cj = c[j - 1]
            if cj:
                term *= u[j - 1] ** cj / math.factorial(cj)
        total += term
    return total


def _complete_enumeration(n, u) -> Fraction:
    by_k = _exp_partial_by_k(n, u, range(1, n + 1))
    return sum(by_k.values(), Fraction(0))


def _bareiss_det(m: list[list[int]]) -> int:
    """Determinant of an integer matrix by fraction-free elimination with row pivoting."""
    m = [row[:] for row in m]
    size = len(m)
    sign = 1
    prev = 1
    for i in range(size - 1):
        if m[i][i] == 0:
            swap = next((r for r in range(i + 1, size) if m[r][i] != 0), None)
            if swap is None:
                return 0
            m[i], m[swap] = m[swap], m[i]
            sign = -sign
        piv = m[i][i]
        for r in range(i + 1, size):
            mri = m[r][i]
            row_r, row_i = m[r], m[i]
            for c in range(i + 1, size):
                row_r[c] = (row_r[c] * piv - mri * row_i[c]) // prev
            row_r[i] = 0
        prev = piv
    return sign * m[-1][-1]


def bell_matrix(n: int, u) -> list[list[Fraction]]:
    """The ``n x n`` matrix whose determinant is ``B_n(u)``.

    Row ``i`` holds ``C(n-1-i, j-i) u_{j-i+1}`` for ``j >= i``, the
    subdiagonal is ``-1`` and everything below it is zero.
    """
    u = as_fractions(u)
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            m[i][j] = math.comb(n - 1 - i, j - i) * u[j - i]
        if i + 1 < n:
            m[i + 1][i] = Fraction(-1)
    return m


def _complete_determinant(n, u) -> Fraction:
    # B_n(L u_1, L^2 u_2, ...) = L^n B_n(u); with L the common denominator
    # every scaled argument L^j u_j is an integer.
    scale = 1
    for x in u[:n]:
        scale = math.lcm(scale, x.denominator)
    scaled = [u[j - 1] * scale**j for j in range(1, n + 1)]
    ints = [[int(x) for x in row] for row in bell_matrix(n, scaled)]
    return Fraction(_bareiss_det(ints), scale**n)


def poisson_weight_pmf(lams: Sequence[float], n: int, track_count: bool = False) -> np.ndarray:
    """Masses of ``W = sum_j j X_j`` (``X_j ~ Poi(lams[j-1])``) on ``0..n``.

    With ``track_count`` the joint masses ``P{S = s, W = w}`` of
    ``S = sum_j X_j`` are returned as an ``(n+1, n+1)`` array indexed
    ``[s, w]``.  Plain convolution of Poisson masses; nothing is sampled.
    """
    lams = [float(x) for x in lams]
    if any(x < 0 for x in lams):
        raise ValueError("Poisson rates must be nonnegative")
    if track_count:
        dp = np.zeros((n + 1, n + 1))
        dp[0, 0] = 1.0
    else:
        dp = np.zeros(n + 1)
        dp[0] = 1.0
    for j, lam in enumerate(lams, start=1):
        if j > n and lam == 0:
            continue
        cmax = n // j
        c = np.arange(cmax + 1)
        if lam == 0:
            continue  # degenerate at 0: convolution is the identity
        logp = -lam + c * math.log(lam) - np.array([math.lgamma(x + 1.0) for x in c])
        p = np.exp(logp)
        new = np.zeros_like(dp)
        for cj in range(cmax + 1):
            shift = j * cj
            if track_count:
                new[cj:, shift:] += p[cj] * dp[: n + 1 - cj, : n + 1 - shift]
            else:
                new[shift:] += p[cj] * dp[: n + 1 - shift]
        dp = new
    return dp


def _rates_from_u(u, n) -> list[float]:
    lams = []
    for j in range(1, n + 1):
        x = u[j - 1]
        if x < 0:
            raise ValueError("the probabilistic method needs nonnegative arguments u_j = j! lambda_j")
        lams.append(float(Fraction(x) / math.factorial(j)))
    return lams


def _complete_probabilistic(n, u) -> float:
    lams = _rates_from_u(u, n)
    w = poisson_weight_pmf(lams, n)
    p_s0 = math.exp(-math.fsum(lams))
    return math.factorial(n) * float(w[n]) / p_s0


def complete_bell(n: int, u=(), method: str = "enumeration"):
    """Complete exponential Bell polynomial ``B_n(u_1..u_n)`` with ``B_0 = 1``.

    ``method`` is ``"enumeration"`` or ``"determinant"`` (exact
    :class:`~fractions.Fraction`) or ``"probabilistic"`` (float; needs
    ``u_j >= 0``).
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    n = int(n)
    if n < 0:
        raise ValueError("n must be >= 0")
    u = as_fractions(u)
    if method == "probabilistic" and any(x < 0 for x in u[:n]):
        raise ValueError("the probabilistic method needs nonnegative arguments u_j = j! lambda_j")
    if n == 0:
        return 1.0 if method == "probabilistic" else Fraction(1)
    if len(u) < n:
        raise ValueError(f"need at least n={n} arguments, got {len(u)}")
    if method == "enumeration":
        return _complete_enumeration(n, u)
    if method == "determinant":
        return _complete_determinant(n, u)
    return _complete_probabilistic(n, u)


def bell_partial_probabilistic(n: int, k: int, lambda_seq: Sequence[float]) -> float:
    """``B_{n,k}(1! lambda_1, .., n! lambda_n) = n! P{S_n = k, W_n = n} / P{S_n = 0}``."""
    n, k = int(n), int(k)
    if n < 0 or k < 0:
        raise ValueError("n and k must be >= 0")
    lams = [float(x) for x in lambda_seq][:n]
    if any(x < 0 for x in lams):
        raise ValueError("rates must be nonnegative")
    if n == 0:
        return 1.0 if k == 0 else 0.0
    if k > n:
        return 0.0
    lams += [0.0] * (n - len(lams))
    joint = poisson_weight_pmf(lams, n, track_count=True)
    p_s0 = math.exp(-math.fsum(lams))
    return math.factorial(n) * float(joint[k, n]) / p_s0
