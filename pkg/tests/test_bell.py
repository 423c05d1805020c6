from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from fraccpp import bell


def brute_partial(n, k, u):
    """Set-partition definition: sum over partitions of {1..n} into k blocks of prod u_{|block|}."""
    total = Fraction(0)
    # assign each element a block label, canonical (restricted growth strings)
    def rgs(i, labels, m):
        nonlocal total
        if i == n:
            if m == k:
                sizes = [labels.count(b) for b in range(m)]
                prod = Fraction(1)
                for s in sizes:
                    prod *= u[s - 1]
                total += prod
            return
        for b in range(min(m + 1, k)):
            rgs(i + 1, labels + [b], max(m, b + 1))

    rgs(0, [], 0)
    return total


# Bell numbers B_n(1, 1, ...) and Stirling numbers of the second kind: classical tables
BELL_NUMBERS = [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975]
STIRLING2_6 = [0, 1, 31, 90, 65, 15, 1]


@pytest.mark.parametrize("method", ["enumeration", "determinant"])
def test_bell_numbers(method):
    for n, b in enumerate(BELL_NUMBERS):
        assert bell.complete_bell(n, [1] * max(n, 1), method=method) == b


def test_stirling_numbers():
    assert [bell.exp_partial_bell(6, k, [1] * 6) for k in range(7)] == STIRLING2_6


@pytest.mark.parametrize("n,k", [(4, 2), (5, 3), (6, 2), (6, 4)])
def test_partial_bell_matches_set_partitions(n, k):
    u = [Fraction(j + 2, j + 1) for j in range(n)]
    assert bell.exp_partial_bell(n, k, u) == brute_partial(n, k, u)


def test_partial_bell_table_matches_single_values():
    u = [Fraction(1, 3), 2, Fraction(5, 7), 0, 1, 3, 0, 2]
    table = bell.exp_partial_bell_table(8, u)
    for n in range(1, 9):
        for k in range(1, n + 1):
            assert table[n][k] == bell.exp_partial_bell(n, k, u)


def test_complete_is_sum_of_partials():
    u = [Fraction(3, 2), Fraction(-1, 4), 2, 5, Fraction(1, 9), 1, 1]
    for n in range(1, 8):
        assert bell.complete_bell(n, u) == sum(bell.exp_partial_bell(n, k, u) for k in range(1, n + 1))


def test_pure_power_and_degenerate_cases():
    for n in range(1, 12):
        for u1 in (Fraction(3, 7), 2, Fraction(-5, 2)):
            u = [u1] + [0] * (n - 1)
            assert bell.complete_bell(n, u, method="enumeration") == Fraction(u1) ** n
            assert bell.complete_bell(n, u, method="determinant") == Fraction(u1) ** n
    assert bell.complete_bell(0) == 1
    assert bell.exp_partial_bell(0, 0) == 1
    assert bell.exp_partial_bell(0, 2) == 0


def test_ordinary_partial_bell_is_power_coefficient():
    u = [Fraction(1, 2), 3, Fraction(2, 3), 1]
    for k in range(1, 4):
        # coefficient of t^n in (sum u_j t^j)^k by explicit expansion
        coeffs = {0: Fraction(1)}
        for _ in range(k):
            nxt = {}
            for p, c in coeffs.items():
                for j, x in enumerate(u, start=1):
                    nxt[p + j] = nxt.get(p + j, 0) + c * x
            coeffs = nxt
        for n in range(k, 5):
            assert bell.ordinary_partial_bell(n, k, u) == coeffs.get(n, 0)


def test_composition_set_constraints():
    for n, k in [(7, 3), (6, None), (5, 5)]:
        cs = list(bell.CompositionSet(n, k))
        assert len(cs) == len(set(cs))
        for c in cs:
            assert sum(j * x for j, x in enumerate(c, start=1)) == n
            if k is not None:
                assert sum(c) == k
    # integer partitions of 7
    assert len(list(bell.CompositionSet(7))) == 15


def test_composition_set_parts_restriction():
    cs = list(bell.CompositionSet(6, None, parts=[2, 3]))
    assert sorted(cs) == sorted([(0, 3, 0, 0, 0, 0), (0, 0, 2, 0, 0, 0)])


def test_determinant_matrix_shape():
    m = bell.bell_matrix(3, [1, 2, 3])
    assert m[1][0] == -1 and m[2][0] == 0
    # row 0: C(2, j) u_{j+1}
    assert m[0] == [1, 4, 3]
    assert m[1] == [-1, 1, 2]
    assert bell.complete_bell(3, [1, 2, 3], method="determinant") == 1 + 3 * 2 + 3


def test_bell_args_validation():
    with pytest.raises(ValueError):
        bell.BellArgs((1, 2), n=3)
    with pytest.raises(ValueError):
        bell.BellArgs((1, 2, 3), n=3, k=4)
    with pytest.raises(ValueError):
        bell.BellArgs((1,), n=0)
    with pytest.raises(ValueError):
        bell.complete_bell(3, [1, 2, 3], method="nope")
    with pytest.raises(ValueError):
        bell.complete_bell(2, [1, -1], method="probabilistic")
    with pytest.raises(ValueError):
        bell.as_fractions([float("nan")])


def test_as_fractions_inputs():
    assert bell.as_fractions(["1/3", 2, 0.5, Fraction(2, 7)]) == (
        Fraction(1, 3), Fraction(2), Fraction(1, 2), Fraction(2, 7))


def test_probabilistic_partial():
    lam = [0.4, 0.3, 0.2, 0.1, 0.05]
    u = [math.factorial(j) * Fraction(x) for j, x in enumerate(lam, start=1)]
    for n in range(1, 6):
        for k in range(1, n + 1):
            exact = float(bell.exp_partial_bell(n, k, u))
            assert bell.bell_partial_probabilistic(n, k, lam) == pytest.approx(exact, rel=1e-10)


def test_poisson_weight_pmf_against_enumeration():
    from scipy import stats
    lams = [0.7, 0.2, 0.5]
    n = 6
    ref = [0.0] * (n + 1)
    for x in itertools.product(range(n + 1), repeat=3):
        w = x[0] + 2 * x[1] + 3 * x[2]
        if w <= n:
            ref[w] += math.prod(stats.poisson(l).pmf(xi) for l, xi in zip(lams, x))
    got = bell.poisson_weight_pmf(lams, n)
    assert max(abs(a - b) for a, b in zip(got, ref)) < 1e-15


@given(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=7), min_size=6, max_size=6),
       st.integers(1, 6))
def test_enumeration_equals_determinant(u, n):
    assert bell.complete_bell(n, u, "enumeration") == bell.complete_bell(n, u, "determinant")


@given(st.lists(st.fractions(min_value=-2, max_value=2, max_denominator=5), min_size=5, max_size=5),
       st.fractions(min_value=-3, max_value=3, max_denominator=4), st.integers(1, 5), st.integers(1, 5))
def test_partial_bell_homogeneity(u, a, n, k):
    # B_{n,k}(a u_1, a^2 u_2, ...) = a^n B_{n,k}(u)  and  B_{n,k}(a u) = a^k B_{n,k}(u)
    if k > n:
        return
    scaled = [a ** (j + 1) * x for j, x in enumerate(u)]
    assert bell.exp_partial_bell(n, k, scaled) == a**n * bell.exp_partial_bell(n, k, u)
    assert bell.exp_partial_bell(n, k, [a * x for x in u]) == a**k * bell.exp_partial_bell(n, k, u)


def test_binomial_type_recurrence():
    # B_{n+1}(u) = sum_i C(n, i) u_{i+1} B_{n-i}(u)
    rnd = random.Random(4)
    u = [Fraction(rnd.randint(-5, 5), rnd.randint(1, 4)) for _ in range(9)]
    for n in range(8):
        rhs = sum(math.comb(n, i) * u[i] * bell.complete_bell(n - i, u) for i in range(n + 1))
        assert bell.complete_bell(n + 1, u) == rhs
