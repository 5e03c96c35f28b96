import math
from fractions import Fraction

import pytest

from hypercat.asymptotics import (
    StarParams,
    asymptotic_log_value,
    gunnells_log_value,
    log_natural,
    ratio_report,
    rerooting_check,
    rerooting_inputs,
    rerooting_sides,
    star_count_exact,
    star_ratio,
    star_sum_k2_check,
)
from hypercat.closed_form import tours_on_profile
from hypercat.combinatorics import DegreeProfile, catalan, tree_count
from hypercat.oracle import star_count_by_enumeration
from hypercat.series import lagrange_extract


@pytest.mark.parametrize("x", [1, 2, 10**18, 2**64 + 1, 3**500, math.factorial(1000)])
def test_log_natural_relative_error(x):
    want = math.log(x)  # CPython handles big ints exactly enough here
    assert abs(log_natural(x) - want) <= 1e-12 * max(1.0, abs(want))


def test_log_natural_rejects_nonpositive():
    with pytest.raises(ValueError):
        log_natural(0)


def test_asymptotic_log_small_cases():
    assert asymptotic_log_value(1, 1) == pytest.approx(math.log(4 / math.sqrt(math.pi)), abs=1e-14)
    want = math.log(2 * math.sqrt(math.e**3 / (10 * math.pi)) * 2**10 * math.factorial(10))
    assert asymptotic_log_value(10, 2) == pytest.approx(want, rel=1e-14)
    want = math.log(2 * math.sqrt(4 / (2 * math.pi * 7) ** 3) * (4**4 / 24) ** 7 * math.factorial(7) ** 3)
    assert asymptotic_log_value(7, 4) == pytest.approx(want, rel=1e-14)


@pytest.mark.parametrize("k", [3, 5, 7])
@pytest.mark.parametrize("n", [1, 10, 100])
def test_gunnells_form_equals_growth_formula(n, k):
    assert abs(gunnells_log_value(n, k) - asymptotic_log_value(n, k)) < 1e-10


@pytest.mark.parametrize("k", [2, 4, 1])
def test_gunnells_rejects_even_or_small(k):
    with pytest.raises(ValueError):
        gunnells_log_value(10, k)


@pytest.mark.parametrize("n, m, k, want", [(3, 0, 2, 30), (4, 1, 2, 360), (4, 0, 2, 210)])
def test_star_count_examples(n, m, k, want):
    assert star_count_exact(StarParams(n, m, k)) == want


@pytest.mark.parametrize("n, m, k", [(3, 1, 2), (2, 0, 2), (5, -1, 2), (5, 0, 1)])
def test_star_domain_enforced(n, m, k):
    with pytest.raises(ValueError):
        StarParams(n, m, k)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_star_count_matches_enumeration(k):
    for n in range(3, 8):
        for m in range(0, n - 2):
            assert star_count_exact(StarParams(n, m, k)) == star_count_by_enumeration(n, m, k)


def test_decomposition_double_counts_below_domain():
    # n - m = 2: the hub has the same degree as the path vertices
    assert star_count_by_enumeration(3, 1, 2) == 27


@pytest.mark.parametrize("k", range(2, 5))
def test_star_m0_is_restricted_closed_form(k):
    for n in range(3, 11):
        profiles = [DegreeProfile(n, n, {}), DegreeProfile(n, 1, {n - 1: 1})]
        assert star_count_exact(StarParams(n, 0, k)) == sum(tree_count(p) * tours_on_profile(p, k) for p in profiles)


def test_star_m0_formula():
    for n in range(3, 12):
        for k in (2, 3, 5):
            want = Fraction(2 * math.factorial(k * n), math.factorial(k) ** n * math.factorial(n))
            assert star_count_exact(StarParams(n, 0, k)) == want


def test_star_m1_ratio_k2_tends_to_three_halves():
    gaps = [abs(float(star_ratio(n, 1, 2)) - 1.5) for n in (20, 50, 100, 1000)]
    assert gaps == sorted(gaps, reverse=True)
    assert gaps[-1] < 1e-3


def test_star_m1_ratio_k3_scaled():
    limit = math.factorial(6) / (2 * 27 * 6)
    gaps = [abs(float(star_ratio(n, 1, 3)) * n - limit) for n in (20, 50, 100, 1000)]
    assert gaps == sorted(gaps, reverse=True)
    assert gaps[-1] < 0.01


def test_star_sum_k2_trend():
    ratios = []
    for n in (20, 50, 100):
        total, limit = star_sum_k2_check(n)
        assert limit == pytest.approx(math.exp(1.5))
        ratios.append(total / limit)
    gaps = [abs(r - 1) for r in ratios]
    assert gaps == sorted(gaps, reverse=True)


def test_ratio_report_k1_below_one_and_rising():
    rep = ratio_report(1, [100, 10])
    assert [r.n for r in rep.rows] == [10, 100]
    r10, r100 = (r.ratio for r in rep.rows)
    direct = catalan(10) / (4**10 / math.sqrt(math.pi * 10**3))
    assert r10 == pytest.approx(direct, rel=1e-12)
    assert r10 < r100 < 1


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_ratio_report_converges(k):
    rep = ratio_report(k, [25, 50, 100])
    assert rep.strictly_converging()
    assert len(rep.deltas()) == 2


def test_ratio_report_custom_exact_source():
    rep = ratio_report(2, [5], exact=lambda n, k: 1)
    assert rep.rows[0].log_exact == 0.0


def test_star_dominance_k3():
    rel = []
    for n in (6, 10, 14, 18):
        s = star_count_exact(StarParams(n, 0, 3))
        rel.append(Fraction(lagrange_extract(n, 3) - s, s))
    assert all(b < a for a, b in zip(rel, rel[1:]))


def test_rerooting_example():
    lhs, rhs = rerooting_sides(4, 2, {3: 1})
    assert (lhs, rhs) == (4, 6)
    assert rerooting_check(4, 2, {3: 1})


def test_rerooting_ratio_identity():
    # sum_l l*n_(l-1) / (n-m+1) = (n+m-2)/(n-m+1): the two sides differ by that over m
    for n, m, counts in rerooting_inputs(10):
        lhs, rhs = rerooting_sides(n, m, counts)
        assert lhs / rhs == Fraction(n + m - 2, (n - m + 1) * m)


def test_rerooting_exhaustive():
    inputs = list(rerooting_inputs(12))
    assert len(inputs) > 100
    assert all(rerooting_check(n, m, c) for n, m, c in inputs)


@pytest.mark.parametrize(
    "n, m, counts",
    [(3, 1, {}), (4, 2, {2: 1}), (4, 4, {1: 3}), (5, 2, {1: 1, 3: 1})],
)
def test_rerooting_rejects_invalid(n, m, counts):
    with pytest.raises(ValueError):
        rerooting_check(n, m, counts)
