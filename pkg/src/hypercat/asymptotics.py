"""Growth formulas for c_n^(k), exact star-like tour counts and related checks.

Logarithms of huge exact integers are taken from their bit length and leading
64 bits so nothing ever overflows a float.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Tuple

from .closed_form import departure_count
from .combinatorics import factorial, partitions
from .series import lagrange_extract

__all__ = [
    "log_natural",
    "asymptotic_log_value",
    "gunnells_log_value",
    "StarParams",
    "star_count_exact",
    "star_ratio",
    "star_sum_k2_check",
    "RatioRow",
    "RatioReport",
    "ratio_report",
    "rerooting_sides",
    "rerooting_check",
    "rerooting_inputs",
]

_LOG2 = math.log(2.0)


def log_natural(x: int) -> float:
    """Natural log of a positive integer of any size."""
    if x <= 0:
        raise ValueError("log_natural needs a positive integer")
    bits = x.bit_length()
    if bits <= 64:
        return math.log(x)
    shift = bits - 64
    return math.log(x >> shift) + shift * _LOG2


def asymptotic_log_value(n: int, k: int) -> float:
    """ln of the leading-order growth formula for c_n^(k)."""
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    ln_n = math.log(n)
    if k == 1:
        return n * math.log(4.0) - 0.5 * (math.log(math.pi) + 3 * ln_n)
    if k == 2:
        return _LOG2 + 0.5 * (3.0 - math.log(math.pi) - ln_n) + n * _LOG2 + math.lgamma(n + 1)
    return (
        _LOG2
        + 0.5 * (math.log(k) - (k - 1) * math.log(2 * math.pi * n))
        + n * (k * math.log(k) - math.lgamma(k + 1))
        + (k - 1) * math.lgamma(n + 1)
    )


def gunnells_log_value(n: int, k: int) -> float:
    """ln of Gunnells' conjectured form for odd ``k >= 3``.

    2 * C(2,2) C(4,2) ... C(k-1,2) / (k^((2k-3)/2) (pi n)^((k-1)/2))
      * (k^k/k!)^(n+1) * (n!)^(k-1)
    """
    if k < 3 or k % 2 == 0:
        raise ValueError("the conjectured form is only used for odd k >= 3")
    if n < 1:
        raise ValueError("n must be >= 1")
    binoms = sum(math.log(math.comb(j, 2)) for j in range(2, k, 2))
    return (
        _LOG2
        + binoms
        - (2 * k - 3) / 2 * math.log(k)
        - (k - 1) / 2 * math.log(math.pi * n)
        + (n + 1) * (k * math.log(k) - math.lgamma(k + 1))
        + (k - 1) * math.lgamma(n + 1)
    )


@dataclass(frozen=True)
class StarParams:
    """A star-like shape: one vertex of degree n-m, m of degree 2, n-m leaves."""

    n: int
    m: int
    k: int

    def __post_init__(self):
        if self.k < 2:
            raise ValueError(f"star-like counts need k >= 2, got {self.k}")
        if self.m < 0:
            raise ValueError(f"m must be >= 0, got {self.m}")
        if self.n - self.m < 3:
            raise ValueError(
                f"(n, m) = ({self.n}, {self.m}) outside the domain n - m >= 3"
            )


def star_count_exact(p: StarParams) -> int:
    """s_k(n, m): k-tours over all rooted star-like trees with parameters (n, m).

    Two terms: the hub is the root or the root is a leaf (first), or the root
    is one of the degree-2 vertices (second, absent for m = 0).
    """
    n, m, k = p.n, p.m, p.k
    hub = departure_count(n - m, k)
    path = departure_count(2, k)
    falling = Fraction(factorial(n - 1))
    value = Fraction(2, factorial(m)) * path**m * falling / factorial(n - m - 1) * hub
    if m >= 1:
        value += Fraction(2, factorial(m - 1)) * path**m * falling / factorial(n - m) * hub
    if value.denominator != 1:
        raise ArithmeticError(f"non-integral star count {value} for {p}")
    return value.numerator


def star_ratio(n: int, m: int, k: int) -> Fraction:
    """s_k(n, m) / s_k(n, 0), exact."""
    return Fraction(star_count_exact(StarParams(n, m, k)), star_count_exact(StarParams(n, 0, k)))


def star_sum_k2_check(n: int) -> Tuple[float, float]:
    """(sum_{m <= n^(1/3)} s_2(n, m) / s_2(n, 0), e^(3/2))."""
    if n < 4:
        raise ValueError("star_sum_k2_check needs n >= 4")
    m_max = _icbrt(n)
    base = star_count_exact(StarParams(n, 0, 2))
    total = sum(star_count_exact(StarParams(n, m, 2)) for m in range(m_max + 1))
    return float(Fraction(total, base)), math.exp(1.5)


def _icbrt(n: int) -> int:
    r = round(n ** (1 / 3))
    while r**3 > n:
        r -= 1
    while (r + 1) ** 3 <= n:
        r += 1
    return r


@dataclass(frozen=True)
class RatioRow:
    n: int
    log_exact: float
    log_asym: float

    @property
    def ratio(self) -> float:
        return math.exp(self.log_exact - self.log_asym)

    @property
    def abs_delta(self) -> float:
        return abs(self.ratio - 1.0)


@dataclass
class RatioReport:
    k: int
    rows: List[RatioRow] = field(default_factory=list)

    def deltas(self) -> List[float]:
        """Change in |ratio - 1| between consecutive rows."""
        d = [r.abs_delta for r in self.rows]
        return [b - a for a, b in zip(d, d[1:])]

    def strictly_converging(self) -> bool:
        return all(x < 0 for x in self.deltas())


def ratio_report(k: int, ns: Iterable[int], exact: Optional[Callable[[int, int], int]] = None) -> RatioReport:
    """Compare exact c_n^(k) with the growth formula at each requested ``n``.

    Exact values come from the Lagrange-inversion series route unless
    ``exact(n, k)`` is supplied.
    """
    if exact is None:
        exact = lagrange_extract
    report = RatioReport(k)
    for n in sorted(set(ns)):
        c = exact(n, k)
        report.rows.append(RatioRow(n, log_natural(c), asymptotic_log_value(n, k)))
    return report


def _check_rerooting_input(n: int, m: int, counts: Mapping[int, int]) -> Dict[int, int]:
    counts = {i: c for i, c in counts.items() if c}
    if not 1 <= m <= n - 1:
        raise ValueError(f"need 1 <= m <= n - 1, got n={n}, m={m}")
    if any(i < 1 or c < 0 for i, c in counts.items()):
        raise ValueError(f"invalid counts {counts}")
    if sum(counts.values()) != m - 1:
        raise ValueError(f"counts must total m - 1 = {m - 1}")
    if sum(i * c for i, c in counts.items()) != n - 1:
        raise ValueError(f"weighted counts must total n - 1 = {n - 1}")
    return counts


def _multinomial_over(top: int, bottoms: Iterable[int]) -> Fraction:
    value = Fraction(factorial(top))
    for b in bottoms:
        value /= factorial(b)
    return value


def rerooting_sides(n: int, m: int, counts: Mapping[int, int]) -> Tuple[Fraction, Fraction]:
    """Both sides of the rerooting inequality, exactly.

    The root-degree-``l`` term removes one vertex of outdegree ``l - 1`` from
    ``counts`` and adds a leaf; terms with no such vertex vanish.
    """
    counts = _check_rerooting_input(n, m, counts)
    rhs = Fraction(m, n) * _multinomial_over(n, [n - m, *counts.values()])
    lhs = Fraction(0)
    for i, c in counts.items():
        ell = i + 1
        bottoms = [n - m + 1] + [c2 - (1 if i2 == i else 0) for i2, c2 in counts.items()]
        lhs += Fraction(ell, n) * _multinomial_over(n, bottoms)
    return lhs, rhs


def rerooting_check(n: int, m: int, counts: Mapping[int, int]) -> bool:
    lhs, rhs = rerooting_sides(n, m, counts)
    return lhs <= rhs


def rerooting_inputs(n_max: int) -> Iterator[Tuple[int, int, Dict[int, int]]]:
    """Every valid (n, m, counts) with n <= n_max."""
    for n in range(2, n_max + 1):
        for parts in partitions(n - 1):
            m = len(parts) + 1
            if m > n - 1:
                continue
            counts: Dict[int, int] = {}
            for p in parts:
                counts[p] = counts.get(p, 0) + 1
            yield n, m, counts
