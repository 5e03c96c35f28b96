"""Exact combinatorial primitives: factorials, block multinomials, Catalan
numbers, degree profiles and rooted plane tree counts by profile.

All counts are Python ints; intermediate rational weights use
:class:`fractions.Fraction`.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Mapping, Tuple

__all__ = [
    "factorial",
    "multinomial",
    "block_multinomial",
    "catalan",
    "DegreeProfile",
    "iterate_profiles",
    "partitions",
    "tree_count",
]

_FACTORIALS: List[int] = [1]
_FACTORIAL_LOCK = threading.Lock()


def factorial(n: int) -> int:
    """Return ``n!`` from a memo table that grows on demand."""
    if n < 0:
        raise ValueError(f"factorial of negative number {n}")
    table = _FACTORIALS
    if n < len(table):
        return table[n]
    with _FACTORIAL_LOCK:
        while len(table) <= n:
            table.append(table[-1] * len(table))
        return table[n]


def multinomial(parts) -> int:
    """Multinomial coefficient ``(sum parts)! / prod(p!)``."""
    total = 0
    denom = 1
    for p in parts:
        if p < 0:
            raise ValueError(f"negative multinomial part {p}")
        total += p
        denom *= factorial(p)
    value, rem = divmod(factorial(total), denom)
    assert rem == 0
    return value


def block_multinomial(i: int, k: int) -> int:
    """``(i*k)! / (k!)**i``: the multinomial with ``i`` equal blocks of size ``k``."""
    if i < 0 or k < 1:
        raise ValueError(f"block_multinomial needs i >= 0, k >= 1 (got i={i}, k={k})")
    value, rem = divmod(factorial(i * k), factorial(k) ** i)
    assert rem == 0
    return value


def catalan(n: int) -> int:
    if n < 0:
        raise ValueError(f"catalan index must be >= 0, got {n}")
    return math.comb(2 * n, n) // (n + 1)


@dataclass(frozen=True)
class DegreeProfile:
    """One element of T_n(l).

    ``counts`` maps an outdegree ``i >= 1`` to the number of non-root vertices
    with ``i`` children; only nonzero entries are stored. The number of
    non-root leaves ``n0`` is derived.
    """

    n: int
    root_degree: int
    counts: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {i: c for i, c in sorted(dict(self.counts).items()) if c}
        object.__setattr__(self, "counts", clean)
        if not 1 <= self.root_degree <= self.n:
            raise ValueError(f"root degree {self.root_degree} outside 1..{self.n}")
        if any(i < 1 or c < 0 for i, c in clean.items()):
            raise ValueError(f"invalid outdegree counts {clean}")
        if sum(clean.values()) > self.n:
            raise ValueError("more internal vertices than non-root vertices")
        if sum(i * c for i, c in clean.items()) != self.n - self.root_degree:
            raise ValueError(
                f"children of non-root vertices must total n - l = {self.n - self.root_degree}"
            )

    @classmethod
    def _trusted(cls, n: int, root_degree: int, counts: Dict[int, int]) -> "DegreeProfile":
        # skips validation; counts must already be sparse, positive and key-sorted
        obj = object.__new__(cls)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "root_degree", root_degree)
        object.__setattr__(obj, "counts", counts)
        return obj

    def __hash__(self):
        return hash((self.n, self.root_degree, tuple(sorted(self.counts.items()))))

    @property
    def n0(self) -> int:
        return self.n - sum(self.counts.values())

    def multiplicity(self, i: int) -> int:
        """Number of non-root vertices with exactly ``i`` children."""
        if i == 0:
            return self.n0
        return self.counts.get(i, 0)

    def dense(self) -> Tuple[int, ...]:
        """The tuple (n_0, n_1, ..., n_{n-1})."""
        return tuple(self.multiplicity(i) for i in range(self.n))


def partitions(total: int) -> Iterator[Tuple[int, ...]]:
    """Partitions of ``total`` as non-increasing tuples, reverse-lexicographic.

    ``partitions(3)`` yields ``(3,), (2, 1), (1, 1, 1)``. Iterative (ZS1).
    """
    if total < 0:
        raise ValueError("cannot partition a negative number")
    if total == 0:
        yield ()
        return
    x = [1] * (total + 1)
    x[1] = total
    m = h = 1
    yield (total,)
    while x[1] != 1:
        if x[h] == 2:
            m += 1
            x[h] = 1
            h -= 1
        else:
            r = x[h] - 1
            t = m - h + 1
            x[h] = r
            while t >= r:
                h += 1
                x[h] = r
                t -= r
            if t == 0:
                m = h
            else:
                m = h + 1
                if t > 1:
                    h += 1
                    x[h] = t
        yield tuple(x[1 : m + 1])


def _profile_from_parts(n: int, ell: int, parts: Tuple[int, ...]) -> DegreeProfile:
    counts: Dict[int, int] = {}
    for p in reversed(parts):
        counts[p] = counts.get(p, 0) + 1
    return DegreeProfile._trusted(n, ell, counts)


def iterate_profiles(n: int, ell: int) -> Iterator[DegreeProfile]:
    """Yield every profile in T_n(ell) exactly once.

    Each non-root internal vertex with ``i`` children is one part ``i`` of a
    partition of ``n - ell``; order follows :func:`partitions`.
    """
    if not 1 <= ell <= n:
        raise ValueError(f"need 1 <= ell <= n, got ell={ell}, n={n}")
    for parts in partitions(n - ell):
        yield _profile_from_parts(n, ell, parts)


def tree_count(profile: DegreeProfile) -> int:
    """Number of rooted plane trees with this degree profile: (l/n) * multinomial."""
    parts = [profile.n0, *profile.counts.values()]
    value, rem = divmod(profile.root_degree * multinomial(parts), profile.n)
    if rem:
        raise ArithmeticError(
            f"non-integral tree count {Fraction(profile.root_degree * multinomial(parts), profile.n)} for {profile}"
        )
    return value
