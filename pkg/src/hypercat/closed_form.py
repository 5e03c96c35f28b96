"""Exact summation formula for the hypergraph Catalan numbers.

c_n^(k) is a sum over root degrees ``l`` and degree profiles in T_n(l) of
(number of rooted plane trees with that profile) x (k-tours on one such tree).
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from .combinatorics import (
    DegreeProfile,
    block_multinomial,
    factorial,
    iterate_profiles,
    tree_count,
)

__all__ = [
    "departure_count",
    "tours_on_profile",
    "root_degree_slice",
    "hypergraph_catalan_closed",
    "default_workers",
]


def departure_count(d: int, k: int) -> int:
    """Ways a k-tour can order its ``k*d`` departures from a vertex of degree ``d``.

    Equals ``(kd)! / ((k!)**d * d!)``: the number of set partitions of ``kd``
    ordered slots into ``d`` unlabelled blocks of size ``k``. The plane order of
    the edges fixes which block goes to which neighbor.
    """
    if d < 1 or k < 1:
        raise ValueError(f"departure_count needs d >= 1, k >= 1 (got d={d}, k={k})")
    value, rem = divmod(block_multinomial(d, k), factorial(d))
    if rem:
        raise ArithmeticError(f"departure count ({d}, {k}) is not integral")
    return value


def tours_on_profile(profile: DegreeProfile, k: int, table: Sequence[int] | None = None) -> int:
    """k-tours on any single rooted plane tree with the given degree profile.

    ``table[d]``, when given, must hold ``departure_count(d, k)``.
    """
    dep = table.__getitem__ if table is not None else (lambda d: departure_count(d, k))
    total = dep(profile.root_degree)
    for i, mult in profile.counts.items():
        total *= dep(i + 1) ** mult
    return total


def root_degree_slice(n: int, ell: int, k: int) -> int:
    """The ``l``-th slice of the sum: k-tours whose root has degree ``ell``."""
    table = [1] + [departure_count(d, k) for d in range(1, n + 1)]
    return sum(tree_count(p) * tours_on_profile(p, k, table) for p in iterate_profiles(n, ell))


def default_workers() -> int:
    """Worker cap from ``HYPERCAT_THREADS`` (default 1, i.e. serial)."""
    raw = os.environ.get("HYPERCAT_THREADS", "").strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValueError(f"HYPERCAT_THREADS must be a positive integer, got {raw!r}")


def _slice_args(args):
    return root_degree_slice(*args)


def hypergraph_catalan_closed(n: int, k: int, workers: int | None = None) -> int:
    """Number of k-tours on trees with ``n + 1`` vertices via the profile sum.

    ``c_0^(k) = 1`` (the empty tour on a single vertex). With ``workers > 1`` the
    root-degree slices are summed in a process pool; the result is identical.
    """
    if n < 0 or k < 1:
        raise ValueError(f"need n >= 0 and k >= 1 (got n={n}, k={k})")
    if n == 0:
        return 1
    if workers is None:
        workers = default_workers()
    jobs = [(n, ell, k) for ell in range(1, n + 1)]
    if workers <= 1 or n < 8:
        return sum(map(_slice_args, jobs))
    with ProcessPoolExecutor(max_workers=min(workers, n)) as pool:
        return sum(pool.map(_slice_args, jobs))
