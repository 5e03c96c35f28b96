"""Cross-route and oracle checks run by ``hypercat verify``."""
from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Tuple

from . import asymptotics, closed_form, combinatorics, oracle, series

__all__ = ["CheckResult", "CheckFailure", "quick_checks", "full_checks", "run_checks"]


class CheckFailure(AssertionError):
    pass


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"[{status}] {self.name} ({self.seconds:.2f}s): {self.detail}"


def _expect(cond: bool, message: str):
    if not cond:
        raise CheckFailure(message)


def triple_agreement(max_kn: int, max_k: int = 8) -> str:
    cases = 0
    for k in range(1, max_k + 1):
        for n in range(0, max_kn // k + 1):
            walks = oracle.brute_force_walks(n, k, max_kn=max_kn)
            trees = oracle.oracle_by_trees(n, k)
            closed = closed_form.hypergraph_catalan_closed(n, k, workers=1)
            ser = series.extract_counts(k, n)[n]
            _expect(
                walks == trees == closed == ser,
                f"n={n}, k={k}: walks={walks} trees={trees} closed={closed} series={ser}",
            )
            cases += 1
    return f"{cases} (n, k) pairs with kn <= {max_kn}"


def catalan_specialisation(n_max: int, closed_up_to: int = 0) -> str:
    values = series.extract_counts(1, n_max)
    for n, v in enumerate(values):
        _expect(v == combinatorics.catalan(n), f"series c_{n}^(1) = {v} != catalan({n})")
    for n in range(closed_up_to + 1):
        v = closed_form.hypergraph_catalan_closed(n, 1, workers=1)
        _expect(v == combinatorics.catalan(n), f"closed c_{n}^(1) = {v} != catalan({n})")
    return f"n <= {n_max}"


def functional_equation(order: int, ks=(1, 2, 3)) -> str:
    for k in ks:
        rep = series.verify_functional_equation(k, order)
        _expect(rep.ok, f"k={k}, order={order}: first mismatch (x^a, z^b, lhs, rhs) = {rep.first_mismatch}")
    return f"k in {tuple(ks)}, order {order}"


def rerooting(n_max: int) -> str:
    count = 0
    for n, m, counts in asymptotics.rerooting_inputs(n_max):
        _expect(asymptotics.rerooting_check(n, m, counts), f"fails at n={n}, m={m}, counts={counts}")
        count += 1
    return f"{count} inputs with n <= {n_max}"


def known_values() -> str:
    table = {(2, 2): 6, (3, 2): 57, (2, 3): 20}
    table.update({(1, k): 1 for k in range(1, 7)})
    for (n, k), want in table.items():
        got = oracle.brute_force_walks(n, k)
        _expect(got == want, f"c_{n}^({k}) brute force = {got}, expected {want}")
    return f"{len(table)} values"


def star_counts(n_max: int, ks=(2, 3)) -> str:
    count = 0
    for k in ks:
        for n in range(3, n_max + 1):
            for m in range(0, n - 2):
                exact = asymptotics.star_count_exact(asymptotics.StarParams(n, m, k))
                brute = oracle.star_count_by_enumeration(n, m, k)
                _expect(exact == brute, f"s_{k}({n},{m}): formula {exact} != enumeration {brute}")
                count += 1
    return f"{count} (n, m, k) cases"


def gunnells_identity() -> str:
    worst = 0.0
    for k in (3, 5, 7):
        for n in (1, 10, 100):
            diff = abs(asymptotics.gunnells_log_value(n, k) - asymptotics.asymptotic_log_value(n, k))
            _expect(diff < 1e-10, f"k={k}, n={n}: log difference {diff}")
            worst = max(worst, diff)
    return f"max |difference| {worst:.2e}"


def convergence(ks=(1, 2, 3, 4), ns=(50, 100, 200, 400)) -> str:
    out = []
    for k in ks:
        rep = asymptotics.ratio_report(k, ns)
        deltas = [r.abs_delta for r in rep.rows]
        _expect(rep.strictly_converging(), f"k={k}: |ratio-1| not strictly decreasing: {deltas}")
        last = rep.rows[-1].ratio
        _expect(0.5 < last < 2.0, f"k={k}: ratio at n={rep.rows[-1].n} is {last}")
        out.append(f"k={k}:{last:.6f}")
    return ", ".join(out)


def star_dominance(ns=(6, 10, 14, 18), k: int = 3) -> str:
    rel = []
    for n in ns:
        s = asymptotics.star_count_exact(asymptotics.StarParams(n, 0, k))
        rel.append(Fraction(series.lagrange_extract(n, k) - s, s))
    _expect(all(b < a for a, b in zip(rel, rel[1:])), f"not decreasing: {[float(r) for r in rel]}")
    return ", ".join(f"{float(r):.4f}" for r in rel)


def bijection(max_kn: int) -> str:
    count = 0
    for k in range(1, max_kn + 1):
        for n in range(0, max_kn // k + 1):
            seen = set()
            for w in oracle.enumerate_k_tours(n, k, max_kn=max_kn):
                tree, seqs = oracle.decompose_walk(w, k)
                _expect(oracle.reconstruct_walk(tree, seqs) == w, f"round trip fails for {w}")
                _expect((tree, seqs) not in seen, f"decomposition not injective at {w}")
                seen.add((tree, seqs))
                count += 1
    return f"{count} walks with kn <= {max_kn}"


Check = Tuple[str, Callable[[], str]]


def quick_checks() -> List[Check]:
    return [
        ("triple agreement", lambda: triple_agreement(6)),
        ("catalan specialisation", lambda: catalan_specialisation(50, closed_up_to=12)),
        ("functional equation", lambda: functional_equation(5)),
        ("rerooting lemma", lambda: rerooting(8)),
    ]


def full_checks() -> List[Check]:
    return [
        ("triple agreement", lambda: triple_agreement(8, max_k=4)),
        ("catalan specialisation", lambda: catalan_specialisation(300, closed_up_to=20)),
        ("known small values", known_values),
        ("functional equation", lambda: functional_equation(6)),
        ("star-like counts", lambda: star_counts(8)),
        ("odd-k conjectured form", gunnells_identity),
        ("asymptotic convergence", convergence),
        ("star dominance", star_dominance),
        ("rerooting lemma", lambda: rerooting(12)),
        ("bijection round trip", lambda: bijection(6)),
    ]


def run_checks(level: str = "quick") -> List[CheckResult]:
    checks = {"quick": quick_checks, "full": full_checks}[level]()
    results = []
    for name, fn in checks:
        start = time.perf_counter()
        try:
            detail, ok = fn(), True
        except CheckFailure as exc:
            detail, ok = str(exc), False
        results.append(CheckResult(name, ok, detail, time.perf_counter() - start))
    return results
