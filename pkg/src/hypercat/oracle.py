"""Brute-force ground truth for k-tour counts.

Three independent views: exhaustive depth-first enumeration of canonical
k-tours, a per-tree product over all rooted plane trees, and the bijection
between a tour and its per-vertex departure sequences.

Walks are tuples of vertex labels ``(v_1, ..., v_L)`` with an implicit final
step back to ``v_1``. Labels are assigned in discovery order starting at 0.
Trees and departure sequences index vertices by preorder position.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, TextIO, Tuple

from .closed_form import departure_count

__all__ = [
    "DEFAULT_MAX_KN",
    "InvalidWalkError",
    "SearchTooLargeError",
    "PlaneTree",
    "Walk",
    "DepartureSequences",
    "enumerate_plane_trees",
    "tours_on_tree",
    "oracle_by_trees",
    "enumerate_k_tours",
    "brute_force_walks",
    "decompose_walk",
    "reconstruct_walk",
    "enumerate_departure_sequences",
    "dump_walks",
    "is_star_like",
    "star_count_by_enumeration",
]

DEFAULT_MAX_KN = 8

Walk = Tuple[int, ...]
DepartureSequences = Tuple[Tuple[int, ...], ...]


class InvalidWalkError(ValueError):
    """A walk or set of departure sequences violates the k-tour conditions."""


class SearchTooLargeError(RuntimeError):
    """Exhaustive search requested above the configured size guard."""


@dataclass(frozen=True)
class PlaneTree:
    """Rooted plane tree stored as its preorder outdegree sequence."""

    outdegrees: Tuple[int, ...]

    def __post_init__(self):
        seq = tuple(self.outdegrees)
        object.__setattr__(self, "outdegrees", seq)
        if not seq:
            raise ValueError("a plane tree has at least one vertex")
        open_slots = 1
        for pos, d in enumerate(seq):
            if d < 0:
                raise ValueError(f"negative outdegree at position {pos}")
            if open_slots == 0:
                raise ValueError(f"outdegree sequence {seq} ends its tree early")
            open_slots += d - 1
        if open_slots != 0:
            raise ValueError(f"outdegree sequence {seq} does not close a tree")

    @property
    def vertex_count(self) -> int:
        return len(self.outdegrees)

    @cached_property
    def _structure(self):
        children: List[List[int]] = [[] for _ in self.outdegrees]
        parent: List[Optional[int]] = [None] * len(self.outdegrees)
        stack: List[int] = []
        for v, d in enumerate(self.outdegrees):
            if stack:
                p = stack[-1]
                children[p].append(v)
                parent[v] = p
                if len(children[p]) == self.outdegrees[p]:
                    stack.pop()
            if d:
                stack.append(v)
        return tuple(tuple(c) for c in children), tuple(parent)

    @property
    def children(self) -> Tuple[Tuple[int, ...], ...]:
        return self._structure[0]

    @property
    def parent(self) -> Tuple[Optional[int], ...]:
        return self._structure[1]

    def degree(self, v: int) -> int:
        """Graph degree: outdegree, plus one for the parent edge unless ``v`` is the root."""
        return self.outdegrees[v] + (0 if v == 0 else 1)

    def degrees(self) -> Tuple[int, ...]:
        return tuple(self.degree(v) for v in range(self.vertex_count))

    def neighbors(self, v: int) -> Tuple[int, ...]:
        p = self.parent[v]
        return self.children[v] + (() if p is None else (p,))


def enumerate_plane_trees(vertex_count: int) -> Iterator[PlaneTree]:
    """Every rooted plane tree on ``vertex_count`` vertices, once each."""
    if vertex_count < 1:
        raise ValueError("vertex_count must be >= 1")

    def extend(prefix: List[int], open_slots: int, remaining: int):
        # open_slots: subtrees still to be placed; remaining: vertices left
        if remaining == 0:
            if open_slots == 0:
                yield PlaneTree(tuple(prefix))
            return
        # the next vertex fills one slot and opens d new ones
        for d in range(0, remaining):
            slots = open_slots - 1 + d
            if slots == 0 and remaining - 1 > 0:
                continue
            if slots > remaining - 1:
                break
            prefix.append(d)
            yield from extend(prefix, slots, remaining - 1)
            prefix.pop()

    yield from extend([], 1, vertex_count)


def tours_on_tree(tree: PlaneTree, k: int) -> int:
    """Product over vertices of :func:`departure_count` for the vertex degree."""
    if k < 1:
        raise ValueError("k must be >= 1")
    total = 1
    for d in tree.degrees():
        if d:
            total *= departure_count(d, k)
    return total


def oracle_by_trees(n: int, k: int) -> int:
    """c_n^(k) as a sum over all plane trees with ``n + 1`` vertices."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return sum(tours_on_tree(t, k) for t in enumerate_plane_trees(n + 1))


def _check_size(n: int, k: int, max_kn: int):
    if k * n > max_kn:
        raise SearchTooLargeError(
            f"exhaustive walk search for k*n = {k * n} exceeds the bound {max_kn}"
        )


def enumerate_k_tours(n: int, k: int, max_kn: int = DEFAULT_MAX_KN) -> Iterator[Walk]:
    """Depth-first enumeration of canonical k-tours on trees with ``n + 1`` vertices.

    Each directed edge is used exactly ``k`` times, so the walk has length
    ``2kn``. Pruning: a step to a visited non-neighbor would close a cycle and
    is never taken; a vertex leaving towards its parent for the k-th time must
    have exhausted all edges to its children and may not gain new ones.
    """
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    _check_size(n, k, max_kn)
    if n == 0:
        yield (0,)
        return
    length = 2 * k * n
    parent: List[Optional[int]] = [None]
    kids: List[List[int]] = [[]]
    used: Dict[Tuple[int, int], int] = {}
    closed = [False]
    walk = [0]

    def children_done(v: int) -> bool:
        return all(used[(v, c)] == k for c in kids[v])

    def step(v: int, steps: int):
        if steps == length:
            if v == 0 and len(parent) == n + 1:
                yield tuple(walk[:-1])
            return
        # existing children
        for c in kids[v]:
            if used[(v, c)] < k:
                used[(v, c)] += 1
                walk.append(c)
                yield from step(c, steps + 1)
                walk.pop()
                used[(v, c)] -= 1
        # parent
        p = parent[v]
        if p is not None and used[(v, p)] < k:
            last = used[(v, p)] == k - 1
            if not last or children_done(v):
                used[(v, p)] += 1
                if last:
                    closed[v] = True
                walk.append(p)
                yield from step(p, steps + 1)
                walk.pop()
                if last:
                    closed[v] = False
                used[(v, p)] -= 1
        # a new vertex
        if len(parent) < n + 1 and not closed[v]:
            u = len(parent)
            parent.append(v)
            kids.append([])
            kids[v].append(u)
            closed.append(False)
            used[(v, u)] = 1
            used[(u, v)] = 0
            walk.append(u)
            yield from step(u, steps + 1)
            walk.pop()
            del used[(v, u)], used[(u, v)]
            closed.pop()
            kids[v].pop()
            kids.pop()
            parent.pop()

    yield from step(0, 0)


def brute_force_walks(n: int, k: int, max_kn: int = DEFAULT_MAX_KN) -> int:
    """Count of canonical k-tours found by exhaustive search."""
    return sum(1 for _ in enumerate_k_tours(n, k, max_kn))


def _walk_edges(walk: Sequence[int]):
    length = len(walk)
    for i in range(length):
        yield walk[i], walk[(i + 1) % length]


def decompose_walk(walk: Sequence[int], k: int) -> Tuple[PlaneTree, DepartureSequences]:
    """Split a k-tour into its plane tree and per-vertex departure sequences.

    Raises :class:`InvalidWalkError` naming the first violated condition.
    """
    walk = tuple(walk)
    if k < 1:
        raise ValueError("k must be >= 1")
    if not walk or walk[0] != 0:
        raise InvalidWalkError("walk must start at vertex 0")
    if walk == (0,):
        return PlaneTree((0,)), ((),)
    seen = 0
    for v in walk:
        if v > seen:
            raise InvalidWalkError(f"labels not in discovery order: {v} appears before {seen}")
        if v == seen:
            seen += 1
    parent: Dict[int, int] = {}
    kids: Dict[int, List[int]] = {v: [] for v in range(seen)}
    departures: Dict[int, List[int]] = {v: [] for v in range(seen)}
    used: Dict[Tuple[int, int], int] = {}
    discovered = {0}
    for u, v in _walk_edges(walk):
        if u == v:
            raise InvalidWalkError(f"walk stays at vertex {u}")
        if v not in discovered:
            discovered.add(v)
            parent[v] = u
            kids[u].append(v)
        elif parent.get(v) != u and parent.get(u) != v:
            raise InvalidWalkError(f"step {u}->{v} closes a cycle in the induced graph")
        used[(u, v)] = used.get((u, v), 0) + 1
        departures[u].append(v)
    for (u, v), c in sorted(used.items()):
        if c != k:
            raise InvalidWalkError(f"directed edge {u}->{v} used {c} times, expected {k}")
    for v, p in parent.items():
        if (v, p) not in used:
            raise InvalidWalkError(f"edge {p}-{v} never traversed back")

    # preorder relabelling: children in discovery order
    order: List[int] = []
    stack = [0]
    while stack:
        v = stack.pop()
        order.append(v)
        stack.extend(reversed(kids[v]))
    pre = {v: i for i, v in enumerate(order)}
    tree = PlaneTree(tuple(len(kids[v]) for v in order))
    seqs = tuple(tuple(pre[x] for x in departures[v]) for v in order)
    _check_sequences(tree, seqs, k)
    return tree, seqs


def _check_sequences(tree: PlaneTree, seqs: DepartureSequences, k: Optional[int] = None) -> int:
    """Validate departure sequences for ``tree``; returns the common multiplicity k."""
    if len(seqs) != tree.vertex_count:
        raise InvalidWalkError("one departure sequence per vertex is required")
    for v in range(tree.vertex_count):
        s = tuple(seqs[v])
        nbrs = tree.neighbors(v)
        if k is None and nbrs:
            k = len(s) // len(nbrs)
        if k is None:
            continue
        if len(s) != k * len(nbrs):
            raise InvalidWalkError(f"vertex {v}: sequence length {len(s)} != k*deg = {k * len(nbrs)}")
        for u in nbrs:
            if s.count(u) != k:
                raise InvalidWalkError(f"vertex {v}: neighbor {u} occurs {s.count(u)} times, expected {k}")
        if set(s) - set(nbrs):
            raise InvalidWalkError(f"vertex {v}: departs to non-neighbors {sorted(set(s) - set(nbrs))}")
        p = tree.parent[v]
        if p is not None and s[-1] != p:
            raise InvalidWalkError(f"vertex {v}: last departure must go to parent {p}")
        firsts = [u for i, u in enumerate(s) if u != p and u not in s[:i]]
        if tuple(firsts) != tree.children[v]:
            raise InvalidWalkError(f"vertex {v}: first visits {firsts} break child order {tree.children[v]}")
    return k or 0


def reconstruct_walk(tree: PlaneTree, seqs: DepartureSequences) -> Walk:
    """Replay departure sequences from the root until the root's sequence runs out.

    The result is relabelled in discovery order, so for a valid input it is the
    canonical walk that :func:`decompose_walk` started from.
    """
    if len(seqs) != tree.vertex_count:
        raise InvalidWalkError("one departure sequence per vertex is required")
    queues = [list(s) for s in seqs]
    heads = [0] * len(queues)
    v = 0
    path = [0]
    while heads[v] < len(queues[v]):
        u = queues[v][heads[v]]
        heads[v] += 1
        if not 0 <= u < tree.vertex_count:
            raise InvalidWalkError(f"vertex {v} departs to unknown vertex {u}")
        v = u
        path.append(v)
    if v != 0:
        raise InvalidWalkError(f"sequence exhausted at non-root vertex {v}")
    leftover = [w for w in range(len(queues)) if heads[w] < len(queues[w])]
    if leftover:
        raise InvalidWalkError(f"steps remain at vertices {leftover} after the walk closed")
    if len(path) == 1:
        return (0,)  # single vertex, empty tour
    path.pop()  # implicit return to the root
    label: Dict[int, int] = {}
    for w in path:
        if w not in label:
            label[w] = len(label)
    return tuple(label[w] for w in path)


def _vertex_sequences(children: Tuple[int, ...], parent: Optional[int], k: int) -> Iterator[Tuple[int, ...]]:
    """All valid departure sequences at a single vertex."""
    nbrs = list(children) + ([] if parent is None else [parent])
    if not nbrs:
        yield ()
        return
    size = k * len(nbrs)
    body = size - 1 if parent is not None else size

    def fill(seq: List[int], remaining: Dict[int, int], next_child: int):
        if len(seq) == body:
            yield tuple(seq) + ((parent,) if parent is not None else ())
            return
        for u in nbrs:
            if remaining[u] == 0:
                continue
            nc = next_child
            if u != parent:
                idx = children.index(u)
                if idx > next_child:
                    continue
                if idx == next_child:
                    nc += 1
            remaining[u] -= 1
            seq.append(u)
            yield from fill(seq, remaining, nc)
            seq.pop()
            remaining[u] += 1

    counts = {u: k for u in nbrs}
    if parent is not None:
        counts[parent] = k - 1
    yield from fill([], counts, 0)


def enumerate_departure_sequences(tree: PlaneTree, k: int) -> Iterator[DepartureSequences]:
    """Every assignment of valid departure sequences to the vertices of ``tree``."""
    per_vertex = [list(_vertex_sequences(tree.children[v], tree.parent[v], k)) for v in range(tree.vertex_count)]
    for combo in itertools.product(*per_vertex):
        yield tuple(combo)


def dump_walks(walks: Iterable[Sequence[int]], out: TextIO) -> int:
    """Write one walk per line as comma-separated labels; returns the line count."""
    count = 0
    for w in walks:
        out.write(",".join(map(str, w)) + "\n")
        count += 1
    return count


def is_star_like(tree: PlaneTree, m: int) -> bool:
    """True if the tree has one vertex of degree n-m, m of degree 2 and n-m leaves."""
    n = tree.vertex_count - 1
    hub = n - m
    degs = sorted(tree.degrees())
    return degs == [1] * hub + [2] * m + [hub]


def star_count_by_enumeration(n: int, m: int, k: int) -> int:
    """k-tours summed over every rooted plane tree that is star-like with (n, m)."""
    return sum(tours_on_tree(t, k) for t in enumerate_plane_trees(n + 1) if is_star_like(t, m))
