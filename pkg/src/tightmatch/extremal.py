"""Extremal colourings and the two-tight-cycle partition decision procedure.

The extremal family splits the vertices into X, Y and a single vertex z
(sizes (k-1)m + k - 2, m + 2 and 1) and colours an edge red exactly when
it contains z and meets Y twice, or avoids z and meets Y exactly once.
The parity family on A ∪ B colours an edge red iff ``|e ∩ A|`` is even.

``verify_two_cycle_partition`` decides, by exhaustive pruned search,
whether a complete coloured k-graph splits into a red and a blue tight
cycle (degenerate cycles allowed: any set of fewer than k vertices acts as
a colour wildcard, and a k-set must be an edge of the slot's colour).
Pruning is sound: a non-degenerate tight cycle's edges lie in one tight
component whose support is exactly the cycle's vertex set, and on
recognised extremal instances the path/cycle counting inequalities rule
out candidate bipartitions arithmetically.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from . import _ranking
from .errors import ParameterError
from .hypercore import (
    Colour,
    ColouredKGraph,
    Edge,
    canonical_edge,
)


class HypothesisError(ParameterError):
    """An edge violates the |e ∩ Y| >= 2 hypothesis of the inequality."""

    def __init__(self, message, edge=None):
        super().__init__(message)
        self.edge = edge


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExtremalStructure:
    k: int
    m: int
    x_size: int
    y_size: int

    @property
    def n(self) -> int:
        return self.k * (self.m + 1) + 1

    @property
    def z(self) -> int:
        return self.n - 1

    def in_y(self, v: int) -> bool:
        return self.x_size <= v < self.x_size + self.y_size


def extremal_structure(k: int, m: int) -> ExtremalStructure:
    if k < 3:
        raise ParameterError("extremal colouring needs k >= 3")
    if m < k + 1:
        raise ParameterError(f"extremal colouring needs m >= k+1, got m={m}")
    return ExtremalStructure(k, m, (k - 1) * m + k - 2, m + 2)


def extremal_colouring(k: int, m: int) -> ColouredKGraph:
    """The complete coloured k-graph admitting no two-tight-cycle partition.

    Vertices 0..|X|-1 form X, the next m+2 form Y, and the last vertex is
    z.  An edge is red iff (z in e and |e ∩ Y| >= 2) or (z not in e and
    |e ∩ Y| = 1); otherwise blue.
    """
    st = extremal_structure(k, m)
    n = st.n
    verts = _ranking.all_combinations(n, k)
    ycount = ((verts >= st.x_size) & (verts < st.x_size + st.y_size)).sum(axis=1)
    has_z = (verts == st.z).any(axis=1)
    red = (has_z & (ycount >= 2)) | (~has_z & (ycount == 1))
    colours = np.where(red, 1, 2).astype(np.uint8)
    return ColouredKGraph.from_arrays(k, n, verts, colours, presorted=True)


def recognize_extremal(H: ColouredKGraph) -> Optional[ExtremalStructure]:
    """Match H against the extremal family (exact edge-map equality)."""
    k, n = H.k, H.n
    if k < 3 or (n - 1) % k != 0:
        return None
    m = (n - 1) // k - 1
    if m < k + 1:
        return None
    if not H.is_complete():
        return None
    if H == extremal_colouring(k, m):
        return extremal_structure(k, m)
    return None


def parity_colouring(k: int, size_a: int, size_b: int) -> ColouredKGraph:
    """Complete k-graph on A ∪ B, red iff |e ∩ A| is even."""
    if size_a + size_b < k:
        raise ParameterError("need at least k vertices")
    n = size_a + size_b
    verts = _ranking.all_combinations(n, k)
    acount = (verts < size_a).sum(axis=1)
    colours = np.where(acount % 2 == 0, 1, 2).astype(np.uint8)
    return ColouredKGraph.from_arrays(k, n, verts, colours, presorted=True)


# ---------------------------------------------------------------------------
# path/cycle inequalities
# ---------------------------------------------------------------------------


def partition_inequality_check(
    structure: str,
    k: int,
    X: Iterable[int],
    Y: Iterable[int],
    edges: Sequence[Edge],
) -> bool:
    """Evaluate the tight path/cycle counting inequality exactly.

    For a partition (X, Y) of the vertex set with every edge meeting Y at
    least twice: paths satisfy ``2(|X| - (k-1)) <= (k-2)|Y|`` and cycles
    ``2|X| <= (k-2)|Y|``.  Returns True (ok) or False (violated); raises
    :class:`HypothesisError` when some edge meets Y fewer than twice and
    :class:`ParameterError` when (X, Y) is not a partition of the span.
    """
    if structure not in ("path", "cycle"):
        raise ParameterError(f"structure must be 'path' or 'cycle', got {structure!r}")
    xs, ys = set(X), set(Y)
    if xs & ys:
        raise ParameterError("X and Y overlap")
    span = set()
    for e in edges:
        span.update(e)
    if span - (xs | ys):
        raise ParameterError("X ∪ Y does not cover the edges' vertices")
    for e in edges:
        if len(set(e) & ys) < 2:
            raise HypothesisError(f"edge {tuple(e)} meets Y fewer than twice", edge=tuple(e))
    if structure == "path":
        return 2 * (len(xs) - (k - 1)) <= (k - 2) * len(ys)
    return 2 * len(xs) <= (k - 2) * len(ys)


# ---------------------------------------------------------------------------
# tight cycle search
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CycleWitness:
    order: tuple[int, ...]
    kind: str                      # "proper" | "edge" | "small"
    colour: Optional[Colour]       # None marks a degenerate colour wildcard

    def covers(self) -> frozenset[int]:
        return frozenset(self.order)


def _edge_components(edges: list[Edge], k: int) -> list[list[Edge]]:
    """Tight components of a small edge list (pairwise (k-1)-intersections)."""
    parent = list(range(len(edges)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    sets = [set(e) for e in edges]
    for i in range(len(edges)):
        for j in range(i):
            if len(sets[i] & sets[j]) == k - 1:
                parent[find(i)] = find(j)
    groups: dict[int, list[Edge]] = {}
    for i, e in enumerate(edges):
        groups.setdefault(find(i), []).append(e)
    return [sorted(g) for g in sorted(groups.values(), key=min)]


def _hamilton_tight_cycle(edge_set: set[Edge], S: Sequence[int], k: int, stats: Optional[dict] = None):
    """Backtracking search for a cyclic order of S with all k-windows in
    edge_set.  Candidates are tried in ascending static degree, then index;
    reversal symmetry is broken by requiring order[1] < order[-1]."""
    S = sorted(S)
    s = len(S)
    deg = {v: 0 for v in S}
    for e in edge_set:
        for v in e:
            deg[v] += 1
    by_pref = sorted(S, key=lambda v: (deg[v], v))
    # anchoring the cycle at the most constrained vertex fails fastest
    first = by_pref[0]
    order = [first]
    used = {first}

    def windows_ok_at(pos: int) -> bool:
        # full windows ending at position pos exist once pos >= k-1
        if pos < k - 1:
            return True
        w = tuple(sorted(order[pos - k + 1 : pos + 1]))
        return w in edge_set

    def close_ok() -> bool:
        for i in range(s - k + 1, s):
            w = tuple(sorted(order[(i + j) % s] for j in range(k)))
            if w not in edge_set:
                return False
        return True

    def extend() -> bool:
        if stats is not None:
            stats["nodes"] = stats.get("nodes", 0) + 1
        pos = len(order)
        if pos == s:
            return order[1] < order[-1] and close_ok()
        for v in by_pref:
            if v in used:
                continue
            order.append(v)
            used.add(v)
            if windows_ok_at(pos) and extend():
                return True
            order.pop()
            used.remove(v)
        return False

    if extend():
        return tuple(order)
    return None


def tight_cycle_on(H_sub, S: Iterable[int], colour: Optional[Colour] = None, *, stats: Optional[dict] = None):
    """A cyclic order of S whose k-windows are all edges of H_sub (of the
    stated colour), or None.  Degenerate sizes return immediately: fewer
    than k vertices always succeed, exactly k vertices need that edge.

    ``H_sub`` may be a ColouredKGraph (edges filtered by colour) or an
    iterable of edges (used as given).  Non-degenerate searches try each
    tight component whose support is exactly S.
    """
    S = tuple(sorted(set(int(v) for v in S)))
    if isinstance(H_sub, ColouredKGraph):
        k = H_sub.k
        edges = [e for e, c in H_sub.edges.items() if colour is None or c is colour]
    else:
        edges = sorted(tuple(e) for e in H_sub)
        k = len(edges[0]) if edges else (len(S) if len(S) else 1)
    if len(S) < k:
        return S
    if len(S) == k:
        return S if tuple(S) in set(edges) else None
    inside = [e for e in edges if set(e) <= set(S)]
    sset = set(S)
    for comp in _edge_components(inside, k):
        support = set()
        for e in comp:
            support.update(e)
        if support != sset:
            if stats is not None:
                stats["support_prunes"] = stats.get("support_prunes", 0) + 1
            continue
        found = _hamilton_tight_cycle(set(comp), S, k, stats)
        if found is not None:
            return found
    return None


# ---------------------------------------------------------------------------
# partition verification
# ---------------------------------------------------------------------------


@dataclass
class PartitionCertificate:
    verdict: str                      # "partition" | "none"
    red: Optional[CycleWitness] = None
    blue: Optional[CycleWitness] = None
    stats: dict = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.verdict == "partition"


def _multiplicity_feasible(c: int, side: int, count: int, windows: int, k: int, is_path: bool) -> bool:
    """Window-counting feasibility when every edge meets one part exactly c
    times: a cycle has k windows per vertex so c*s = k*count; a path pins
    each part vertex into between 1 and k of its p-k+1 windows."""
    if c == 0:
        return count == 0
    if not is_path:
        return c * side == k * count
    return count <= c * windows <= k * count


def _profile_prune(comp_edges, side_vertices, st: ExtremalStructure, is_path: bool, k: int) -> bool:
    """True when the counting inequalities still allow a cycle/path covering
    side_vertices inside this component; False prunes the candidate."""
    in_y = st.in_y
    y_hits = [sum(1 for v in e if in_y(v)) for e in comp_edges]
    x_hits = [sum(1 for v in e if not in_y(v) and v != st.z) for e in comp_edges]
    ys = sum(1 for v in side_vertices if in_y(v))
    xs = len(side_vertices) - ys  # z, if present, counts on the X side
    s = len(side_vertices)
    windows = s - k + 1 if is_path else s
    slack = (k - 1) if is_path else 0
    if min(y_hits) >= 2 and 2 * (xs - slack) > (k - 2) * ys:
        return False
    if min(x_hits) >= 2 and 2 * (ys - slack) > (k - 2) * xs:
        return False
    if min(y_hits) == max(y_hits) and not _multiplicity_feasible(y_hits[0], s, ys, windows, k, is_path):
        return False
    if min(x_hits) == max(x_hits) and not _multiplicity_feasible(x_hits[0], s, xs, windows, k, is_path):
        return False
    return True


class _SlotContext:
    """Precomputed per-colour edge lists with vertex bitmasks."""

    def __init__(self, H: ColouredKGraph, ext: Optional[ExtremalStructure], stats: dict):
        self.H = H
        self.k = H.k
        self.ext = ext
        self.stats = stats
        self.by_colour: dict[Colour, list[tuple[Edge, int]]] = {c: [] for c in Colour}
        for e, c in H.edges.items():
            mask = 0
            for v in e:
                mask |= 1 << v
            self.by_colour[c].append((e, mask))


def _masked_components(pairs: list[tuple[Edge, int]], k: int) -> list[list[tuple[Edge, int]]]:
    parent = list(range(len(pairs)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(len(pairs)):
        mi = pairs[i][1]
        for j in range(i):
            if (mi & pairs[j][1]).bit_count() == k - 1:
                parent[find(i)] = find(j)
    groups: dict[int, list[tuple[Edge, int]]] = {}
    for i, p in enumerate(pairs):
        groups.setdefault(find(i), []).append(p)
    return sorted(groups.values(), key=lambda g: min(e for e, _ in g))


def _slot_witness_ctx(ctx: _SlotContext, S: frozenset[int], colour: Colour):
    """Witness that S carries a tight cycle of the given colour (degenerate
    rules included), or None."""
    H, k, ext, stats = ctx.H, ctx.k, ctx.ext, ctx.stats
    s = len(S)
    if s < k:
        return CycleWitness(tuple(sorted(S)), "small", None)
    if s == k:
        e = tuple(sorted(S))
        return CycleWitness(e, "edge", colour) if H.colour_of(e) is colour else None
    smask = 0
    for v in S:
        smask |= 1 << v
    through_z = ext is not None and ext.z in S
    base_mask = smask & ~(1 << ext.z) if through_z else smask
    base = S - {ext.z} if through_z else S
    inside = [(e, m) for e, m in ctx.by_colour[colour] if m & ~base_mask == 0]
    # a proper cycle's windows avoiding z form one tight walk, so they sit
    # in a single component whose support is the whole z-free side
    for comp in _masked_components(inside, k):
        support_mask = 0
        for _, m in comp:
            support_mask |= m
        if support_mask != base_mask:
            stats["support_prunes"] = stats.get("support_prunes", 0) + 1
            continue
        comp_edges = [e for e, _ in comp]
        if ext is not None and not _profile_prune(comp_edges, base, ext, is_path=through_z, k=k):
            stats["inequality_prunes"] = stats.get("inequality_prunes", 0) + 1
            continue
        if through_z:
            zbit = 1 << ext.z
            pool = set(comp_edges) | {
                e for e, m in ctx.by_colour[colour] if m & zbit and m & ~smask == 0
            }
        else:
            pool = set(comp_edges)
        stats["cycle_searches"] = stats.get("cycle_searches", 0) + 1
        found = _hamilton_tight_cycle(pool, sorted(S), k, stats)
        if found is not None:
            return CycleWitness(found, "proper", colour)
    return None


def _candidate_sets(H: ColouredKGraph, stats: dict, budget: int):
    """Deterministic stream of red-side vertex sets S to test."""
    from .hypercore import tight_components  # local import to avoid cycles

    n, k = H.n, H.k
    V = frozenset(range(n))
    if n <= 14:
        for size in range(n + 1):
            for S in itertools.combinations(range(n), size):
                yield frozenset(S)
        return
    comps = tight_components(H)
    reds = [c for c in comps if c.colour is Colour.RED]
    blues = [c for c in comps if c.colour is Colour.BLUE]
    seen: set[frozenset[int]] = set()
    emitted = 0

    def emit(S):
        nonlocal emitted
        S = frozenset(S)
        if S in seen:
            return None
        seen.add(S)
        emitted += 1
        if emitted > budget:
            raise ParameterError(f"candidate budget {budget} exceeded")
        return S

    ordered: list[frozenset[int]] = []

    # blue side proper: S contains the co-support of some blue component
    for bc in blues:
        base = V - bc.support()
        # red side proper inside some red component's support
        for rc in reds:
            sup = rc.support()
            if not base <= sup:
                continue
            extra_pool = sorted(sup - base)
            for size in range(len(extra_pool) + 1):
                for extra in itertools.combinations(extra_pool, size):
                    S = emit(base | set(extra))
                    if S is not None and k + 1 <= len(S) <= n - k - 1:
                        ordered.append(S)
        # red side wildcard (fewer than k vertices)
        if len(base) < k:
            pool = sorted(V - base)
            for size in range(k - len(base)):
                for extra in itertools.combinations(pool, size):
                    S = emit(base | set(extra))
                    if S is not None:
                        ordered.append(S)
        # red side a single red edge
        for e, c in H.edges.items():
            if c is Colour.RED and base <= set(e):
                S = emit(e)
                if S is not None:
                    ordered.append(S)
    # blue side degenerate: V - S small or a single blue edge
    for rc in reds:
        co = V - rc.support()
        pool = sorted(rc.support())
        for tsize in range(k):
            need = tsize - len(co)
            if need < 0:
                continue
            for extra in itertools.combinations(pool, need):
                T = co | set(extra)
                S = emit(V - T)
                if S is not None:
                    ordered.append(S)
    for e, c in H.edges.items():
        if c is Colour.BLUE:
            S = emit(V - set(e))
            if S is not None:
                ordered.append(S)
    stats["candidates"] = emitted
    yield from sorted(ordered, key=lambda S: (len(S), tuple(sorted(S))))


def verify_two_cycle_partition(H: ColouredKGraph, *, budget: int = 1 << 22) -> PartitionCertificate:
    """Decide whether H partitions into a red and a blue tight cycle.

    Exhausts vertex bipartitions (red side S, blue side V - S) up to the
    sound prunes documented in the module docstring.  A "none" verdict
    carries the exhaustion statistics.
    """
    if not H.is_complete():
        raise ParameterError("partition verification expects a complete coloured graph")
    ext = recognize_extremal(H)
    stats: dict = {"nodes": 0, "extremal_recognised": ext is not None}
    ctx = _SlotContext(H, ext, stats)
    V = frozenset(range(H.n))
    for S in _candidate_sets(H, stats, budget):
        stats["nodes"] += 1
        red_w = _slot_witness_ctx(ctx, S, Colour.RED)
        if red_w is None:
            continue
        blue_w = _slot_witness_ctx(ctx, V - S, Colour.BLUE)
        if blue_w is not None:
            return PartitionCertificate("partition", red_w, blue_w, stats)
    return PartitionCertificate("none", None, None, stats)


def naive_two_cycle_partition(H: ColouredKGraph) -> PartitionCertificate:
    """All subsets x all cyclic orders; the reference oracle for tiny n."""
    if not H.is_complete():
        raise ParameterError("partition verification expects a complete coloured graph")
    n, k = H.n, H.k
    stats = {"nodes": 0}

    def naive_slot(S, colour):
        s = len(S)
        if s < k:
            return CycleWitness(tuple(sorted(S)), "small", None)
        if s == k:
            e = tuple(sorted(S))
            return CycleWitness(e, "edge", colour) if H.colour_of(e) is colour else None
        vs = sorted(S)
        for perm in itertools.permutations(vs[1:]):
            if perm[0] > perm[-1]:
                continue
            order = (vs[0],) + perm
            stats["nodes"] += 1
            ok = True
            for i in range(s):
                w = tuple(sorted(order[(i + j) % s] for j in range(k)))
                if H.colour_of(w) is not colour:
                    ok = False
                    break
            if ok:
                return CycleWitness(order, "proper", colour)
        return None

    V = set(range(n))
    for size in range(n + 1):
        for S in itertools.combinations(range(n), size):
            red_w = naive_slot(set(S), Colour.RED)
            if red_w is None:
                continue
            blue_w = naive_slot(V - set(S), Colour.BLUE)
            if blue_w is not None:
                return PartitionCertificate("partition", red_w, blue_w, stats)
    return PartitionCertificate("none", None, None, stats)
