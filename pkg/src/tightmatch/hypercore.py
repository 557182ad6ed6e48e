"""2-edge-coloured k-uniform hypergraphs and their structural queries.

Vertices are plain integers in ``[0, n)``.  An edge is a strictly increasing
tuple of k vertex indices; two edges are equal iff the tuples are identical.
A :class:`ColouredKGraph` maps each present edge to a :class:`Colour`; an
absent edge is a non-edge, distinct from either colour.

The edge map is the single source of truth.  Internally the graph also keeps
a columnar copy (a lexicographically sorted ``(m, k)`` vertex matrix plus a
colour vector) and, when ``C(n, k)`` is small enough, colex rank tables, so
that the heavy operations (component decomposition, shadows, degrees) run as
vectorised numpy/scipy passes.  All operations are pure: graphs are never
mutated after construction and results are deterministic.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Mapping, Set as AbstractSet
from dataclasses import dataclass
from enum import IntEnum
from math import comb
from types import MappingProxyType
from typing import Optional, Union

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components as _sp_components

from . import _ranking
from .errors import ParameterError

Edge = tuple[int, ...]

# rank tables are only materialised when C(n, k) stays below this
_RANK_TABLE_LIMIT = 1 << 25

# vertex labels are packed into single bytes for facet bucketing
_MAX_VERTICES = 256


class Colour(IntEnum):
    """One of the two edge colours."""

    RED = 1
    BLUE = 2

    @property
    def letter(self) -> str:
        return "R" if self is Colour.RED else "B"

    @classmethod
    def from_letter(cls, letter: str) -> "Colour":
        if letter == "R":
            return cls.RED
        if letter == "B":
            return cls.BLUE
        raise ParameterError(f"unknown colour letter {letter!r}")

    def opposite(self) -> "Colour":
        return Colour.BLUE if self is Colour.RED else Colour.RED


def canonical_edge(vertices: Iterable[int], k: Optional[int] = None, n: Optional[int] = None) -> Edge:
    """Sorted, validated edge tuple."""
    vs = tuple(sorted(int(v) for v in vertices))
    if len(set(vs)) != len(vs):
        raise ParameterError(f"edge {vs} has a repeated vertex")
    if k is not None and len(vs) != k:
        raise ParameterError(f"edge {vs} has {len(vs)} vertices, expected {k}")
    if vs and (vs[0] < 0 or (n is not None and vs[-1] >= n)):
        raise ParameterError(f"edge {vs} has a vertex outside [0, {n})")
    return vs


class ColouredKGraph:
    """A k-uniform hypergraph on n labelled vertices with Red/Blue edges."""

    __slots__ = (
        "k",
        "n",
        "_dict",
        "_verts",
        "_cols",
        "_colour_table",
        "_row_table",
        "_edge_row",
        "_tight_cache",
        "_comp_of_cache",
        "_loose_cache",
    )

    def __init__(self, k: int, n: int, edges: Union[Mapping, Iterable] = ()):
        if k < 1:
            raise ParameterError(f"uniformity k={k} must be >= 1")
        if n < 0 or n > _MAX_VERTICES:
            raise ParameterError(f"vertex count n={n} outside [0, {_MAX_VERTICES}]")
        self.k = k
        self.n = n
        items = edges.items() if isinstance(edges, Mapping) else edges
        store: dict[Edge, Colour] = {}
        for e, c in items:
            e = canonical_edge(e, k=k, n=n)
            c = Colour(c)
            if e in store:
                raise ParameterError(f"duplicate edge {e}")
            store[e] = c
        self._dict: Optional[dict[Edge, Colour]] = dict(sorted(store.items()))
        self._verts: Optional[np.ndarray] = None
        self._cols: Optional[np.ndarray] = None
        self._init_caches()

    def _init_caches(self) -> None:
        self._colour_table = None
        self._row_table = None
        self._edge_row = None
        self._tight_cache = {}
        self._comp_of_cache = {}
        self._loose_cache = {}

    @classmethod
    def from_arrays(cls, k: int, n: int, verts: np.ndarray, colours: np.ndarray, *, presorted: bool = False) -> "ColouredKGraph":
        """Build from a vertex matrix (m, k) and colour codes (m,) in {1, 2}."""
        self = cls.__new__(cls)
        if k < 1:
            raise ParameterError(f"uniformity k={k} must be >= 1")
        if n < 0 or n > _MAX_VERTICES:
            raise ParameterError(f"vertex count n={n} outside [0, {_MAX_VERTICES}]")
        self.k = k
        self.n = n
        verts = np.asarray(verts, dtype=np.uint8).reshape(-1, k)
        colours = np.asarray(colours, dtype=np.uint8).reshape(-1)
        if len(verts) != len(colours):
            raise ParameterError("vertex matrix and colour vector lengths differ")
        if len(verts):
            if int(verts.max(initial=0)) >= n:
                raise ParameterError("vertex index out of range")
            if k > 1 and not (np.diff(verts.astype(np.int16), axis=1) > 0).all():
                raise ParameterError("edge rows must be strictly increasing")
            if not np.isin(colours, (1, 2)).all():
                raise ParameterError("colour codes must be 1 (red) or 2 (blue)")
            if not presorted:
                order = np.lexsort(verts.T[::-1])
                verts = verts[order]
                colours = colours[order]
            if len(verts) > 1 and (verts[1:] == verts[:-1]).all(axis=1).any():
                raise ParameterError("duplicate edge rows")
        self._dict = None
        self._verts = verts
        self._cols = colours
        self._init_caches()
        return self

    # -- storage ----------------------------------------------------------

    def _ensure_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        if self._verts is None:
            d = self._dict
            m = len(d)
            verts = np.zeros((m, self.k), dtype=np.uint8)
            cols = np.zeros(m, dtype=np.uint8)
            for i, (e, c) in enumerate(d.items()):  # dict is kept sorted
                verts[i] = e
                cols[i] = int(c)
            self._verts = verts
            self._cols = cols
        return self._verts, self._cols

    def _ensure_dict(self) -> dict[Edge, Colour]:
        if self._dict is None:
            verts, cols = self._verts, self._cols
            self._dict = {
                tuple(int(v) for v in row): Colour(int(c))
                for row, c in zip(verts, cols)
            }
        return self._dict

    def _ensure_tables(self) -> bool:
        """Build rank -> colour/row tables when C(n, k) is small enough."""
        if self._colour_table is not None:
            return True
        total = comb(self.n, self.k)
        if total > _RANK_TABLE_LIMIT:
            return False
        verts, cols = self._ensure_arrays()
        ct = np.zeros(total, dtype=np.uint8)
        rt = np.full(total, -1, dtype=np.int64)
        if len(verts):
            ranks = _ranking.rank_rows(verts, self.n)
            ct[ranks] = cols
            rt[ranks] = np.arange(len(verts))
        self._colour_table = ct
        self._row_table = rt
        return True

    def _ensure_edge_row(self) -> dict[Edge, int]:
        if self._edge_row is None:
            verts, _ = self._ensure_arrays()
            self._edge_row = {tuple(int(v) for v in row): i for i, row in enumerate(verts)}
        return self._edge_row

    def _row_of(self, edge: Edge) -> int:
        """Row index of an edge, or -1 if absent."""
        if self._ensure_tables():
            r = _ranking.rank_tuple(edge)
            return int(self._row_table[r])
        return self._ensure_edge_row().get(edge, -1)

    # -- basic queries ------------------------------------------------------

    @property
    def edges(self) -> Mapping[Edge, Colour]:
        if self._dict is not None:
            return MappingProxyType(self._dict)
        return _ArrayEdgeMap(self)

    @property
    def edge_count(self) -> int:
        if self._dict is not None:
            return len(self._dict)
        return len(self._verts)

    def colour_of(self, edge: Iterable[int]) -> Optional[Colour]:
        e = canonical_edge(edge, k=self.k, n=self.n)
        if self._dict is not None:
            return self._dict.get(e)
        row = self._row_of(e)
        return Colour(int(self._cols[row])) if row >= 0 else None

    def __contains__(self, edge) -> bool:
        try:
            return self.colour_of(edge) is not None
        except ParameterError:
            return False

    def vertices(self) -> range:
        return range(self.n)

    def is_complete(self) -> bool:
        return self.edge_count == comb(self.n, self.k)

    def rows_of_colour(self, colour: Optional[Colour]) -> np.ndarray:
        """Row indices of the given colour class (all rows when None)."""
        self._ensure_arrays()
        if colour is None:
            return np.arange(len(self._cols), dtype=np.int64)
        return np.flatnonzero(self._cols == int(colour)).astype(np.int64)

    def colour_counts(self) -> dict[Colour, int]:
        self._ensure_arrays()
        return {c: int((self._cols == int(c)).sum()) for c in Colour}

    def __repr__(self) -> str:
        return f"ColouredKGraph(k={self.k}, n={self.n}, edges={self.edge_count})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, ColouredKGraph):
            return NotImplemented
        if (self.k, self.n, self.edge_count) != (other.k, other.n, other.edge_count):
            return False
        a, ac = self._ensure_arrays()
        b, bc = other._ensure_arrays()
        return bool((a == b).all() and (ac == bc).all())

    __hash__ = None


class _ArrayEdgeMap(Mapping):
    """Read-only Mapping view over a graph's columnar storage."""

    __slots__ = ("_g",)

    def __init__(self, graph: ColouredKGraph):
        self._g = graph

    def __getitem__(self, edge: Edge) -> Colour:
        c = self._g.colour_of(edge)
        if c is None:
            raise KeyError(edge)
        return c

    def __iter__(self):
        for row in self._g._verts:
            yield tuple(int(v) for v in row)

    def __len__(self) -> int:
        return len(self._g._verts)


class EdgeSubset(AbstractSet):
    """Immutable set-like view of a subset of one graph's edges.

    Stores row indices into the graph's canonical edge order, so membership
    and iteration work without materialising millions of tuples.
    """

    __slots__ = ("graph", "rows")

    def __init__(self, graph: ColouredKGraph, rows: np.ndarray):
        self.graph = graph
        self.rows = np.asarray(rows, dtype=np.int64)

    def __contains__(self, edge) -> bool:
        try:
            e = canonical_edge(edge, k=self.graph.k, n=self.graph.n)
        except ParameterError:
            return False
        row = self.graph._row_of(e)
        if row < 0:
            return False
        pos = int(np.searchsorted(self.rows, row))
        return pos < len(self.rows) and int(self.rows[pos]) == row

    def __iter__(self):
        verts = self.graph._verts
        for r in self.rows:
            yield tuple(int(v) for v in verts[r])

    def __len__(self) -> int:
        return len(self.rows)

    def vertex_matrix(self) -> np.ndarray:
        return self.graph._verts[self.rows]

    def support(self) -> frozenset[int]:
        if len(self.rows) == 0:
            return frozenset()
        return frozenset(int(v) for v in np.unique(self.vertex_matrix()))

    def support_array(self) -> np.ndarray:
        if len(self.rows) == 0:
            return np.zeros(0, dtype=np.int64)
        return np.unique(self.vertex_matrix()).astype(np.int64)

    def least_edge(self) -> Optional[Edge]:
        if len(self.rows) == 0:
            return None
        return tuple(int(v) for v in self.graph._verts[self.rows[0]])

    def __repr__(self) -> str:
        return f"EdgeSubset({len(self.rows)} edges of {self.graph!r})"


@dataclass(frozen=True)
class TightComponent:
    """A maximal set of same-coloured edges pairwise joined by tight walks.

    ``colour`` is None for components of the uncoloured view.  Ids number
    components by their lexicographically least edge.
    """

    id: int
    colour: Optional[Colour]
    edges: EdgeSubset

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def support(self) -> frozenset[int]:
        return self.edges.support()

    def __repr__(self) -> str:
        cname = self.colour.name if self.colour is not None else "ANY"
        return f"TightComponent(id={self.id}, {cname}, {self.edge_count} edges)"


# ---------------------------------------------------------------------------
# structural operations
# ---------------------------------------------------------------------------


def _bucket_components(verts: np.ndarray, keys_per_edge: list[np.ndarray]) -> np.ndarray:
    """Connected components of edges linked through shared bucket keys.

    ``keys_per_edge`` lists, for each incidence class, one uint64 key per
    edge; edges sharing any key are connected.  Returns a label per edge,
    renumbered by first occurrence in row order.
    """
    m = len(verts)
    if m == 0:
        return np.zeros(0, dtype=np.int64)
    codes = np.concatenate(keys_per_edge)
    uniq, inv = np.unique(codes, return_inverse=True)
    rows = np.tile(np.arange(m, dtype=np.int64), len(keys_per_edge))
    cols = inv.astype(np.int64) + m
    nn = m + len(uniq)
    graph = coo_matrix(
        (np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(nn, nn)
    )
    _, labels = _sp_components(graph, directed=False)
    edge_labels = labels[:m]
    # renumber by first occurrence so component 0 owns the least edge
    uniq_labels, first = np.unique(edge_labels, return_index=True)
    order = np.argsort(first, kind="stable")
    remap = np.empty(len(uniq_labels), dtype=np.int64)
    remap[order] = np.arange(len(uniq_labels))
    lut = np.zeros(int(edge_labels.max()) + 1, dtype=np.int64)
    lut[uniq_labels] = remap
    return lut[edge_labels]


def _facet_keys(verts: np.ndarray, cols: np.ndarray, coloured: bool) -> list[np.ndarray]:
    m, k = verts.shape
    keys = []
    for drop in range(k):
        code = cols.astype(np.uint64) if coloured else np.zeros(m, dtype=np.uint64)
        for j in range(k):
            if j == drop:
                continue
            code = code * np.uint64(_MAX_VERTICES) + verts[:, j].astype(np.uint64)
        keys.append(code)
    return keys


def tight_components(H: ColouredKGraph, *, coloured: bool = True) -> list[TightComponent]:
    """Maximal tightly connected subgraphs, colour-pure when ``coloured``.

    Edges are adjacent when they share a (k-1)-subset (and, in the coloured
    view, a colour); components partition the edge set.  Ids follow the
    order of each component's lexicographically least edge.
    """
    cache = H._tight_cache
    if coloured in cache:
        return cache[coloured]
    verts, cols = H._ensure_arrays()
    labels = _bucket_components(verts, _facet_keys(verts, cols, coloured))
    comps: list[TightComponent] = []
    if len(labels):
        ncomp = int(labels.max()) + 1
        order = np.argsort(labels, kind="stable")
        bounds = np.searchsorted(labels[order], np.arange(ncomp + 1))
        for cid in range(ncomp):
            rows = np.sort(order[bounds[cid] : bounds[cid + 1]])
            colour = Colour(int(cols[rows[0]])) if coloured else None
            comps.append(TightComponent(cid, colour, EdgeSubset(H, rows)))
    cache[coloured] = comps
    H._comp_of_cache[coloured] = labels
    return comps


def component_index(H: ColouredKGraph, *, coloured: bool = True) -> np.ndarray:
    """Component id per edge row (aligned with the canonical edge order)."""
    tight_components(H, coloured=coloured)
    return H._comp_of_cache[coloured]


def component_of(H: ColouredKGraph, edge: Iterable[int], *, coloured: bool = True) -> Optional[TightComponent]:
    e = canonical_edge(edge, k=H.k, n=H.n)
    row = H._row_of(e)
    if row < 0:
        return None
    comps = tight_components(H, coloured=coloured)
    return comps[int(component_index(H, coloured=coloured)[row])]


def tight_walk(H: ColouredKGraph, f: Iterable[int], g: Iterable[int]):
    """A tight walk from edge f to edge g inside one colour class.

    Returns the edge sequence ``e_1 = f, ..., e_t = g`` with consecutive
    intersections of size exactly k-1, or None when no walk exists.  Both
    edges must be present and share a colour.
    """
    f = canonical_edge(f, k=H.k, n=H.n)
    g = canonical_edge(g, k=H.k, n=H.n)
    cf, cg = H.colour_of(f), H.colour_of(g)
    if cf is None or cg is None:
        raise ParameterError("tight_walk requires both edges to be present")
    if cf is not cg:
        raise ParameterError("tight_walk requires edges of the same colour")
    if f == g:
        return [f]
    if component_of(H, f).id != component_of(H, g).id:
        return None
    colour = cf

    def neighbours(e: Edge):
        es = set(e)
        for drop in e:
            facet = tuple(v for v in e if v != drop)
            for w in range(H.n):
                if w in es:
                    continue
                cand = tuple(sorted(facet + (w,)))
                if H.colour_of(cand) is colour:
                    yield cand

    # bidirectional BFS with parent maps; a meeting edge stitches the walk
    parents_f: dict[Edge, Optional[Edge]] = {f: None}
    parents_g: dict[Edge, Optional[Edge]] = {g: None}
    frontier_f, frontier_g = [f], [g]
    meet = None
    while meet is None:
        if not frontier_f or not frontier_g:
            return None
        if len(frontier_f) > len(frontier_g):
            frontier_f, frontier_g = frontier_g, frontier_f
            parents_f, parents_g = parents_g, parents_f
        nxt = []
        for e in frontier_f:
            for nb in neighbours(e):
                if nb in parents_f:
                    continue
                parents_f[nb] = e
                if nb in parents_g:
                    meet = nb
                    break
                nxt.append(nb)
            if meet is not None:
                break
        frontier_f = nxt
    left = []
    cur = meet
    while cur is not None:
        left.append(cur)
        cur = parents_f[cur]
    right = []
    cur = parents_g[meet]
    while cur is not None:
        right.append(cur)
        cur = parents_g[cur]
    walk = left[::-1] + right
    if walk[0] != f:
        walk.reverse()
    return walk


def loose_components(H: ColouredKGraph, colour: Colour) -> list[EdgeSubset]:
    """Maximal loosely connected subsets of one colour class.

    Edges are adjacent when they share at least one vertex.
    """
    colour = Colour(colour)
    if colour in H._loose_cache:
        return H._loose_cache[colour]
    verts, cols = H._ensure_arrays()
    rows = np.flatnonzero(cols == int(colour)).astype(np.int64)
    sub = verts[rows]
    keys = [sub[:, j].astype(np.uint64) for j in range(H.k)]
    labels = _bucket_components(sub, keys)
    out: list[EdgeSubset] = []
    if len(labels):
        ncomp = int(labels.max()) + 1
        order = np.argsort(labels, kind="stable")
        bounds = np.searchsorted(labels[order], np.arange(ncomp + 1))
        for cid in range(ncomp):
            out.append(EdgeSubset(H, np.sort(rows[order[bounds[cid] : bounds[cid + 1]]])))
    H._loose_cache[colour] = out
    return out


def shadow(H, j: int) -> set[Edge]:
    """The j-th shadow: all (k-j)-sets contained in some edge.

    ``H`` may be a ColouredKGraph or any iterable of edges.
    """
    if isinstance(H, ColouredKGraph):
        k = H.k
        if not 1 <= j <= k - 1:
            raise ParameterError(f"shadow level j={j} outside [1, {k - 1}]")
        verts, _ = H._ensure_arrays()
        if len(verts) == 0:
            return set()
        parts = [verts[:, list(cols)] for cols in itertools.combinations(range(k), k - j)]
        allrows = np.unique(np.concatenate(parts), axis=0)
        return {tuple(int(v) for v in row) for row in allrows}
    edges = [tuple(e) for e in H]
    if not edges:
        return set()
    k = len(edges[0])
    if not 1 <= j <= k - 1:
        raise ParameterError(f"shadow level j={j} outside [1, {k - 1}]")
    out: set[Edge] = set()
    for e in edges:
        out.update(itertools.combinations(sorted(e), k - j))
    return out


def shadow_rank_table(H: ColouredKGraph, rows: np.ndarray, j: int) -> np.ndarray:
    """Boolean table over C(n, k-j) colex ranks marking the j-th shadow
    of the given edge rows.  Internal fast path for membership tests."""
    k, n = H.k, H.n
    table = np.zeros(comb(n, k - j), dtype=bool)
    verts = H._verts[rows]
    for cols in itertools.combinations(range(k), k - j):
        table[_ranking.column_subset_ranks(verts, cols, n)] = True
    return table


def link(H: ColouredKGraph, S: Iterable[int]) -> ColouredKGraph:
    """Link graph H_S: a (k-|S|)-graph on the vertices outside S whose edges
    are the S-remainders of edges containing S, inheriting colours."""
    S = tuple(sorted(set(int(v) for v in S)))
    if any(v < 0 or v >= H.n for v in S):
        raise ParameterError(f"link set {S} outside the vertex range")
    if len(S) >= H.k:
        raise ParameterError(f"link set size {len(S)} must be < k={H.k}")
    if not S:
        return H
    verts, cols = H._ensure_arrays()
    mask = np.ones(len(verts), dtype=bool)
    for v in S:
        mask &= (verts == v).any(axis=1)
    sel = verts[mask]
    keep = ~np.isin(sel, np.asarray(S, dtype=np.uint8))
    newk = H.k - len(S)
    rows = sel[keep].reshape(-1, newk)
    return ColouredKGraph.from_arrays(newk, H.n, rows, cols[mask], presorted=True)


def degree(H: ColouredKGraph, S: Iterable[int], W: Optional[Iterable[int]] = None, colour: Optional[Colour] = None) -> int:
    """d_H(S, W): the number of (k-|S|)-sets e inside W with ``e ∪ S`` an
    edge (of the given colour, when filtered).  W defaults to V(H)."""
    S = tuple(sorted(set(int(v) for v in S)))
    if len(S) >= H.k:
        raise ParameterError(f"degree set size {len(S)} must be < k={H.k}")
    verts, cols = H._ensure_arrays()
    mask = np.ones(len(verts), dtype=bool)
    if colour is not None:
        mask &= cols == int(Colour(colour))
    for v in S:
        if v < 0 or v >= H.n:
            raise ParameterError(f"degree set vertex {v} outside range")
        mask &= (verts == v).any(axis=1)
    if W is not None:
        wmask = np.zeros(H.n, dtype=bool)
        for v in W:
            wmask[int(v)] = True
        inside = wmask[verts] | np.isin(verts, np.asarray(S, dtype=np.uint8)).reshape(verts.shape)
        mask &= inside.all(axis=1)
    return int(mask.sum())


def delete_vertices(H: ColouredKGraph, W: Iterable[int]) -> ColouredKGraph:
    """The graph H - W: edges meeting W are removed, labels are preserved."""
    wmask = np.zeros(H.n, dtype=bool)
    for v in W:
        v = int(v)
        if v < 0 or v >= H.n:
            raise ParameterError(f"vertex {v} outside range")
        wmask[v] = True
    verts, cols = H._ensure_arrays()
    if len(verts) == 0 or not wmask.any():
        keep = np.ones(len(verts), dtype=bool)
    else:
        keep = ~wmask[verts].any(axis=1)
    return ColouredKGraph.from_arrays(H.k, H.n, verts[keep], cols[keep], presorted=True)


def induced_subgraph(H: ColouredKGraph, W: Iterable[int]) -> ColouredKGraph:
    """H[W]: the subgraph on the vertex set W (labels preserved)."""
    wset = set(int(v) for v in W)
    return delete_vertices(H, [v for v in range(H.n) if v not in wset])


def swap_colours(H: ColouredKGraph) -> ColouredKGraph:
    """The same graph with red and blue exchanged."""
    verts, cols = H._ensure_arrays()
    return ColouredKGraph.from_arrays(
        H.k, H.n, verts, np.where(cols == 1, 2, 1).astype(np.uint8), presorted=True
    )
