"""Blueprints: coloured (k-2)-graphs whose edges designate monochromatic
tight components of the host graph.

A blueprint edge e carries the colour of a near-spanning monochromatic
component K_e of the host's link graph at e, points at the tight component
induced by ``{e ∪ f : f in K_e}`` (BP1), and agrees with every same-coloured
edge sharing k-3 vertices (BP2).  Construction follows the double-edge
pivot: per (k-3)-set the near-unanimous neighbours are kept, and only
(k-2)-sets surviving in all k-2 of their decompositions enter the result.

The helper searches used by the matching pipelines live here too: the
four-vertex bridge between a red and a blue component, the shadow pivot
that aligns one colour's neighbourhood with the other's, and the
component-count reduction on a leftover vertex set.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _ranking
from .errors import ParameterError, ReductionFailed
from .hypercore import (
    Colour,
    ColouredKGraph,
    Edge,
    EdgeSubset,
    TightComponent,
    component_index,
    shadow_rank_table,
    tight_components,
)
from .numeric import array_below, at_least, below, more_than


@dataclass
class Blueprint:
    """A coloured (k-2)-graph plus the component map it induces on the host."""

    host: ColouredKGraph
    epsilon: float
    graph: ColouredKGraph
    induced: dict[Edge, int]
    witness_masks: dict[Edge, int]
    components: list[TightComponent]
    _shadow_tables: dict[int, np.ndarray] = field(default_factory=dict, repr=False)

    def component(self, e: Edge) -> TightComponent:
        return self.components[self.induced[tuple(e)]]

    def witness_vertices(self, e: Edge) -> tuple[int, ...]:
        mask = self.witness_masks[tuple(e)]
        return tuple(v for v in range(self.host.n) if (mask >> v) & 1)

    def witness_order(self, e: Edge) -> int:
        return self.witness_masks[tuple(e)].bit_count()

    def edges_inducing(self, comp_id: int, colour: Optional[Colour] = None) -> list[Edge]:
        out = []
        for e, cid in self.induced.items():
            if cid != comp_id:
                continue
            if colour is not None and self.graph.edges[e] is not colour:
                continue
            out.append(e)
        return sorted(out)

    def shadow_table(self, comp_id: int) -> np.ndarray:
        """Boolean colex-rank table of the (k-1)-sets in the component's shadow."""
        if comp_id not in self._shadow_tables:
            rows = self.components[comp_id].edges.rows
            self._shadow_tables[comp_id] = shadow_rank_table(self.host, rows, 1)
        return self._shadow_tables[comp_id]

    def in_shadow(self, comp_id: int, vs: Iterable[int]) -> bool:
        t = tuple(sorted(vs))
        if len(t) != self.host.k - 1 or len(set(t)) != len(t):
            return False
        return bool(self.shadow_table(comp_id)[_ranking.rank_tuple(t)])

    def subgraph(self, edges: Iterable[Edge]) -> "Blueprint":
        """Restriction to an edge subset (any subgraph of a blueprint is one)."""
        keep = {tuple(e) for e in edges}
        unknown = keep - set(self.induced)
        if unknown:
            raise ParameterError(f"{len(unknown)} edges are not blueprint edges")
        g = ColouredKGraph(
            self.graph.k,
            self.graph.n,
            {e: self.graph.edges[e] for e in keep},
        )
        return Blueprint(
            host=self.host,
            epsilon=self.epsilon,
            graph=g,
            induced={e: self.induced[e] for e in keep},
            witness_masks={e: self.witness_masks[e] for e in keep},
            components=self.components,
            _shadow_tables=self._shadow_tables,
        )


@dataclass(frozen=True)
class PlusGraph:
    """The k-edges of the designated components that contain a blueprint edge."""

    edges: EdgeSubset
    colour: Colour
    component_ids: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.edges)


# ---------------------------------------------------------------------------
# monochromatic spanning component selection
# ---------------------------------------------------------------------------


def _components_labels(adj: np.ndarray) -> np.ndarray:
    """Connected-component labels of a symmetric boolean adjacency matrix.

    Isolated vertices get label -1; labels are the least member index.
    """
    r = len(adj)
    labels = np.arange(r, dtype=np.int64)
    has_edge = adj.any(axis=1)
    big = np.int64(r + 1)
    cur = np.where(has_edge, labels, big)
    while True:
        neigh = np.where(adj, cur[None, :], big).min(axis=1)
        nxt = np.minimum(cur, neigh)
        if (nxt == cur).all():
            break
        cur = nxt
    out = np.where(has_edge, cur, -1)
    return out


def _matrix_mono(red: np.ndarray, blue: np.ndarray, names: np.ndarray, ambient_n: int, gamma: float, iterate: bool):
    """Mindeg peel then largest monochromatic component on adjacency matrices.

    Returns (colour code or 0, member bool mask over names, order).
    """
    active = np.ones(len(names), dtype=bool)
    threshold = (1 - 2 * gamma**0.5) * ambient_n
    while True:
        sub = (red | blue) & active[:, None] & active[None, :]
        deg = sub.sum(axis=1)
        drop = active & array_below(deg, threshold)
        if not drop.any():
            break
        active &= ~drop
        if not iterate:
            break
    best = None  # (order, colour_pref, least_name, mask)
    for code, adj in ((1, red), (2, blue)):
        a = adj & active[:, None] & active[None, :]
        labels = _components_labels(a)
        for lab in np.unique(labels):
            if lab < 0:
                continue
            mask = labels == lab
            order = int(mask.sum())
            least = int(names[mask].min())
            key = (-order, code, least)
            if best is None or key < best[0]:
                best = (key, code, mask, order)
    if best is None:
        return 0, np.zeros(len(names), dtype=bool), 0
    return best[1], best[2], best[3]


def mono_spanning_subgraph(F: ColouredKGraph, n: int, gamma: float, *, iterate: bool = False):
    """Largest monochromatic connected piece after one low-degree peel.

    Deletes ``W = {v : d_F(v) < (1 - 2 sqrt(gamma)) n}`` in a single pass
    (``iterate=True`` repeats until stable), then returns the
    maximum-order subgraph spanned by one monochromatic component, its
    colour, and its order.  Ties prefer red, then the least vertex.
    """
    if F.k != 2:
        raise ParameterError("mono_spanning_subgraph expects a 2-graph")
    verts, cols = F._ensure_arrays()
    if len(verts) == 0:
        return ColouredKGraph(2, F.n), None, 0
    names = np.unique(verts).astype(np.int64)
    pos = np.zeros(F.n, dtype=np.int64)
    pos[names] = np.arange(len(names))
    r = len(names)
    red = np.zeros((r, r), dtype=bool)
    blue = np.zeros((r, r), dtype=bool)
    for (a, b), c in zip(verts, cols):
        m = red if c == 1 else blue
        m[pos[a], pos[b]] = True
        m[pos[b], pos[a]] = True
    code, mask, order = _matrix_mono(red, blue, names, n, gamma, iterate)
    if code == 0:
        return ColouredKGraph(2, F.n), None, 0
    colour = Colour(code)
    member = set(int(v) for v in names[mask])
    edges = {
        tuple(int(v) for v in e): colour
        for e, c in zip(verts, cols)
        if c == code and int(e[0]) in member and int(e[1]) in member
    }
    return ColouredKGraph(2, F.n, edges), colour, order


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------


def _pair_edge_info(H: ColouredKGraph, base: tuple[int, ...], rest: np.ndarray):
    """Colour codes and row indices of ``base ∪ {x, y}`` over pairs from rest."""
    iu, ju, ranks = _ranking.pair_ranks_with_base(base, rest, H.n)
    if H._ensure_tables():
        return iu, ju, H._colour_table[ranks], H._row_table[ranks]
    codes = np.zeros(len(ranks), dtype=np.uint8)
    rows = np.full(len(ranks), -1, dtype=np.int64)
    lut = H._ensure_edge_row()
    for idx in range(len(iu)):
        e = tuple(sorted(base + (int(rest[iu[idx]]), int(rest[ju[idx]]))))
        row = lut.get(e, -1)
        rows[idx] = row
        if row >= 0:
            codes[idx] = int(H._cols[row])
    return iu, ju, codes, rows


def build_blueprint(H: ColouredKGraph, epsilon: float) -> Blueprint:
    """Construct the blueprint of a 2-edge-coloured k-graph (k >= 3).

    For every (k-2)-set with positive degree the link 2-graph is coloured
    by the host colours, the near-spanning monochromatic component fixes
    the candidate's colour, component and witness; the double-edge pivot
    per (k-3)-set then keeps the candidates unanimous in all k-2 of their
    decompositions.  Edges failing any filter are simply absent.
    """
    k, n = H.k, H.n
    if k < 3:
        raise ParameterError("blueprints need host uniformity k >= 3")
    kb = k - 2
    comps = tight_components(H)
    comp_idx = component_index(H)

    cand_sets = _ranking.all_combinations(n, kb)
    cand_ranks = _ranking.rank_rows(cand_sets, n) if len(cand_sets) else np.zeros(0, dtype=np.int64)
    # positive-degree filter
    deg = np.zeros(comb(n, kb), dtype=np.int64)
    verts, _ = H._ensure_arrays()
    for cols_idx in itertools.combinations(range(k), kb):
        deg += np.bincount(
            _ranking.column_subset_ranks(verts, cols_idx, n), minlength=comb(n, kb)
        )
    keep = deg[cand_ranks] > 0
    cand_sets = cand_sets[keep]

    all_vs = np.arange(n, dtype=np.int64)
    cand_colour: list[int] = []
    cand_induced: list[int] = []
    wit_bool = np.zeros((len(cand_sets), n), dtype=bool)
    cand_tuple: list[Edge] = []
    for ci, row in enumerate(cand_sets):
        e = tuple(int(v) for v in row)
        rest = all_vs[~np.isin(all_vs, row)]
        iu, ju, codes, rows = _pair_edge_info(H, e, rest)
        r = len(rest)
        red = np.zeros((r, r), dtype=bool)
        blue = np.zeros((r, r), dtype=bool)
        sel = codes == 1
        red[iu[sel], ju[sel]] = True
        sel = codes == 2
        blue[iu[sel], ju[sel]] = True
        red |= red.T
        blue |= blue.T
        # the link graph's degrees top out at n-k+1, so that is the honest
        # finite-n ambient for the peel threshold
        code, mask, order = _matrix_mono(red, blue, rest, len(rest) - 1, epsilon, False)
        if code == 0:
            cand_colour.append(0)
            cand_induced.append(-1)
            cand_tuple.append(e)
            continue
        # component id induced by {e ∪ f : f in K_e}; guaranteed unique
        # because consecutive K_e edges share k-1 host vertices
        inmask = mask[iu] & mask[ju] & (codes == code)
        ids = np.unique(comp_idx[rows[inmask]])
        if len(ids) != 1:
            raise RuntimeError(f"witness component of {e} spans {len(ids)} host components")
        cand_colour.append(code)
        cand_induced.append(int(ids[0]))
        wit_bool[ci, rest[mask]] = True
        cand_tuple.append(e)

    # gamma sets per (k-3)-set and colour via the double-edge pivot
    groups: dict[tuple[Edge, int], list[tuple[int, int]]] = {}
    for ci, e in enumerate(cand_tuple):
        code = cand_colour[ci]
        if code == 0:
            continue
        for y in e:
            S = tuple(v for v in e if v != y)
            groups.setdefault((S, code), []).append((y, ci))
    gamma_sets: dict[tuple[Edge, int], set[int]] = {}
    guard = 6 * epsilon**0.5 * n
    for key in sorted(groups):
        members = sorted(groups[key])
        if not more_than(len(members), guard):
            gamma_sets[key] = set()
            continue
        ys = np.asarray([y for y, _ in members], dtype=np.int64)
        cids = [ci for _, ci in members]
        M = wit_bool[cids][:, ys]  # M[a, b] = (y_b in witness(S ∪ y_a))
        doubles = M & M.T
        counts = doubles.sum(axis=1)
        a0 = int(np.argmax(counts))
        keep_mask = doubles[a0].copy()
        keep_mask[a0] = True
        gamma_sets[key] = {int(ys[i]) for i in np.flatnonzero(keep_mask)}

    edges: dict[Edge, Colour] = {}
    induced: dict[Edge, int] = {}
    witness_masks: dict[Edge, int] = {}
    for ci, e in enumerate(cand_tuple):
        code = cand_colour[ci]
        if code == 0:
            continue
        ok = all(
            y in gamma_sets.get((tuple(v for v in e if v != y), code), ())
            for y in e
        )
        if not ok:
            continue
        edges[e] = Colour(code)
        induced[e] = cand_induced[ci]
        witness_masks[e] = int(
            sum(1 << int(v) for v in np.flatnonzero(wit_bool[ci]))
        )
    graph = ColouredKGraph(kb, n, edges)
    return Blueprint(H, epsilon, graph, induced, witness_masks, comps)


# ---------------------------------------------------------------------------
# audits
# ---------------------------------------------------------------------------


def audit_bp2(bp: Blueprint) -> list[tuple[Edge, Edge]]:
    """Pairs of same-coloured blueprint edges sharing k-3 vertices whose
    induced components differ.  Empty list means BP2 holds exactly."""
    k = bp.host.k
    violations = []
    groups: dict[tuple[Edge, Colour], list[Edge]] = {}
    for e, c in bp.graph.edges.items():
        for y in e:
            S = tuple(v for v in e if v != y)
            groups.setdefault((S, c), []).append(e)
    for key in sorted(groups):
        members = sorted(groups[key])
        ids = {bp.induced[e] for e in members}
        if len(ids) > 1:
            base = members[0]
            for other in members[1:]:
                if bp.induced[other] != bp.induced[base]:
                    violations.append((base, other))
    if k == 3:
        # blueprint edges are singletons; any two same-coloured ones share
        # the empty (k-3)-set, which the vertex loop above cannot produce
        for c in Colour:
            members = sorted(e for e, cc in bp.graph.edges.items() if cc is c)
            ids = {bp.induced[e] for e in members}
            if len(ids) > 1:
                base = members[0]
                for other in members[1:]:
                    if bp.induced[other] != bp.induced[base]:
                        violations.append((base, other))
    return violations


def audit_bp1(bp: Blueprint) -> list[Edge]:
    """Blueprint edges whose witness fails soundness: a witness-component
    edge not inside the induced component, a colour mismatch, or a shadow
    degree below the witness order."""
    H = bp.host
    bad: list[Edge] = []
    for e, c in bp.graph.edges.items():
        comp = bp.component(e)
        if comp.colour is not c:
            bad.append(e)
            continue
        wit = bp.witness_vertices(e)
        witset = set(wit)
        ok = True
        for f in itertools.combinations(wit, 2):
            full = tuple(sorted(e + f))
            if len(set(full)) != H.k:
                continue
            col = H.colour_of(full)
            if col is c and full not in comp.edges:
                ok = False
                break
        # shadow degree of e must dominate the witness order
        sdeg = sum(
            1
            for v in range(H.n)
            if v not in e and bp.in_shadow(bp.induced[e], e + (v,))
        )
        if sdeg < len(wit):
            ok = False
        if not ok:
            bad.append(e)
    return bad


# ---------------------------------------------------------------------------
# derived graphs and searches
# ---------------------------------------------------------------------------


def plus_graph(bp: Blueprint, subgraph_edges: Iterable[Edge], colour: Colour) -> PlusGraph:
    """All k-edges of the induced components containing a subgraph edge."""
    colour = Colour(colour)
    edges = sorted(tuple(e) for e in subgraph_edges)
    H = bp.host
    kb = H.k - 2
    for e in edges:
        if e not in bp.induced:
            raise ParameterError(f"{e} is not a blueprint edge")
        if bp.graph.edges[e] is not colour:
            raise ParameterError(f"{e} does not have colour {colour.name}")
    if not edges:
        return PlusGraph(EdgeSubset(H, np.zeros(0, dtype=np.int64)), colour, ())
    comp_ids = tuple(sorted({bp.induced[e] for e in edges}))
    rows = np.unique(np.concatenate([bp.components[cid].edges.rows for cid in comp_ids]))
    flag = np.zeros(comb(H.n, kb), dtype=bool)
    flag[_ranking.rank_rows(np.asarray(edges, dtype=np.uint8).reshape(-1, kb), H.n)] = True
    verts = H._verts[rows]
    hit = np.zeros(len(rows), dtype=bool)
    for cols_idx in itertools.combinations(range(H.k), kb):
        hit |= flag[_ranking.column_subset_ranks(verts, cols_idx, H.n)]
    return PlusGraph(EdgeSubset(H, rows[hit]), colour, comp_ids)


def find_bridge(
    H: ColouredKGraph,
    bp: Blueprint,
    U: Iterable[int],
    S: Sequence[int],
    r_star: TightComponent,
    b_star: TightComponent,
):
    """Exhaustive search for the four-vertex bridge between two components.

    Scans ordered quadruples (x, x', y, y') from U in lexicographic order
    for: ``S∪xx'`` a blueprint edge inducing r_star, ``S∪yy'`` one inducing
    b_star, ``S∪xx'y`` in the shadow of r_star, ``S∪yy'x`` in the shadow of
    b_star, and ``S∪xx'yy'`` an edge of H.  Returns the first hit or None.
    """
    S = tuple(sorted(S))
    U = sorted(set(U))
    if len(S) != H.k - 4:
        raise ParameterError(f"bridge pivot set must have k-4={H.k - 4} vertices")
    if not set(S) <= set(U):
        raise ParameterError("bridge pivot set must lie inside U")
    pool = [v for v in U if v not in S]

    def bp_edge_in(vs, comp, colour):
        e = tuple(sorted(S + vs))
        return bp.induced.get(e) == comp.id and bp.graph.edges.get(e) is colour

    for x in pool:
        for xp in pool:
            if xp == x or not bp_edge_in((x, xp), r_star, Colour.RED):
                continue
            for y in pool:
                if y in (x, xp):
                    continue
                if not bp.in_shadow(r_star.id, S + (x, xp, y)):
                    continue
                for yp in pool:
                    if yp in (x, xp, y):
                        continue
                    if not bp_edge_in((y, yp), b_star, Colour.BLUE):
                        continue
                    if not bp.in_shadow(b_star.id, S + (y, yp, x)):
                        continue
                    if tuple(sorted(S + (x, xp, y, yp))) in H.edges:
                        return (x, xp, y, yp)
    return None


def shadow_pivot(
    H: ColouredKGraph,
    bp: Blueprint,
    T: Sequence[int],
    s_blue: Iterable[int],
    s_red: Iterable[int],
    *,
    reverse_colours: bool = False,
):
    """Pick y in s_blue maximising the set of x in s_red whose shadows meet.

    Returns ``(y, gamma)`` with ``gamma = {x : T∪xy in shadow(R(T∪x)) and
    T∪xy in shadow(B(T∪y))}`` computed exhaustively, or None when s_blue is
    empty.  Ties take the least y.  ``reverse_colours`` swaps the roles.
    """
    T = tuple(sorted(T))
    if len(T) != H.k - 3:
        raise ParameterError(f"pivot set must have k-3={H.k - 3} vertices")
    c_blue = Colour.RED if reverse_colours else Colour.BLUE
    c_red = c_blue.opposite()
    s_blue = sorted(set(s_blue))
    s_red = sorted(set(s_red))
    for side, colour in ((s_blue, c_blue), (s_red, c_red)):
        for v in side:
            e = tuple(sorted(T + (v,)))
            if bp.graph.edges.get(e) is not colour:
                raise ParameterError(f"{e} is not a {colour.name} blueprint edge")
    if not s_blue:
        return None
    best = None
    for y in s_blue:
        ey = tuple(sorted(T + (y,)))
        by = bp.induced[ey]
        gamma = []
        for x in s_red:
            if x == y:
                continue
            ex = tuple(sorted(T + (x,)))
            trip = tuple(sorted(T + (x, y)))
            if len(set(trip)) != H.k - 1:
                continue
            if bp.in_shadow(bp.induced[ex], trip) and bp.in_shadow(by, trip):
                gamma.append(x)
        if best is None or len(gamma) > len(best[1]):
            best = (y, gamma)
    return best[0], frozenset(best[1])


def reduce_components(
    H: ColouredKGraph,
    bp: Blueprint,
    r_edges: Iterable[Edge],
    U: Iterable[int],
    S: Sequence[int],
    delta: float,
    *,
    ambient: Optional[Iterable[Edge]] = None,
    reverse_colours: bool = False,
) -> ColouredKGraph:
    """Reduce the leftover link graph to edges inducing one component per colour.

    Given red blueprint edges ``r_edges`` all inducing one component R with
    no plus-edge inside U, returns a subgraph J of the link-at-S of the
    (ambient) blueprint restricted to U: its red side is kept whole, and
    its blue side is cut down, via the shadow-pivot digraph, to edges
    provably inducing a single blue component.  The posted same-component
    property is audited exactly before returning; a breach raises
    :class:`ReductionFailed` with a counterexample pair.
    """
    c_red = Colour.BLUE if reverse_colours else Colour.RED
    c_blue = c_red.opposite()
    S = tuple(sorted(S))
    if len(S) != H.k - 4:
        raise ParameterError(f"reduction pivot set must have k-4={H.k - 4} vertices")
    U = sorted(set(U) - set(S))
    r_edges = {tuple(e) for e in r_edges}
    ids = {bp.induced[e] for e in r_edges}
    if len(ids) > 1:
        raise ParameterError("r_edges must induce a single component")
    r_id = ids.pop() if ids else None
    amb = {tuple(e) for e in ambient} if ambient is not None else set(bp.induced)

    # precondition: the plus graph of r_edges has no edge inside U
    if r_edges:
        plus = plus_graph(bp, sorted(r_edges), c_red)
        uset = np.zeros(H.n, dtype=bool)
        uset[list(U)] = True
        pverts = plus.edges.vertex_matrix()
        if len(pverts) and bool(uset[pverts].all(axis=1).any()):
            raise ParameterError("plus graph of r_edges is nonempty inside U")

    # K = the S-link of the ambient blueprint restricted to U
    K: dict[tuple[int, int], Colour] = {}
    for x, y in itertools.combinations(U, 2):
        e = tuple(sorted(S + (x, y)))
        c = bp.graph.edges.get(e)
        if c is not None and e in amb:
            K[(x, y)] = c
    red_pairs = {p for p, c in K.items() if c is c_red}
    blue_pairs = {p for p, c in K.items() if c is c_blue}
    for p in sorted(red_pairs):
        if tuple(sorted(S + p)) not in r_edges:
            raise ParameterError(f"red link edge {p} lies outside r_edges")

    n = H.n
    j_edges: dict[tuple[int, int], Colour] = {p: c_red for p in red_pairs}
    if below(len(blue_pairs), 2 * delta**0.5 * n * n):
        # blue mass below the threshold: J keeps only the red side
        return ColouredKGraph(2, n, j_edges)

    bdeg = {v: 0 for v in U}
    for x, y in blue_pairs:
        bdeg[x] += 1
        bdeg[y] += 1
    X = sorted(v for v in U if at_least(bdeg[v], delta * n))
    xset = set(X)

    def blue_neigh(x):
        out = []
        for p in blue_pairs:
            if x in p:
                out.append(p[0] if p[1] == x else p[1])
        return sorted(out)

    # digraph on X: blue neighbours always; red neighbours x' when some
    # blue witness y puts S∪xx'y into both shadows
    out_neigh: dict[int, set[int]] = {x: set() for x in X}
    for x in X:
        bn = blue_neigh(x)
        for xp in X:
            if xp == x:
                continue
            pair = (min(x, xp), max(x, xp))
            if pair in blue_pairs:
                out_neigh[x].add(xp)
            elif pair in red_pairs:
                for y in bn:
                    if y in (x, xp):
                        continue
                    trip = tuple(sorted(S + (x, xp, y)))
                    if len(set(trip)) != H.k - 1:
                        continue
                    ey = tuple(sorted(S + (x, y)))
                    if bp.in_shadow(r_id, trip) and bp.in_shadow(bp.induced[ey], trip):
                        out_neigh[x].add(xp)
                        break
    doubles = {
        (x, xp)
        for x in X
        for xp in out_neigh[x]
        if x < xp and x in out_neigh[xp]
    }
    # mindeg peel of the double-edge graph, then its largest connected piece
    fdeg = {v: 0 for v in X}
    for x, xp in doubles:
        fdeg[x] += 1
        fdeg[xp] += 1
    thresh = (1 - 4 * delta**0.25) * len(X)
    live = {v for v in X if at_least(fdeg[v], thresh)}
    fadj = {v: set() for v in live}
    for x, xp in doubles:
        if x in live and xp in live:
            fadj[x].add(xp)
            fadj[xp].add(x)
    best_comp: set[int] = set()
    seen: set[int] = set()
    for v in sorted(live):
        if v in seen:
            continue
        stack, comp = [v], {v}
        while stack:
            u = stack.pop()
            for w in fadj[u]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        if len(comp) > len(best_comp):
            best_comp = comp
    for x, y in sorted(blue_pairs):
        if x in best_comp or y in best_comp:
            j_edges[(x, y)] = c_blue

    # exact audit of the posted property
    blue_ids = {}
    for p, c in sorted(j_edges.items()):
        if c is c_blue:
            blue_ids[p] = bp.induced[tuple(sorted(S + p))]
    distinct = sorted(set(blue_ids.values()))
    if len(distinct) > 1:
        first = next(p for p, i in blue_ids.items() if i == distinct[0])
        second = next(p for p, i in blue_ids.items() if i == distinct[1])
        raise ReductionFailed(
            "leftover blue edges induce more than one component",
            counterexample=(tuple(sorted(S + first)), tuple(sorted(S + second))),
        )
    return ColouredKGraph(2, n, j_edges)
