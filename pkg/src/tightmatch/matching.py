"""Tightly connected matchings: greedy growth, the k=4 two-matching
pipeline, and the k=5 four-matching pipeline.

Both pipelines phase through the same arc: a blueprint names the principal
components, a greedy maximal matching fills them, the leftover is reduced
to few components, and local repairs (exchange moves for k=4, the starred
components and a dense leftover sweep for k=5) mop up what remains.  All
existential steps from the underlying proofs are realised as exhaustive
searches that either return witnesses or leave a trace reason; finite
instances that break an asymptotic hypothesis degrade to a smaller, still
verified, bundle instead of failing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _ranking
from .blueprint import Blueprint, build_blueprint, mono_spanning_subgraph, plus_graph, reduce_components
from .density import dense_subgraph
from .errors import ParameterError, ReductionFailed
from .hypercore import (
    Colour,
    ColouredKGraph,
    Edge,
    TightComponent,
    component_index,
    loose_components,
    tight_components,
)
from .numeric import at_least, more_than

EXCHANGE_WINDOW = 24  # leftover vertices scanned by phase-3 exchange moves


@dataclass(frozen=True)
class Matching:
    """Vertex-disjoint edges of one colour inside one tight component."""

    edges: frozenset[Edge]
    colour: Colour
    component: int

    @property
    def size(self) -> int:
        return len(self.edges)

    def vertices(self) -> frozenset[int]:
        return frozenset(v for e in self.edges for v in e)


@dataclass
class MatchingBundle:
    matchings: list[Matching]
    covered: frozenset[int]
    leftover: frozenset[int]

    @classmethod
    def build(cls, H: ColouredKGraph, matchings: Sequence[Matching]) -> "MatchingBundle":
        matchings = [m for m in matchings if m.size > 0]
        covered: set[int] = set()
        for m in matchings:
            covered |= m.vertices()
        return cls(list(matchings), frozenset(covered), frozenset(range(H.n)) - covered)

    @property
    def coverage(self) -> int:
        return len(self.covered)


@dataclass
class PipelineTrace:
    k: int
    components: dict = field(default_factory=dict)
    phases: list = field(default_factory=list)
    leftover_classes: dict = field(default_factory=dict)
    audits: dict = field(default_factory=dict)
    reason: str = ""

    def record(self, name: str, **info) -> None:
        self.phases.append({"phase": name, **info})

    def to_json_obj(self) -> dict:
        return {
            "k": self.k,
            "components": self.components,
            "phases": self.phases,
            "leftover_classes": self.leftover_classes,
            "audits": self.audits,
            "reason": self.reason,
        }


@dataclass(frozen=True)
class PipelineParams:
    """Defaults follow the hierarchy 1/n << epsilon << alpha << eta."""

    epsilon: float = 1e-4
    alpha: float = 1e-2
    eta: float = 0.1
    round_factor: int = 10  # phase-3 iteration cap is round_factor * n


@dataclass(frozen=True)
class Violation:
    kind: str       # disjointness | membership | colour | connectivity
    witness: tuple

    def __str__(self) -> str:
        return f"{self.kind}: {self.witness}"


# ---------------------------------------------------------------------------
# greedy matchings and verification
# ---------------------------------------------------------------------------


def _greedy_rows(H: ColouredKGraph, rows: np.ndarray, used: np.ndarray, inside: Optional[np.ndarray] = None) -> list[int]:
    """Lexicographic greedy matching over edge rows; mutates ``used``.

    ``rows`` must be ascending (lex edge order).  ``inside``, when given,
    restricts edges to that vertex mask.
    """
    if len(rows) == 0:
        return []
    verts = H._verts[rows]
    ok = ~used[verts].any(axis=1)
    if inside is not None:
        ok &= inside[verts].all(axis=1)
    picked: list[int] = []
    while ok.any():
        pos = int(np.argmax(ok))
        row = int(rows[pos])
        picked.append(row)
        used[verts[pos]] = True
        ok &= ~used[verts].any(axis=1)
    return picked


def greedy_component_matching(H: ColouredKGraph, component: TightComponent, forbidden: Iterable[int] = ()) -> Matching:
    """Maximal matching inside one component, scanning edges
    lexicographically and avoiding the forbidden vertices."""
    used = np.zeros(H.n, dtype=bool)
    for v in forbidden:
        used[int(v)] = True
    picked = _greedy_rows(H, component.edges.rows, used)
    edges = frozenset(tuple(int(v) for v in H._verts[r]) for r in picked)
    return Matching(edges, component.colour, component.id)


def verify_matching(H: ColouredKGraph, matching: Matching) -> Optional[Violation]:
    """First violation of the matching invariants, or None.

    Checks pairwise vertex-disjointness, presence and colour purity against
    H, and pairwise tight connectivity inside the claimed component (two
    edges are joined by a tight walk exactly when they share a maximal
    component, so component membership is the exact connectivity test).
    """
    seen: dict[int, Edge] = {}
    edges = sorted(matching.edges)
    for e in edges:
        for v in e:
            if v in seen:
                return Violation("disjointness", (seen[v], e, v))
            seen[v] = e
    for e in edges:
        c = H.colour_of(e)
        if c is None:
            return Violation("membership", (e,))
        if c is not matching.colour:
            return Violation("colour", (e, c.name))
    comp_of = component_index(H)
    comps = tight_components(H)
    if not 0 <= matching.component < len(comps):
        return Violation("connectivity", ("unknown component", matching.component))
    if comps[matching.component].colour is not matching.colour:
        return Violation("connectivity", ("component colour mismatch", matching.component))
    for e in edges:
        row = H._row_of(e)
        if int(comp_of[row]) != matching.component:
            return Violation("connectivity", (edges[0], e))
    return None


def verify_bundle(H: ColouredKGraph, bundle: MatchingBundle) -> Optional[Violation]:
    """Per-matching checks plus pairwise disjointness across matchings."""
    seen: dict[int, int] = {}
    for idx, m in enumerate(bundle.matchings):
        bad = verify_matching(H, m)
        if bad is not None:
            return bad
        for v in m.vertices():
            if v in seen:
                return Violation("disjointness", ("across matchings", seen[v], idx, v))
            seen[v] = idx
    return None


def _degrade(H: ColouredKGraph, matchings: Sequence[Matching]) -> MatchingBundle:
    """Largest verified prefix: drop invalid matchings and any later one
    colliding with an earlier keeper."""
    kept: list[Matching] = []
    taken: set[int] = set()
    for m in matchings:
        if verify_matching(H, m) is not None:
            continue
        vs = m.vertices()
        if vs & taken:
            continue
        kept.append(m)
        taken |= vs
    return MatchingBundle.build(H, kept)


# ---------------------------------------------------------------------------
# shared pipeline helpers
# ---------------------------------------------------------------------------


def _majority_induced(bp: Blueprint, edges: Iterable[Edge]) -> Optional[int]:
    counts: dict[int, int] = {}
    for e in edges:
        cid = bp.induced.get(tuple(e))
        if cid is not None:
            counts[cid] = counts.get(cid, 0) + 1
    if not counts:
        return None
    best = max(counts.items(), key=lambda kv: (kv[1], -kv[0]))
    return best[0]


def _rows_in_mask(H: ColouredKGraph, rows: np.ndarray, inside: np.ndarray) -> np.ndarray:
    if len(rows) == 0:
        return rows
    verts = H._verts[rows]
    return rows[inside[verts].all(axis=1)]


def _empty_bundle(H: ColouredKGraph, trace: PipelineTrace, reason: str):
    trace.reason = reason
    return MatchingBundle.build(H, []), trace


# ---------------------------------------------------------------------------
# k = 4 pipeline
# ---------------------------------------------------------------------------


def two_matchings_k4(H: ColouredKGraph, params: Optional[PipelineParams] = None):
    """Two vertex-disjoint monochromatic tightly connected matchings of
    distinct colours covering most vertices of a dense coloured 4-graph.

    Phases: blueprint construction and cleaning fix the primary component;
    a greedy maximal matching fills its plus graph; the leftover's link
    graph is reduced to a single secondary component; bounded local search
    applies the exchange moves (one secondary edge traded for up to three
    new edges); the final leftover is classified and matched inside the
    component its triples generate, merged into the secondary matching
    when the shadows meet.
    """
    if H.k != 4:
        raise ParameterError("two_matchings_k4 expects a 4-graph")
    params = params or PipelineParams()
    n = H.n
    trace = PipelineTrace(k=4)
    if H.edge_count == 0:
        return _empty_bundle(H, trace, "empty host")
    comps = tight_components(H)
    comp_of = component_index(H)
    bp = build_blueprint(H, params.epsilon)
    if bp.graph.edge_count == 0:
        return _empty_bundle(H, trace, "no blueprint edges")

    # phase 1: clean the blueprint, fix the primary component, fill it
    cleaned = dense_subgraph(bp.graph, params.alpha)
    if cleaned.edge_count == 0:
        cleaned = bp.graph
        trace.audits["blueprint_cleaning"] = "cascade emptied the blueprint; kept the raw one"
    comp_sub, c1, order = mono_spanning_subgraph(cleaned, n - 1, params.alpha)
    if c1 is None:
        return _empty_bundle(H, trace, "no monochromatic blueprint component")
    c2 = c1.opposite()
    v1 = sorted({v for e in comp_sub.edges for v in e})
    v1_mask = np.zeros(n, dtype=bool)
    v1_mask[v1] = True
    g1_edges = {
        e: c for e, c in cleaned.edges.items() if v1_mask[list(e)].all()
    }
    primary_edges = sorted(e for e, c in g1_edges.items() if c is c1)
    r_ids = {bp.induced[e] for e in primary_edges}
    r_id = _majority_induced(bp, primary_edges)
    trace.audits["primary_component_unique"] = len(r_ids) <= 1
    trace.components["primary"] = r_id
    trace.components["primary_colour"] = c1.name
    r_edges = [e for e in primary_edges if bp.induced[e] == r_id]
    r_plus = plus_graph(bp, r_edges, c1)

    used = np.zeros(n, dtype=bool)
    matched: dict[Edge, int] = {}
    for row in _greedy_rows(H, r_plus.edges.rows, used):
        e = tuple(int(v) for v in H._verts[row])
        matched[e] = r_id
    trace.record("primary_matching", size=len(matched), covered=int(used.sum()))

    # phase 2: reduce the leftover link graph, fix the secondary component
    u_vertices = [v for v in v1 if not used[v]]
    b_id: Optional[int] = None
    g_edges = dict(g1_edges)
    try:
        j_graph = reduce_components(
            H,
            bp,
            r_edges,
            u_vertices,
            (),
            params.alpha ** (1 / 3),
            ambient=g1_edges,
            reverse_colours=(c1 is Colour.BLUE),
        )
        j_secondary = [e for e, c in j_graph.edges.items() if c is c2]
        if j_secondary:
            b_id = _majority_induced(bp, j_secondary)
        # replace the leftover's secondary side by the reduced one
        uset = set(u_vertices)
        for e, c in list(g_edges.items()):
            if c is c2 and set(e) <= uset and e not in j_graph.edges:
                del g_edges[e]
    except (ReductionFailed, ParameterError) as exc:
        trace.audits["reduction"] = f"failed: {exc}"
        uset = set(u_vertices)
        sec_in_u = [e for e, c in g_edges.items() if c is c2 and set(e) <= uset]
        b_id = _majority_induced(bp, sec_in_u)
    trace.components["secondary"] = b_id
    trace.components["secondary_colour"] = c2.name

    # low-degree peel of the working blueprint graph
    gamma2 = params.alpha ** (1 / 14)
    degs: dict[int, int] = {}
    for e in g_edges:
        for v in e:
            degs[v] = degs.get(v, 0) + 1
    peel_bar = (1 - 2 * gamma2**0.5) * (n - 1)
    keep_v = {v for v in v1 if at_least(degs.get(v, 0), peel_bar)}
    g_edges = {e: c for e, c in g_edges.items() if set(e) <= keep_v}
    g_mask = np.zeros(n, dtype=bool)
    g_mask[sorted(keep_v)] = True

    def plus_rows(colour: Colour, want_id: Optional[int]) -> np.ndarray:
        sub = [e for e, c in g_edges.items() if c is colour and bp.induced[e] == want_id]
        if want_id is None or not sub:
            return np.zeros(0, dtype=np.int64)
        return plus_graph(bp, sub, colour).edges.rows

    # primary matching edges only need component membership, so the whole
    # primary component feeds the greedy step; secondary edges must carry a
    # blueprint pair (they live in the secondary plus graph)
    rows_c1 = comps[r_id].edges.rows if r_id is not None else np.zeros(0, dtype=np.int64)
    rows_c2 = plus_rows(c2, b_id)

    def saturate() -> int:
        free = g_mask & ~used
        added = 0
        for rows, cid in ((rows_c1, r_id), (rows_c2, b_id)):
            if cid is None:
                continue
            inside = _rows_in_mask(H, rows, free)
            for row in _greedy_rows(H, np.sort(inside), used):
                e = tuple(int(v) for v in H._verts[row])
                matched[e] = cid
                added += 1
        return added

    added = saturate()
    trace.record("secondary_extension", added=added, size=len(matched), covered=int(used.sum()))

    # phase 3: bounded local search with the exchange moves
    secondary_bp_pairs = {e for e, c in g_edges.items() if c is c2 and bp.induced[e] == b_id}
    shadow_r = bp.shadow_table(r_id)
    shadow_b = bp.shadow_table(b_id) if b_id is not None else None

    def in_comp(e: Edge, cid: Optional[int]) -> bool:
        if cid is None:
            return False
        row = H._row_of(e)
        return row >= 0 and int(comp_of[row]) == cid

    def candidate_edges(pool: list[int]) -> list[Edge]:
        out = []
        for quad in itertools.combinations(pool, 4):
            col = H.colour_of(quad)
            if col is c1 and in_comp(quad, r_id):
                pass
            elif col is c2 and in_comp(quad, b_id):
                pass
            else:
                continue
            if any(p in secondary_bp_pairs for p in itertools.combinations(quad, 2)):
                out.append(quad)
        return out

    def try_exchange() -> bool:
        w_now = sorted(v for v in range(n) if g_mask[v] and not used[v])[:EXCHANGE_WINDOW]
        for e_star in sorted(e for e, cid in matched.items() if cid == b_id):
            pool = sorted(set(e_star) | set(w_now))
            cands = candidate_edges(pool)
            for f1 in cands:
                for f2 in cands:
                    if f2 <= f1 or set(f1) & set(f2):
                        continue
                    # improvement: swap one secondary edge for two
                    del matched[e_star]
                    for v in e_star:
                        used[v] = False
                    for f in (f1, f2):
                        matched[f] = r_id if in_comp(f, r_id) else b_id
                        for v in f:
                            used[v] = True
                    _try_third_edge(e_star, f1, f2)
                    return True
            # same size, more primary: replace by any primary-component edge
            for f in itertools.combinations(pool, 4):
                if H.colour_of(f) is c1 and in_comp(f, r_id):
                    del matched[e_star]
                    for v in e_star:
                        used[v] = False
                    matched[f] = r_id
                    for v in f:
                        used[v] = True
                    return True
        return False

    def _try_third_edge(e_star: Edge, f1: Edge, f2: Edge) -> None:
        rest = [v for v in e_star if not used[v]]
        if len(rest) != 1:
            return
        v = rest[0]
        w_pool = [w for w in range(n) if g_mask[w] and not used[w] and w != v]
        for w in w_pool:
            if tuple(sorted((v, w))) not in secondary_bp_pairs:
                continue
            for wp in w_pool:
                if wp == w:
                    continue
                trip = tuple(sorted((v, w, wp)))
                t_rank = _ranking.rank_tuple(trip)
                if not shadow_r[t_rank] or shadow_b is None or not shadow_b[t_rank]:
                    continue
                for wpp in w_pool:
                    if wpp in (w, wp):
                        continue
                    f3 = tuple(sorted((v, w, wp, wpp)))
                    if f3 not in H.edges:
                        continue
                    cid = r_id if in_comp(f3, r_id) else (b_id if in_comp(f3, b_id) else None)
                    if cid is None:
                        continue
                    matched[f3] = cid
                    for x in f3:
                        used[x] = True
                    return

    rounds = 0
    cap = params.round_factor * n
    while rounds < cap:
        rounds += 1
        improved = try_exchange()
        added = saturate()
        if not improved and added == 0:
            break
    trace.record("local_search", rounds=rounds, size=len(matched), covered=int(used.sum()))

    # phase 4: classify the leftover, generate the late secondary component
    w_star = sorted(v for v in range(n) if g_mask[v] and not used[v])
    bar = 8 * params.epsilon**0.5 * n
    w_set = set(w_star)
    deg_c1 = {v: 0 for v in w_star}
    deg_c2 = {v: 0 for v in w_star}
    for e, c in g_edges.items():
        if set(e) <= w_set:
            d = deg_c1 if c is c1 else deg_c2
            for v in e:
                d[v] += 1
    w_primary = [v for v in w_star if not more_than(deg_c2[v], bar)]
    w_secondary = [v for v in w_star if v not in set(w_primary) and not more_than(deg_c1[v], bar)]
    trace.leftover_classes = {
        "primary_side": w_primary,
        "secondary_side": w_secondary,
        "unclassified": [v for v in w_star if v not in set(w_primary) | set(w_secondary)],
    }

    gen_counts: dict[int, int] = {}
    wp_set = set(w_primary)
    for x, y in itertools.combinations(sorted(wp_set), 2):
        if g_edges.get((x, y)) is not c1:
            continue
        for z in sorted(wp_set - {x, y}):
            trip = tuple(sorted((x, y, z)))
            if not shadow_r[_ranking.rank_tuple(trip)]:
                continue
            for w in sorted(wp_set - set(trip)):
                e = tuple(sorted(trip + (w,)))
                if H.colour_of(e) is c2:
                    row = H._row_of(e)
                    cid = int(comp_of[row])
                    gen_counts[cid] = gen_counts.get(cid, 0) + 1
    late_id: Optional[int] = None
    if gen_counts:
        late_id = max(gen_counts.items(), key=lambda kv: (kv[1], -kv[0]))[0]
    trace.components["late_secondary"] = late_id

    late_edges: dict[Edge, int] = {}
    if late_id is not None:
        free = np.zeros(n, dtype=bool)
        free[w_star] = True
        rows = _rows_in_mask(H, comps[late_id].edges.rows, free)
        for row in _greedy_rows(H, np.sort(rows), used):
            e = tuple(int(v) for v in H._verts[row])
            late_edges[e] = late_id
    trace.record("late_matching", size=len(late_edges), covered=int(used.sum()))

    # merge when the shadows meet (equivalently, the components coincide)
    merged = False
    if late_id is not None and b_id is not None:
        inter = bool((bp.shadow_table(b_id) & bp.shadow_table(late_id)).any())
        merged = inter
        trace.audits["secondary_shadows_meet"] = inter
    sec_edges = {e for e, cid in matched.items() if cid == b_id}
    if late_id is not None and b_id is not None and not merged:
        # keep the larger secondary matching, report the policy in the trace
        if len(late_edges) > len(sec_edges):
            for e in sec_edges:
                del matched[e]
            sec_edges = set()
            trace.audits["secondary_policy"] = "kept late matching (larger)"
        else:
            late_edges = {}
            trace.audits["secondary_policy"] = "kept pipeline matching (larger)"

    matchings = []
    prim_edges = {e for e, cid in matched.items() if cid == r_id}
    if prim_edges:
        matchings.append(Matching(frozenset(prim_edges), c1, r_id))
    final_secondary = sec_edges | set(late_edges)
    if final_secondary:
        # shadows meeting means the components coincide; otherwise exactly
        # one of the two secondary matchings survived above
        sec_comp = b_id if sec_edges else late_id
        matchings.append(Matching(frozenset(final_secondary), c2, sec_comp))
    bundle = MatchingBundle.build(H, matchings)
    bad = verify_bundle(H, bundle)
    if bad is not None:
        # degrade to the primary matching alone rather than fail
        trace.audits["verification"] = str(bad)
        bundle = MatchingBundle.build(
            H, [m for m in matchings if m.colour is c1]
        )
    trace.record("final", coverage=bundle.coverage, matchings=[m.size for m in bundle.matchings])
    return bundle, trace


# ---------------------------------------------------------------------------
# k = 5 pipeline
# ---------------------------------------------------------------------------


def _pair_shadow_table(n: int, triples: Iterable[Edge]) -> np.ndarray:
    table = np.zeros(comb(n, 2), dtype=bool)
    for t in triples:
        for p in itertools.combinations(t, 2):
            table[_ranking.rank_tuple(p)] = True
    return table


def four_matchings_k5(H: ColouredKGraph, params: Optional[PipelineParams] = None):
    """At most four vertex-disjoint monochromatic tightly connected
    matchings covering most vertices of a dense coloured 5-graph.

    Phase 1 builds the blueprint (a 3-graph), cleans it, and builds the
    blueprint of the blueprint (a 1-graph) to split the vertices into a
    red-leaning and a blue-leaning side with principal components R and B.
    Phase 2 fills (R ∪ B) on that side greedily.  Phase 3 reduces each
    leftover vertex's link, keeps the triples unanimous in all three of
    their decompositions, and elects starred components R*, B* (forced to
    satisfy R* = R or B* = B so at most three components carry the main
    matching), then extends the matching maximally.  Phase 4 sweeps the
    final leftover: its blueprint majority pins the minority colour, whose
    dense tightly connected core is matched greedily.
    """
    if H.k != 5:
        raise ParameterError("four_matchings_k5 expects a 5-graph")
    params = params or PipelineParams()
    n = H.n
    trace = PipelineTrace(k=5)
    if H.edge_count == 0:
        return _empty_bundle(H, trace, "empty host")
    comps = tight_components(H)
    comp_of = component_index(H)
    bp = build_blueprint(H, params.epsilon)
    if bp.graph.edge_count == 0:
        return _empty_bundle(H, trace, "no blueprint edges")

    # phase 1: clean the 3-graph blueprint, then blueprint it again
    cleaned = dense_subgraph(bp.graph, 4 * params.alpha)
    if cleaned.edge_count == 0:
        cleaned = bp.graph
        trace.audits["blueprint_cleaning"] = "cascade emptied the blueprint; kept the raw one"
    inner = build_blueprint(cleaned, params.alpha)
    v_red = sorted(v for (v,) in inner.graph.edges if inner.graph.edges[(v,)] is Colour.RED)
    v_blue = sorted(v for (v,) in inner.graph.edges if inner.graph.edges[(v,)] is Colour.BLUE)
    trace.audits["v_red"] = len(v_red)
    trace.audits["v_blue"] = len(v_blue)

    def principal(colour: Colour, singles: list[int]) -> Optional[int]:
        if not singles:
            return None
        # the inner blueprint's edges of one colour all induce one tight
        # component of the cleaned blueprint; its triples in turn induce
        # one tight component of the host
        inner_ids = {inner.induced[(v,)] for v in singles}
        trace.audits[f"inner_unique_{colour.name}"] = len(inner_ids) == 1
        triples: list[Edge] = []
        for cid in sorted(inner_ids):
            triples.extend(sorted(inner.components[cid].edges))
        return _majority_induced(bp, triples)

    r_id = principal(Colour.RED, v_red)
    b_id = principal(Colour.BLUE, v_blue)
    trace.components["R"] = r_id
    trace.components["B"] = b_id
    v_star = sorted(set(v_red) | set(v_blue))
    if not v_star:
        return _empty_bundle(H, trace, "inner blueprint empty")
    star_mask = np.zeros(n, dtype=bool)
    star_mask[v_star] = True

    def comp_rows(cid: Optional[int]) -> np.ndarray:
        return comps[cid].edges.rows if cid is not None else np.zeros(0, dtype=np.int64)

    used = np.zeros(n, dtype=bool)
    matched: dict[Edge, int] = {}

    def greedy_fill(ids: list[Optional[int]]) -> int:
        rows = np.unique(np.concatenate([comp_rows(cid) for cid in ids])) if any(
            cid is not None for cid in ids
        ) else np.zeros(0, dtype=np.int64)
        rows = _rows_in_mask(H, rows, star_mask)
        added = 0
        for row in _greedy_rows(H, rows, used):
            e = tuple(int(v) for v in H._verts[row])
            matched[e] = int(comp_of[row])
            added += 1
        return added

    greedy_fill([r_id, b_id])
    trace.record("principal_matching", size=len(matched), covered=int(used.sum()))

    # phase 3: per-vertex link reductions and the multiplicity-3 filter
    u_vertices = [v for v in v_star if not used[v]]
    uset = set(u_vertices)
    red_triples = [e for e, c in cleaned.edges.items() if c is Colour.RED and bp.induced.get(e) == r_id]
    blue_triples = [e for e, c in cleaned.edges.items() if c is Colour.BLUE and bp.induced.get(e) == b_id]
    shadow_r3 = _pair_shadow_table(n, red_triples)
    shadow_b3 = _pair_shadow_table(n, blue_triples)
    counts: dict[Edge, int] = {}
    reductions_failed = 0
    for u in u_vertices:
        redside = u in set(v_red)
        table = shadow_r3 if redside else shadow_b3
        base_edges = red_triples if redside else blue_triples
        u_star = [
            x
            for x in u_vertices
            if x != u and table[_ranking.rank_tuple(tuple(sorted((u, x))))]
        ]
        if len(u_star) < 2:
            continue
        try:
            j_u = reduce_components(
                H,
                bp,
                base_edges,
                u_star,
                (u,),
                params.alpha ** (1 / 37),
                ambient=cleaned.edges,
                reverse_colours=not redside,
            )
        except (ReductionFailed, ParameterError):
            reductions_failed += 1
            continue
        for pair in j_u.edges:
            trip = tuple(sorted((u,) + pair))
            counts[trip] = counts.get(trip, 0) + 1
    trace.audits["link_reductions_failed"] = reductions_failed
    survivors = sorted(t for t, c in counts.items() if c == 3)

    def elect(colour: Colour) -> tuple[Optional[int], int]:
        tally: dict[int, int] = {}
        for t in survivors:
            if cleaned.edges.get(t) is colour:
                cid = bp.induced.get(t)
                if cid is not None:
                    tally[cid] = tally.get(cid, 0) + 1
        if not tally:
            return None, 0
        cid, mass = max(tally.items(), key=lambda kv: (kv[1], -kv[0]))
        return cid, mass

    r_star, r_mass = elect(Colour.RED)
    b_star, b_mass = elect(Colour.BLUE)
    # loose-component audit: triples in one loose piece must agree
    audit_ok = True
    for colour in Colour:
        mine = [t for t in survivors if cleaned.edges.get(t) is colour]
        sub = ColouredKGraph(3, n, {t: colour for t in mine})
        for piece in loose_components(sub, colour):
            ids = {bp.induced[t] for t in piece}
            if len(ids) > 1:
                audit_ok = False
    trace.audits["loose_component_audit"] = audit_ok
    # at most three components may carry the main matching
    if r_star is not None and b_star is not None and r_star != r_id and b_star != b_id:
        if r_mass >= b_mass:
            b_star = b_id
            trace.audits["starred_forced"] = "B* := B"
        else:
            r_star = r_id
            trace.audits["starred_forced"] = "R* := R"
    trace.components["R_star"] = r_star
    trace.components["B_star"] = b_star

    greedy_fill([r_id, b_id, r_star, b_star])
    trace.record("starred_extension", size=len(matched), covered=int(used.sum()))

    # phase 4: sweep the final leftover in its majority's opposite colour
    w = sorted(v for v in v_star if not used[v])
    wset = set(w)
    late_edges: dict[Edge, int] = {}
    if len(w) >= 5:
        star_r_in_w = sum(
            1 for t in cleaned.edges
            if set(t) <= wset and cleaned.edges[t] is Colour.RED and bp.induced.get(t) == r_star
        )
        star_b_in_w = sum(
            1 for t in cleaned.edges
            if set(t) <= wset and cleaned.edges[t] is Colour.BLUE and bp.induced.get(t) == b_star
        )
        leftover_colour = Colour.BLUE if star_r_in_w >= star_b_in_w else Colour.RED
        trace.audits["leftover_majority"] = (star_r_in_w, star_b_in_w)
        w_mask = np.zeros(n, dtype=bool)
        w_mask[w] = True
        verts_all, cols_all = H._ensure_arrays()
        rows_w = np.flatnonzero(
            (cols_all == int(leftover_colour)) & w_mask[verts_all].all(axis=1)
        )
        if len(rows_w):
            hw = ColouredKGraph.from_arrays(
                5, n, verts_all[rows_w], cols_all[rows_w], presorted=True
            )
            defect = 1 - hw.edge_count / comb(len(w), 5)
            cleaned_w = dense_subgraph(hw, max(defect, params.alpha))
            if cleaned_w.edge_count == 0:
                cleaned_w = hw
            wcomps = tight_components(cleaned_w)
            best = max(wcomps, key=lambda c: (c.edge_count, -c.id))
            trace.audits["leftover_single_component"] = len(wcomps) == 1
            for row_local in _greedy_rows(cleaned_w, best.edges.rows, used):
                e = tuple(int(v) for v in cleaned_w._verts[row_local])
                late_edges[e] = int(comp_of[H._row_of(e)])
    trace.record("leftover_matching", size=len(late_edges), covered=int(used.sum()))

    groups: dict[int, set[Edge]] = {}
    for e, cid in itertools.chain(matched.items(), late_edges.items()):
        groups.setdefault(cid, set()).add(e)
    matchings = [
        Matching(frozenset(es), comps[cid].colour, cid)
        for cid, es in sorted(groups.items())
    ]
    bundle = MatchingBundle.build(H, matchings)
    bad = verify_bundle(H, bundle)
    if bad is not None:
        trace.audits["verification"] = str(bad)
        safe = [m for m in matchings if verify_matching(H, m) is None]
        bundle = MatchingBundle.build(H, safe)
    trace.record(
        "final",
        coverage=bundle.coverage,
        matchings=[m.size for m in bundle.matchings],
        components=len({m.component for m in bundle.matchings}),
    )
    return bundle, trace