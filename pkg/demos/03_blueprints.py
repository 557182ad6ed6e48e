"""Blueprints: a (k-2)-graph pointing at tight components of the host.

Each blueprint edge e is coloured by the near-spanning monochromatic
component of the host's link at e and designates the tight component its
witness generates (BP1); same-coloured edges sharing k-3 vertices must
agree (BP2).  The parity host shows why blueprints cannot see everything:
its blueprint is the parity (k-2)-graph with colours swapped, so the red
component living inside A is never designated.
"""

import itertools

from tightmatch import (
    Colour,
    audit_bp1,
    audit_bp2,
    build_blueprint,
    parity_colouring,
    plus_graph,
    tight_components,
)

a, b = 12, 4
H = parity_colouring(4, a, b)
print(f"parity host K^(4)(A,B) with |A|={a}, |B|={b}: {H.edge_count} edges")

bp = build_blueprint(H, 1e-4)
print(f"blueprint has {bp.graph.edge_count} pairs; BP2 violations: {len(audit_bp2(bp))}")
print(f"BP1 witness soundness violations: {len(audit_bp1(bp))}")

swapped = all(
    c is (Colour.RED if sum(1 for v in e if v < a) % 2 == 0 else Colour.BLUE).opposite()
    for e, c in bp.graph.edges.items()
)
print(f"blueprint equals the parity pair-graph with colours swapped: {swapped}")

inside = frozenset(itertools.combinations(range(a), 4))
inside_id = next(c.id for c in tight_components(H) if frozenset(c.edges) == inside)
print(
    f"inside-A red component (id {inside_id}) designated by any blueprint edge: "
    f"{any(cid == inside_id for cid in bp.induced.values())}"
)

some_red = sorted(e for e, c in bp.graph.edges.items() if c is Colour.RED)[:3]
pg = plus_graph(bp, some_red, Colour.RED)
print(f"plus graph of {len(some_red)} red blueprint edges: {len(pg)} host edges")
