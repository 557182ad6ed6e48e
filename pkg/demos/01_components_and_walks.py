"""Coloured k-graphs, tight components, and tight walks.

The core objects: a k-uniform hypergraph on labelled vertices whose edges
carry one of two colours.  Components group edges reachable through tight
walks (consecutive edges overlapping in k-1 vertices); loose components
only require a shared vertex.
"""

from tightmatch import (
    Colour,
    ColouredKGraph,
    loose_components,
    shadow,
    tight_components,
    tight_walk,
)

# A small 3-graph, built by hand: a red tight path, a detached red edge,
# and one blue edge overlapping the path.
H = ColouredKGraph(
    3,
    8,
    {
        (0, 1, 2): Colour.RED,
        (1, 2, 3): Colour.RED,
        (2, 3, 4): Colour.RED,
        (5, 6, 7): Colour.RED,
        (3, 4, 5): Colour.BLUE,
    },
)
print(H)

print("\nTight components (colour-pure, ids by least edge):")
for comp in tight_components(H):
    print(f"  {comp}: {sorted(comp.edges)}")

print("\nLoose components of the red class:")
for piece in loose_components(H, Colour.RED):
    print(f"  {sorted(piece)}")

walk = tight_walk(H, (0, 1, 2), (2, 3, 4))
print(f"\nA tight walk joining the path's ends: {walk}")
print(f"Detached edge reachable? {tight_walk(H, (0, 1, 2), (5, 6, 7))}")

print(f"\n1-shadow of H has {len(shadow(H, 1))} pairs: {sorted(shadow(H, 1))[:6]} ...")
