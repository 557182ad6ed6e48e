"""The extremal colouring and the partition decision procedure.

The X/Y/z colouring of the complete k-graph on k(m+1)+1 vertices admits no
partition into a red and a blue tight cycle; the verifier proves this by
exhausting vertex bipartitions under sound component and counting prunes.
Degenerate cycles (any set of fewer than k vertices, or a single edge) are
allowed, so small complete monochromatic hosts do partition.
"""

from tightmatch import (
    Colour,
    ColouredKGraph,
    delete_vertices,
    extremal_colouring,
    extremal_structure,
    tight_components,
    verify_two_cycle_partition,
)
import itertools

# a partitionable warm-up: an all-red host splits into a red Hamilton
# cycle and an empty (wildcard) blue side
small = ColouredKGraph(3, 7, {e: Colour.RED for e in itertools.combinations(range(7), 3)})
cert = verify_two_cycle_partition(small)
print(f"all-red K_7^(3): {cert.verdict}; red {cert.red.order}, blue {cert.blue.order}")

st = extremal_structure(3, 4)
H = extremal_colouring(3, 4)
print(f"\nextremal host: n={st.n}, |X|={st.x_size}, |Y|={st.y_size}, z={st.z}")

Hz = delete_vertices(H, [st.z])
print("components of H - z (the B1/B2/R decomposition):")
for comp in tight_components(Hz):
    print(f"  {comp}")

cert = verify_two_cycle_partition(H)
print(f"\npartition verdict: {cert.verdict}")
print(
    "search statistics: %d candidate bipartitions, %d support prunes, "
    "%d inequality prunes, %d cycle searches"
    % (
        cert.stats.get("candidates", 0),
        cert.stats.get("support_prunes", 0),
        cert.stats.get("inequality_prunes", 0),
        cert.stats.get("cycle_searches", 0),
    )
)
