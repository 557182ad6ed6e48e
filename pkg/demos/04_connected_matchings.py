"""The k=4 and k=5 connected-matching pipelines.

Each pipeline returns a bundle of vertex-disjoint monochromatic tightly
connected matchings plus a trace of its phases; every bundle re-verifies
before use.  On random colourings the coverage is typically perfect.
"""

from tightmatch import (
    RandomModel,
    four_matchings_k5,
    random_colouring,
    two_matchings_k4,
    verify_bundle,
)

H = random_colouring(RandomModel(n=40, k=4, seed=11))
bundle, trace = two_matchings_k4(H)
print(f"K_40^(4), p=1/2: covered {bundle.coverage}/40")
for m in bundle.matchings:
    print(f"  {m.colour.name} matching of {m.size} edges in component {m.component}")
print(f"re-verification: {verify_bundle(H, bundle)}")
print("phases:", [(p["phase"], p.get("covered", p.get("coverage"))) for p in trace.phases])

H5 = random_colouring(RandomModel(n=30, k=5, seed=5))
bundle5, trace5 = four_matchings_k5(H5)
print(f"\nK_30^(5), p=1/2: covered {bundle5.coverage}/30")
for m in bundle5.matchings:
    print(f"  {m.colour.name} matching of {m.size} edges in component {m.component}")
print(f"components named by the pipeline: {trace5.components}")
print(f"re-verification: {verify_bundle(H5, bundle5)}")
