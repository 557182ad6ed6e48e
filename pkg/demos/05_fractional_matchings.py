"""Constrained fractional matchings with a weight floor, exactly.

The optimum over supports inside s monochromatic tight components (or one
red plus one blue component), with every positive weight in [beta, 1], is
computed by branch and bound over an exact rational LP; the reference
support-enumeration oracle cross-checks it.
"""

from fractions import Fraction

from tightmatch import (
    Colour,
    ColouredKGraph,
    RandomModel,
    mu_any,
    mu_red_blue,
    random_colouring,
    support_enumeration_optimum,
    tight_components,
)
import itertools

# the classic: red-complete K_4^(3) supports 4/3 with weights 1/3
H = ColouredKGraph(3, 4, {e: Colour.RED for e in itertools.combinations(range(4), 3)})
res = mu_any(H, 1, Fraction(1, 3))
print(f"red K_4^(3), beta=1/3: weight {res.weight}")
print("assignment:", {e: str(w) for e, w in sorted(res.assignment.weights.items())})

G = random_colouring(RandomModel(n=6, k=3, seed=77))
for beta in (Fraction(1), Fraction(1, 2), Fraction(1, 3)):
    got = mu_red_blue(G, beta)
    comps = tight_components(G)
    best = Fraction(0)
    from tightmatch.fracmatch import _selections

    _, sels = _selections(G, "redblue")
    for sel in sels:
        pool = sorted({e for cid in sel for e in comps[cid].edges})
        best = max(best, support_enumeration_optimum(pool, beta, n=6, k=3))
    print(
        f"random K_6^(3), red-blue pair, beta={beta}: "
        f"branch-and-bound {got.weight} == oracle {best} "
        f"(components {got.components_used}, {got.nodes} nodes)"
    )
