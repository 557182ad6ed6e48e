"""Seeded random-instance generation.

A :class:`RandomModel` fixes (n, k), the edge-absence probability, the red
probability, and a 64-bit seed; identical models produce identical graphs.
Two independent uniform streams of length C(n, k) are drawn in edge order
(lexicographic): the first decides presence, the second decides colour, so
the colouring of the surviving edges does not depend on which edges were
dropped.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from . import _ranking
from .errors import ParameterError
from .hypercore import ColouredKGraph


@dataclass(frozen=True)
class RandomModel:
    n: int
    k: int
    absent_prob: float = 0.0   # alpha': each k-set is present with prob 1 - alpha'
    red_prob: float = 0.5      # p: a present edge is red with prob p
    seed: int = 0

    def __post_init__(self):
        if not (0 <= self.absent_prob <= 1 and 0 <= self.red_prob <= 1):
            raise ParameterError("probabilities must lie in [0, 1]")
        if self.k < 1 or self.n < 0:
            raise ParameterError("need k >= 1 and n >= 0")


def random_colouring(model: RandomModel) -> ColouredKGraph:
    m = comb(model.n, model.k)
    rng = np.random.default_rng(np.uint64(model.seed & (2**64 - 1)))
    present_u = rng.random(m)
    colour_u = rng.random(m)
    present = present_u >= model.absent_prob
    colours = np.where(colour_u < model.red_prob, 1, 2).astype(np.uint8)
    verts = _ranking.all_combinations(model.n, model.k)
    return ColouredKGraph.from_arrays(
        model.k, model.n, verts[present], colours[present], presorted=True
    )


def random_path_cycle_instance(k: int, size: int, seed: int, structure: str = "cycle"):
    """A random tight path or cycle plus a bipartition with every edge
    meeting Y at least twice.

    Vertices 0..size-1 are arranged in a seeded random order; the windows
    of that order are the edges.  Y starts empty and greedily absorbs
    random window vertices until each window meets it twice.  Returns
    (structure, X, Y, edges).
    """
    if structure not in ("path", "cycle"):
        raise ParameterError(f"structure must be 'path' or 'cycle', got {structure!r}")
    if size < k:
        raise ParameterError(f"need at least k={k} vertices")
    rng = np.random.default_rng(np.uint64(seed & (2**64 - 1)))
    order = list(rng.permutation(size))
    count = size if structure == "cycle" else size - k + 1
    edges = []
    for i in range(count):
        edges.append(tuple(sorted(int(order[(i + j) % size]) for j in range(k))))
    ys: set[int] = set()
    for e in edges:
        need = 2 - sum(1 for v in e if v in ys)
        if need > 0:
            outside = [v for v in e if v not in ys]
            pick = rng.permutation(len(outside))[:need]
            ys.update(outside[i] for i in pick)
    xs = sorted(set(range(size)) - ys)
    return structure, xs, sorted(ys), edges
