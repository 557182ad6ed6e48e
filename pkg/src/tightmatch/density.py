"""The (mu, alpha)-density predicate, its consequences, and the
dense-subgraph extraction cascade.

A k-graph H on n vertices is (mu, alpha)-dense when, for each level
``i in [k-1]``, the i-sets S with ``d_H(S) < mu * C(n, k-i)`` number at most
``alpha * C(n, i)`` and every such set has degree exactly 0.  Sets with a
small positive degree ("exceptional" below) therefore break the predicate
on their own.

All degree evaluations are exact enumerations over every i-set; thresholds
follow the package-wide comparison rule in :mod:`tightmatch.numeric`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Optional, Union

import numpy as np

from . import _ranking
from .errors import ContractError
from .hypercore import ColouredKGraph, Edge, tight_components
from .numeric import array_at_least, array_below, at_least, more_than

Scalar = Union[int, float, Fraction]


@dataclass(frozen=True)
class DensityParams:
    """Density parameters.  The natural range is [0, 1] for both, but the
    derived paper parameters can leave it at desk scale: mu <= 0 makes the
    predicate vacuous (flagged in the report) and alpha >= 1 makes the
    count budget trivial."""

    mu: Scalar
    alpha: Scalar

    def __post_init__(self):
        if not (0 <= self.alpha and self.mu <= 1):
            raise ContractError("density parameters must satisfy mu <= 1 and alpha >= 0")


@dataclass
class LevelReport:
    """Exact audit of one level i of the density definition."""

    i: int
    threshold: Scalar            # mu * C(n, k-i)
    allowed: Scalar              # alpha * C(n, i)
    below_count: int             # sets with d(S) < threshold (zero-degree included)
    exceptional: list[Edge]      # sets with 0 < d(S) < threshold
    count_ok: bool
    zero_ok: bool

    @property
    def passed(self) -> bool:
        return self.count_ok and self.zero_ok


@dataclass
class DensityReport:
    dense: bool
    vacuous: bool                # mu <= 0 makes the first clause trivial
    params: DensityParams
    levels: list[LevelReport] = field(default_factory=list)


def _level_degrees(H: ColouredKGraph, i: int) -> np.ndarray:
    """Degree of every i-set, indexed by colex rank."""
    total = comb(H.n, i)
    verts, _ = H._ensure_arrays()
    deg = np.zeros(total, dtype=np.int64)
    for cols in itertools.combinations(range(H.k), i):
        ranks = _ranking.column_subset_ranks(verts, cols, H.n)
        deg += np.bincount(ranks, minlength=total)
    return deg


def _decode_sets(rank_flags: np.ndarray, n: int, i: int) -> list[Edge]:
    rows = _ranking.all_combinations(n, i)
    ranks = _ranking.rank_rows(rows, n) if len(rows) else np.zeros(0, dtype=np.int64)
    order = np.empty(comb(n, i), dtype=np.int64)
    order[ranks] = np.arange(len(rows))
    out = []
    for r in np.flatnonzero(rank_flags):
        out.append(tuple(int(v) for v in rows[order[r]]))
    return sorted(out)


def is_dense(H: ColouredKGraph, params: DensityParams) -> DensityReport:
    """Exact evaluation of the (mu, alpha)-density predicate."""
    mu, alpha = params.mu, params.alpha
    vacuous = mu <= 0
    levels: list[LevelReport] = []
    dense = True
    for i in range(1, H.k):
        deg = _level_degrees(H, i)
        threshold = mu * comb(H.n, H.k - i)
        allowed = alpha * comb(H.n, i)
        if vacuous:
            below = np.zeros(len(deg), dtype=bool)
        else:
            below = array_below(deg, threshold)
        below_count = int(below.sum())
        exceptional_flags = below & (deg > 0)
        exceptional = _decode_sets(exceptional_flags, H.n, i)
        count_ok = not more_than(below_count, allowed)
        zero_ok = not exceptional
        levels.append(LevelReport(i, threshold, allowed, below_count, exceptional, count_ok, zero_ok))
        dense = dense and count_ok and zero_ok
    return DensityReport(dense, vacuous, params, levels)


@dataclass
class CascadeReport:
    """Trace of the dense-subgraph extraction cascade."""

    alpha: Scalar
    beta: float                          # alpha ** (1 / 2k)
    precondition_ok: bool                # |H| >= (1 - alpha) C(n, k)
    warning: Optional[str]
    bad: dict[int, list[Edge]]           # bad i-sets (positive degree below the bar)
    cascade: dict[int, list[Edge]]       # the accumulated sets A_i
    removed_per_level: dict[int, int]    # |F_j|
    removed_total: int
    paper_mu: float                      # 1 - 2 alpha^(1/4k^2)
    paper_alpha: float                   # 2 alpha^(1/4k^2)
    result: ColouredKGraph = None


def dense_subgraph(H: ColouredKGraph, alpha: Scalar) -> ColouredKGraph:
    """Best-effort dense spanning subgraph via the bad-set cascade."""
    return cascade_clean(H, alpha).result


def cascade_clean(H: ColouredKGraph, alpha: Scalar) -> CascadeReport:
    """Run the extraction cascade and report every intermediate set.

    Bad means a positive degree below ``(1 - alpha^(1/2)) * C(n, k - |S|)``;
    zero-degree sets are tolerated by the second density clause and never
    seed the cascade (they contribute no edges to the deleted sets anyway).
    The cascade closes each level downward: a (j-1)-set joins when it lies
    in at least ``beta^(1/2) * n`` members of level j.  The result drops all
    edges containing a cascade set, keeping colours and the vertex set.
    """
    k, n = H.k, H.n
    af = float(alpha)
    beta = af ** (1.0 / (2 * k)) if af > 0 else 0.0
    pre_ok = at_least(H.edge_count, (1 - af) * comb(n, k))
    warning = None if pre_ok else (
        f"|H|={H.edge_count} below (1-alpha)*C({n},{k}); cascade proceeds best-effort"
    )
    verts, cols = H._ensure_arrays()
    bad_threshold = {i: (1 - af**0.5) * comb(n, k - i) for i in range(1, k)}
    grow_threshold = beta**0.5 * n

    bad_sets: dict[int, list[Edge]] = {}
    cascade_sets: dict[int, list[Edge]] = {}
    a_flags: dict[int, np.ndarray] = {}
    for i in range(k - 1, 0, -1):
        deg = _level_degrees(H, i)
        bad = (deg > 0) & array_below(deg, bad_threshold[i])
        bad_sets[i] = _decode_sets(bad, n, i)
        flags = bad.copy()
        if i + 1 in a_flags:
            # d_{A_{i+1}}(X) for each i-set X
            upper = _ranking.all_combinations(n, i + 1)
            up_ranks = _ranking.rank_rows(upper, n) if len(upper) else np.zeros(0, dtype=np.int64)
            member = a_flags[i + 1][up_ranks]
            sub_count = np.zeros(comb(n, i), dtype=np.int64)
            sel = upper[member]
            for cols_idx in itertools.combinations(range(i + 1), i):
                ranks = _ranking.column_subset_ranks(sel, cols_idx, n)
                sub_count += np.bincount(ranks, minlength=comb(n, i))
            flags |= array_at_least(sub_count, grow_threshold)
        a_flags[i] = flags
        cascade_sets[i] = _decode_sets(flags, n, i)
        assert set(bad_sets[i]) <= set(cascade_sets[i])

    removed = np.zeros(len(verts), dtype=bool)
    removed_per_level: dict[int, int] = {}
    for j in range(1, k):
        hit = np.zeros(len(verts), dtype=bool)
        if a_flags[j].any() and len(verts):
            for cols_idx in itertools.combinations(range(k), j):
                ranks = _ranking.column_subset_ranks(verts, cols_idx, n)
                hit |= a_flags[j][ranks]
        removed_per_level[j] = int(hit.sum())
        removed |= hit
    keep = ~removed
    result = ColouredKGraph.from_arrays(k, n, verts[keep], cols[keep], presorted=True)
    expo = 1.0 / (4 * k * k)
    return CascadeReport(
        alpha=alpha,
        beta=beta,
        precondition_ok=pre_ok,
        warning=warning,
        bad=bad_sets,
        cascade=cascade_sets,
        removed_per_level=removed_per_level,
        removed_total=int(removed.sum()),
        paper_mu=1 - 2 * af**expo,
        paper_alpha=2 * af**expo,
        result=result,
    )


@dataclass
class ConsequencesReport:
    edge_bound: Fraction
    edge_bound_ok: bool
    connectivity_checked: bool
    component_count: Optional[int]
    connected_ok: Optional[bool]

    @property
    def ok(self) -> bool:
        return self.edge_bound_ok and (self.connected_ok is not False)


def assert_dense_consequences(H: ColouredKGraph, params: DensityParams) -> ConsequencesReport:
    """Check the guaranteed consequences of density on a dense graph.

    Requires ``is_dense(H, params).dense``; verifies the exact edge bound
    ``|H| >= (mu - alpha) * C(n, k)`` in rational arithmetic and, when
    mu > 1/2, that the uncoloured view forms a single tight component.
    """
    report = is_dense(H, params)
    if not report.dense:
        raise ContractError("assert_dense_consequences requires an is_dense-passing graph")
    mu = Fraction(params.mu)
    alpha = Fraction(params.alpha)
    bound = (mu - alpha) * comb(H.n, H.k)
    edge_ok = Fraction(H.edge_count) >= bound
    if mu > Fraction(1, 2):
        comps = tight_components(H, coloured=False)
        count = len(comps)
        connected_ok = count <= 1
        return ConsequencesReport(bound, edge_ok, True, count, connected_ok)
    return ConsequencesReport(bound, edge_ok, False, None, None)
