"""Exact maximum-weight fractional matchings constrained to few components.

The weight of interest is the largest total of a fractional matching whose
support lies in s monochromatic tight components (or in one red plus one
blue component) and whose positive weights all clear a floor beta; the
floor makes the problem non-convex, so each component selection is solved
by branch and bound on edge supports over an exact rational LP relaxation
(every accepted value is certified in rational arithmetic).

A slow-but-sure reference, :func:`support_enumeration_optimum`, exhausts
the admissible supports directly and exists so the branch-and-bound answer
can be checked independently.  Because a support's value depends only on
the support itself, the reference enumerates against a precomputed table
of every degree-feasible support of the complete (n, k) host; the table is
shared across instances but never consulted by the branch and bound.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from . import _ranking
from ._simplex import solve_box_lp_fast
from .errors import ParameterError
from .hypercore import Colour, ColouredKGraph, Edge, TightComponent, tight_components

Mode = Union[tuple, str]

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class FractionalMatching:
    """Nonnegative rational edge weights with unit vertex load."""

    weights: dict[Edge, Fraction]

    @property
    def weight(self) -> Fraction:
        return sum(self.weights.values(), _ZERO)

    def vertex_loads(self) -> dict[int, Fraction]:
        loads: dict[int, Fraction] = {}
        for e, w in self.weights.items():
            for v in e:
                loads[v] = loads.get(v, _ZERO) + w
        return loads

    def check_feasible(self, beta: Fraction) -> bool:
        if any(w <= 0 for w in self.weights.values()):
            return False
        if any(w < beta or w > 1 for w in self.weights.values()):
            return False
        return all(load <= 1 for load in self.vertex_loads().values())


@dataclass
class MuResult:
    weight: Fraction
    assignment: FractionalMatching
    components_used: tuple[int, ...]
    optimality: str          # "exact" | "lower_bound"
    nodes: int = 0


def _greedy_matching(edges: Sequence[Edge]) -> list[int]:
    """Indices of a lexicographic greedy integral matching."""
    used: set[int] = set()
    picked = []
    for idx, e in enumerate(edges):
        if not used.intersection(e):
            picked.append(idx)
            used.update(e)
    return picked


class _SelectionProblem:
    """One component selection: its edge pool and LP scaffolding."""

    def __init__(self, edges: Sequence[Edge], beta: Fraction):
        self.edges = list(edges)
        self.beta = beta
        self.verts = sorted({v for e in edges for v in e})
        vpos = {v: i for i, v in enumerate(self.verts)}
        self.cols: list[list[int]] = []  # vertex-row indices per edge
        for e in edges:
            self.cols.append([vpos[v] for v in e])
        self._value_memo: dict[frozenset, Optional[Fraction]] = {}

    def lp(self, floored: Iterable[int] = (), zero: Iterable[int] = ()):
        """Exact LP over the non-zeroed columns; returns (value, x-full)."""
        floored, zero = set(floored), set(zero)
        active = [j for j in range(len(self.edges)) if j not in zero]
        if not active:
            return _ZERO, [_ZERO] * len(self.edges)
        rows: list[list[int]] = [[] for _ in self.verts]
        for aj, j in enumerate(active):
            for i in self.cols[j]:
                rows[i].append(aj)
        lower = [self.beta if active[aj] in floored else _ZERO for aj in range(len(active))]
        upper = [_ONE] * len(active)
        c = [_ONE] * len(active)
        sol = solve_box_lp_fast(c, rows, [_ONE] * len(self.verts), lower, upper)
        if sol is None:
            return None
        val, x = sol
        full = [_ZERO] * len(self.edges)
        for aj, j in enumerate(active):
            full[j] = x[aj]
        return val, full

    def support_value(self, support: frozenset) -> Optional[Fraction]:
        """Optimum with support inside ``support``, all of it floored."""
        if support not in self._value_memo:
            zero = [j for j in range(len(self.edges)) if j not in support]
            sol = self.lp(floored=sorted(support), zero=zero)
            self._value_memo[support] = None if sol is None else sol[0]
        return self._value_memo[support]

    def branch_and_bound(self, node_budget: int):
        """Exact semicontinuous optimum by branching on sub-floor weights.

        Every node solves the LP relaxation with the accumulated floors and
        exclusions; its rounded support seeds the incumbent, the first
        lexicographic sub-floor weight branches, and the search closes as
        soon as the incumbent meets the root bound.
        """
        beta = self.beta
        m = len(self.edges)
        best_val = _ZERO
        best_x: list[Fraction] = [_ZERO] * m
        greedy = _greedy_matching(self.edges)
        if greedy:
            best_val = Fraction(len(greedy))
            gset = set(greedy)
            best_x = [_ONE if j in gset else _ZERO for j in range(m)]
        nodes = 0
        closed = True
        root_val: Optional[Fraction] = None
        stack: list[tuple[frozenset, frozenset]] = [(frozenset(), frozenset())]
        while stack:
            if nodes >= node_budget:
                closed = False
                break
            floored, zero = stack.pop()
            nodes += 1
            if zero:
                # the value at this node is capped by covered-vertices / k
                covered = {v for j, e in enumerate(self.edges) if j not in zero for v in e}
                if Fraction(len(covered), len(self.edges[0])) <= best_val:
                    continue
            sol = self.lp(floored, zero)
            if sol is None:
                continue
            val, x = sol
            if root_val is None:
                root_val = val
            if val <= best_val:
                continue
            support = frozenset(j for j in range(m) if x[j] >= beta)
            if support:
                rounded = self.support_value(support)
                if rounded is not None and rounded > best_val:
                    best_val = rounded
                    best_x = [_ZERO] * m
                    zero_r = [j for j in range(m) if j not in support]
                    _, xr = self.lp(floored=sorted(support), zero=zero_r)
                    best_x = xr
            if best_val >= root_val:
                break  # incumbent met the global bound
            branch_j = -1
            for j in range(m):
                if j in floored or j in zero:
                    continue
                if _ZERO < x[j] < beta:
                    branch_j = j
                    break
            if branch_j < 0:
                if val > best_val:
                    best_val, best_x = val, x
                continue
            # floored child explored first to lift the incumbent early
            stack.append((floored, zero | {branch_j}))
            stack.append((floored | {branch_j}, zero))
        weights = {self.edges[j]: best_x[j] for j in range(m) if best_x[j] > 0}
        return best_val, FractionalMatching(weights), nodes, closed


# identical edge pools recur across modes (a red-blue pair and an any-2
# selection often cover the same union); the optimum is a pure function of
# (pool, beta), so memoising it is observationally transparent
_pool_memo: dict = {}
_POOL_MEMO_CAP = 4096


def _selections(H: ColouredKGraph, mode: Mode) -> tuple[list[TightComponent], list[tuple[int, ...]]]:
    comps = tight_components(H)
    if isinstance(mode, tuple) and len(mode) == 2 and mode[0] == "any":
        s = int(mode[1])
        if s < 1:
            raise ParameterError("component budget s must be >= 1")
        if not comps:
            return comps, []
        size = min(s, len(comps))
        return comps, list(itertools.combinations(range(len(comps)), size))
    if mode == "redblue":
        reds = [c.id for c in comps if c.colour is Colour.RED]
        blues = [c.id for c in comps if c.colour is Colour.BLUE]
        if reds and blues:
            return comps, [(r, b) for r in reds for b in blues]
        singles = reds or blues
        return comps, [(cid,) for cid in singles]
    raise ParameterError(f"unknown mode {mode!r}; use ('any', s) or 'redblue'")


def max_constrained_fractional_matching(
    H: ColouredKGraph,
    mode: Mode,
    beta: Union[Fraction, int, str],
    *,
    node_budget: int = 10**6,
) -> MuResult:
    """Best fractional matching over all admissible component selections.

    ``mode`` is ``("any", s)`` for supports inside s monochromatic tight
    components or ``"redblue"`` for one red plus one blue component.  Every
    positive weight must lie in [beta, 1]; all arithmetic is exact.  Ties
    between selections go to the lexicographically least component-id
    tuple.  ``optimality`` degrades to "lower_bound" if any selection's
    branch and bound hits the node budget.
    """
    beta = Fraction(beta)
    if not 0 < beta <= 1:
        raise ParameterError("beta must lie in (0, 1]")
    comps, sels = _selections(H, mode)
    best: Optional[MuResult] = None
    total_nodes = 0
    all_closed = True
    for sel in sels:
        pool = sorted({e for cid in sel for e in comps[cid].edges})
        key = (tuple(pool), beta, node_budget)
        cached = _pool_memo.get(key)
        if cached is None:
            prob = _SelectionProblem(pool, beta)
            cached = prob.branch_and_bound(node_budget)
            if len(_pool_memo) >= _POOL_MEMO_CAP:
                _pool_memo.clear()
            _pool_memo[key] = cached
        val, assignment, nodes, closed = cached
        total_nodes += nodes
        all_closed &= closed
        if best is None or val > best.weight or (
            val == best.weight and tuple(sel) < best.components_used
        ):
            best = MuResult(val, assignment, tuple(sel), "exact", nodes)
    if best is None:
        best = MuResult(_ZERO, FractionalMatching({}), (), "exact", 0)
    best.nodes = total_nodes
    best.optimality = "exact" if all_closed else "lower_bound"
    return best


def mu_any(H: ColouredKGraph, s: int, beta, **kw) -> MuResult:
    return max_constrained_fractional_matching(H, ("any", s), beta, **kw)


def mu_red_blue(H: ColouredKGraph, beta, **kw) -> MuResult:
    return max_constrained_fractional_matching(H, "redblue", beta, **kw)


# ---------------------------------------------------------------------------
# reference oracle
# ---------------------------------------------------------------------------


class SupportTable:
    """Every degree-feasible support of the complete (n, k) host, valued.

    A support is admissible when each vertex lies in at most floor(1/beta)
    of its edges (anything else cannot carry the floor).  Values are exact;
    a float copy exists only to vectorise the scan, and candidates within a
    guard band of the float maximum are re-compared exactly.
    """

    def __init__(self, n: int, k: int, beta: Fraction):
        self.n, self.k, self.beta = n, k, beta
        edges = [tuple(int(v) for v in row) for row in _ranking.all_combinations(n, k)]
        self.edges = edges
        m = len(edges)
        cap = int(_ONE // beta)
        # any larger support overloads the vertices even at the bare floor
        max_size = int(Fraction(n, k) / beta)
        masks: list[int] = []
        values: list[Fraction] = []
        prob = _SelectionProblem(edges, beta)
        deg = [0] * n

        def value_of(support: tuple[int, ...]) -> Optional[Fraction]:
            zero = [j for j in range(m) if j not in set(support)]
            sol = prob.lp(floored=support, zero=zero)
            return None if sol is None else sol[0]

        def dfs(start: int, support: list[int], mask: int):
            if support:
                val = value_of(tuple(support))
                if val is not None:
                    masks.append(mask)
                    values.append(val)
            if len(support) >= max_size:
                return
            for j in range(start, m):
                if any(deg[v] + 1 > cap for v in edges[j]):
                    continue
                for v in edges[j]:
                    deg[v] += 1
                support.append(j)
                dfs(j + 1, support, mask | (1 << j))
                support.pop()
                for v in edges[j]:
                    deg[v] -= 1

        dfs(0, [], 0)
        self.masks = np.asarray(masks, dtype=np.uint64)
        self.values = values
        self.values_float = np.asarray([float(v) for v in values], dtype=np.float64)

    def best_within(self, pool_mask: int) -> Fraction:
        ok = (self.masks & np.uint64(pool_mask)) == self.masks
        if not ok.any():
            return _ZERO
        vals = self.values_float[ok]
        idxs = np.flatnonzero(ok)
        fmax = vals.max()
        best = _ZERO
        for i in idxs[vals >= fmax - 1e-9]:
            v = self.values[int(i)]
            if v > best:
                best = v
        return best


_tables: dict[tuple[int, int, Fraction], SupportTable] = {}


def support_table(n: int, k: int, beta) -> SupportTable:
    beta = Fraction(beta)
    key = (n, k, beta)
    if key not in _tables:
        _tables[key] = SupportTable(n, k, beta)
    return _tables[key]


def support_enumeration_optimum(edges: Sequence[Edge], beta, n: Optional[int] = None, k: Optional[int] = None) -> Fraction:
    """Reference semicontinuous optimum by exhausting edge supports.

    Enumerates every admissible support made of the given edges (via the
    host's precomputed support table) and returns the exact maximum value.
    """
    beta = Fraction(beta)
    edges = sorted(tuple(e) for e in edges)
    if not edges:
        return _ZERO
    k = k if k is not None else len(edges[0])
    n = n if n is not None else max(v for e in edges for v in e) + 1
    table = support_table(n, k, beta)
    index = {e: j for j, e in enumerate(table.edges)}
    mask = 0
    for e in edges:
        mask |= 1 << index[e]
    return table.best_within(mask)
