"""Density predicate, consequences, and the extraction cascade."""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

import pytest

from tightmatch.density import (
    CascadeReport,
    DensityParams,
    assert_dense_consequences,
    cascade_clean,
    dense_subgraph,
    is_dense,
)
from tightmatch.errors import ContractError
from tightmatch.hypercore import Colour, ColouredKGraph, tight_components

from conftest import complete_graph, random_graph


# -- is_dense -------------------------------------------------------------


def test_complete_graph_max_feasible_mu():
    # degrees top out at C(n-i, k-i), so the sharpest passing mu for
    # K_10^(3) is 4/5 at both levels; mu=1 fails at finite n
    g = complete_graph(10, 3)
    assert is_dense(g, DensityParams(Fraction(4, 5), Fraction(0))).dense
    assert not is_dense(g, DensityParams(Fraction(1), Fraction(0))).dense


def test_empty_graph_density():
    # every i-set has degree 0; they all sit below any positive threshold,
    # so the count clause needs alpha >= 1 (and any mu <= 0 is vacuous)
    g = ColouredKGraph(3, 8)
    assert is_dense(g, DensityParams(0.9, 1)).dense
    assert not is_dense(g, DensityParams(0.9, 0.5)).dense
    rep = is_dense(g, DensityParams(0, 0))
    assert rep.dense and rep.vacuous


def test_exceptional_positive_degree_breaks_density():
    # one pair with small positive degree violates the second clause even
    # when the count budget would allow it
    edges = {e: Colour.RED for e in itertools.combinations(range(8), 3)}
    removed = [e for e in edges if set(e) >= {0, 1}][:-1]  # leave exactly one
    for e in removed:
        del edges[e]
    g = ColouredKGraph(3, 8, edges)
    rep = is_dense(g, DensityParams(0.7, 0.9))
    level2 = rep.levels[1]
    assert (0, 1) in level2.exceptional
    assert not level2.zero_ok
    assert not rep.dense


def test_is_dense_enumeration_oracle():
    # K_6^(3) minus one edge, evaluated against direct enumeration
    edges = {e: Colour.RED for e in itertools.combinations(range(6), 3)}
    del edges[(0, 1, 2)]
    g = ColouredKGraph(3, 6, edges)
    params = DensityParams(0.9, 0.2)
    rep = is_dense(g, params)
    for level in rep.levels:
        i = level.i
        below = 0
        exceptional = []
        for S in itertools.combinations(range(6), i):
            d = sum(1 for e in edges if set(S) <= set(e))
            if d < 0.9 * math.comb(6, 3 - i):
                below += 1
                if d > 0:
                    exceptional.append(S)
        assert level.below_count == below
        assert level.exceptional == sorted(exceptional)


# -- Prop 2.1 consequences --------------------------------------------------


def test_consequences_complete():
    g = complete_graph(10, 3)
    rep = assert_dense_consequences(g, DensityParams(Fraction(4, 5), Fraction(0)))
    assert rep.edge_bound == Fraction(4, 5) * 120
    assert rep.edge_bound_ok
    assert rep.connectivity_checked and rep.connected_ok


def test_consequences_bound_arithmetic():
    g = complete_graph(10, 3)
    rep = assert_dense_consequences(g, DensityParams(Fraction(6, 10), Fraction(1, 10)))
    assert rep.edge_bound == Fraction(1, 2) * 120


def test_consequences_requires_density():
    g = ColouredKGraph(3, 8)
    with pytest.raises(ContractError):
        assert_dense_consequences(g, DensityParams(0.9, 0.5))


def deletion_family(n, k):
    """All graphs K_n^(k) minus one or two edges (exhaustive small family)."""
    full = list(itertools.combinations(range(n), k))
    for e in full:
        yield {f: Colour.RED for f in full if f != e}
    rng = random.Random(0)
    for _ in range(120):
        drop = set(rng.sample(range(len(full)), 2))
        yield {f: Colour.RED for i, f in enumerate(full) if i not in drop}


@pytest.mark.parametrize("n", [7, 8])
def test_prop21_deletion_family(n):
    mu, alpha = Fraction(55, 100), Fraction(1, 10)
    params = DensityParams(mu, alpha)
    checked = 0
    for edges in deletion_family(n, 3):
        g = ColouredKGraph(3, n, edges)
        if not is_dense(g, params).dense:
            continue
        rep = assert_dense_consequences(g, params)
        assert rep.edge_bound_ok
        assert rep.connected_ok
        checked += 1
    assert checked > 50


def test_prop21_sampled_dense_instances():
    params = DensityParams(0.7, 0.05)
    rng = random.Random(42)
    accepted = 0
    attempts = 0
    while accepted < 25 and attempts < 4000:
        attempts += 1
        n = rng.randrange(9, 13)
        g = random_graph(n, 3, seed=rng.randrange(10**6), p_present=rng.choice([0.97, 0.99, 1.0]))
        if not is_dense(g, params).dense:
            continue
        accepted += 1
        rep = assert_dense_consequences(g, params)
        assert rep.edge_bound_ok and rep.connected_ok
    assert accepted == 25


# -- dense_subgraph ---------------------------------------------------------


def test_cascade_complete_unchanged():
    g = complete_graph(12, 3)
    rep = cascade_clean(g, 0.1)
    assert rep.result == g
    assert all(not v for v in rep.bad.values())
    assert all(not v for v in rep.cascade.values())


def test_cascade_zero_degree_sets_tolerated():
    # all edges through vertex 7 deleted: every degree involving 7 is 0,
    # never bad, so nothing is removed (alpha large enough that the
    # surviving positive degrees clear the bar)
    edges = {
        e: Colour.RED
        for e in itertools.combinations(range(8), 3)
        if 7 not in e
    }
    g = ColouredKGraph(3, 8, edges)
    rep = cascade_clean(g, 0.25)
    assert rep.result == g


def oracle_cascade(g: ColouredKGraph, alpha: float):
    """Independent dict-based implementation of the extraction cascade."""
    k, n = g.k, g.n
    beta = alpha ** (1 / (2 * k))
    deg = {}
    for i in range(1, k):
        for S in itertools.combinations(range(n), i):
            deg[S] = sum(1 for e in g.edges if set(S) <= set(e))
    bad = {
        i: {
            S
            for S in itertools.combinations(range(n), i)
            if 0 < deg[S] < (1 - alpha**0.5) * math.comb(n, k - i) - 2.0**-40
        }
        for i in range(1, k)
    }
    A = {k - 1: set(bad[k - 1])}
    for j in range(k - 1, 1, -1):
        nxt = set(bad[j - 1])
        for X in itertools.combinations(range(n), j - 1):
            d = sum(1 for S in A[j] if set(X) <= set(S))
            if d >= beta**0.5 * n - 2.0**-40:
                nxt.add(X)
        A[j - 1] = nxt
    F = set()
    for j in range(1, k):
        for e in g.edges:
            if any(set(S) <= set(e) for S in A[j]):
                F.add(e)
    return A, F


def test_cascade_planted_bad_pair():
    # K_12^(3) with half the edges at {0,1} removed; alpha tuned so {0,1}
    # is the only bad set and F is exactly its surviving edges
    n, alpha = 12, 0.1
    edges = {e: Colour.BLUE for e in itertools.combinations(range(n), 3)}
    removed = [e for e in edges if set(e) >= {0, 1} and max(e) <= 6]
    assert len(removed) == 5
    for e in removed:
        del edges[e]
    g = ColouredKGraph(3, n, edges)
    rep = cascade_clean(g, alpha)
    assert rep.precondition_ok
    assert rep.bad[2] == [(0, 1)]
    expected_f = {e for e in edges if set(e) >= {0, 1}}
    got_f = set(g.edges) - set(rep.result.edges)
    assert got_f == expected_f

    A, F = oracle_cascade(g, alpha)
    assert {tuple(s) for s in A[2]} == {(0, 1)}
    assert F == expected_f


def test_cascade_matches_oracle_random():
    rng = random.Random(7)
    for _ in range(10):
        g = random_graph(9, 3, seed=rng.randrange(10**6), p_present=0.9)
        alpha = rng.choice([0.05, 0.1, 0.3])
        rep = cascade_clean(g, alpha)
        A, F = oracle_cascade(g, alpha)
        assert set(g.edges) - set(rep.result.edges) == F
        for i, sets in rep.cascade.items():
            assert set(sets) == A[i]


def test_cascade_output_dense_with_paper_params():
    rng = random.Random(13)
    for _ in range(8):
        g = random_graph(10, 3, seed=rng.randrange(10**6), p_present=0.95)
        alpha = 0.1
        rep = cascade_clean(g, alpha)
        check = is_dense(rep.result, DensityParams(rep.paper_mu, rep.paper_alpha))
        assert check.dense
        assert check.vacuous == (rep.paper_mu <= 0)


def test_cascade_warning_on_sparse_input():
    g = random_graph(9, 3, seed=5, p_present=0.3)
    rep = cascade_clean(g, 0.05)
    assert not rep.precondition_ok
    assert rep.warning is not None


def test_cascade_preserves_vertex_set_and_colours():
    g = random_graph(9, 3, seed=8, p_present=0.9, p_red=0.4)
    out = dense_subgraph(g, 0.1)
    assert out.n == g.n
    for e, c in out.edges.items():
        assert g.edges[e] is c
