"""Constrained fractional matchings: exactness, feasibility, oracle parity."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from tightmatch.errors import ParameterError
from tightmatch.fracmatch import (
    max_constrained_fractional_matching,
    mu_any,
    mu_red_blue,
    support_enumeration_optimum,
)
from tightmatch.hypercore import Colour, ColouredKGraph, tight_components

from conftest import complete_graph, random_graph


def test_single_red_edge():
    H = ColouredKGraph(3, 5, {(0, 1, 2): Colour.RED})
    res = mu_any(H, 1, 1)
    assert res.weight == 1
    assert res.optimality == "exact"
    assert res.assignment.weights == {(0, 1, 2): Fraction(1)}


def test_k4_uniform_third():
    # red-complete K_4^(3): weight 4/3 via w = 1/3 on all four edges
    H = complete_graph(4, 3, Colour.RED)
    res = mu_any(H, 1, Fraction(1, 3))
    assert res.weight == Fraction(4, 3)
    loads = res.assignment.vertex_loads()
    assert all(load <= 1 for load in loads.values())


def test_k4_beta_one_integral():
    H = complete_graph(4, 3, Colour.RED)
    res = mu_any(H, 1, 1)
    assert res.weight == 1


def test_disjoint_red_blue_pair():
    H = ColouredKGraph(3, 6, {(0, 1, 2): Colour.RED, (3, 4, 5): Colour.BLUE})
    res = mu_red_blue(H, 1)
    assert res.weight == 2
    assert len(res.components_used) == 2


def test_no_components():
    H = ColouredKGraph(3, 5)
    res = mu_any(H, 1, 1)
    assert res.weight == 0 and res.components_used == ()


def test_support_stays_in_selection():
    H = ColouredKGraph(
        3, 9,
        {(0, 1, 2): Colour.RED, (3, 4, 5): Colour.RED, (6, 7, 8): Colour.BLUE},
    )
    res = mu_any(H, 1, 1)
    # s = 1: only one component may carry weight
    assert res.weight == 1
    res2 = mu_any(H, 2, 1)
    assert res2.weight == 2
    res3 = mu_any(H, 3, 1)
    assert res3.weight == 3


def test_beta_validation():
    H = complete_graph(4, 3)
    with pytest.raises(ParameterError):
        mu_any(H, 1, 0)
    with pytest.raises(ParameterError):
        mu_any(H, 0, 1)


def test_complete_monochromatic_anchor():
    # complete monochromatic K_k^(k) has a single edge: weight 1
    for k in (3, 4):
        H = complete_graph(k, k, Colour.BLUE)
        assert mu_any(H, 1, 1).weight == 1


def test_feasibility_and_floor_exact():
    rng = random.Random(2)
    for _ in range(20):
        H = random_graph(6, 3, seed=rng.randrange(10**6))
        beta = rng.choice([Fraction(1), Fraction(1, 2), Fraction(1, 3)])
        res = mu_any(H, 2, beta)
        assert res.assignment.check_feasible(beta)
        assert res.weight == res.assignment.weight


def test_dominates_greedy_matching():
    rng = random.Random(3)
    for _ in range(15):
        H = random_graph(7, 3, seed=rng.randrange(10**6))
        comps = tight_components(H)
        res = mu_any(H, 1, Fraction(1, 2))
        for comp in comps:
            used: set[int] = set()
            size = 0
            for e in sorted(comp.edges):
                if not used.intersection(e):
                    size += 1
                    used.update(e)
            assert res.weight >= size


def test_relabelling_invariance():
    rng = random.Random(4)
    for _ in range(10):
        H = random_graph(6, 3, seed=rng.randrange(10**6))
        perm = list(range(6))
        rng.shuffle(perm)
        relabelled = ColouredKGraph(
            3, 6, {tuple(sorted(perm[v] for v in e)): c for e, c in H.edges.items()}
        )
        for beta in (Fraction(1), Fraction(1, 3)):
            assert mu_any(H, 1, beta).weight == mu_any(relabelled, 1, beta).weight


def test_oracle_parity_small():
    rng = random.Random(5)
    comps_cache = {}
    for trial in range(40):
        H = random_graph(6, 3, seed=rng.randrange(10**6))
        comps = tight_components(H)
        beta = rng.choice([Fraction(1), Fraction(1, 2), Fraction(1, 3)])
        mode = rng.choice([("any", 1), ("any", 2), "redblue"])
        res = max_constrained_fractional_matching(H, mode, beta)
        assert res.optimality == "exact"
        # oracle: best over the same selections via support enumeration
        from tightmatch.fracmatch import _selections

        _, sels = _selections(H, mode)
        expected = Fraction(0)
        for sel in sels:
            pool = sorted({e for cid in sel for e in comps[cid].edges})
            expected = max(expected, support_enumeration_optimum(pool, beta))
        assert res.weight == expected, (trial, mode, beta)
