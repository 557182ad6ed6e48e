"""Shared fixtures and small brute-force oracles."""

from __future__ import annotations

import itertools
import random

import pytest

from tightmatch.hypercore import Colour, ColouredKGraph


def complete_graph(n: int, k: int, colour=Colour.RED) -> ColouredKGraph:
    edges = {e: colour for e in itertools.combinations(range(n), k)}
    return ColouredKGraph(k, n, edges)


def random_graph(n: int, k: int, seed: int, p_red: float = 0.5, p_present: float = 1.0) -> ColouredKGraph:
    rng = random.Random(seed)
    edges = {}
    for e in itertools.combinations(range(n), k):
        if rng.random() < p_present:
            edges[e] = Colour.RED if rng.random() < p_red else Colour.BLUE
    return ColouredKGraph(k, n, edges)


@pytest.fixture
def k4_red_complete():
    return complete_graph(4, 3)
