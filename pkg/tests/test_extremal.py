"""Extremal colourings, counting inequalities, and partition certificates."""

from __future__ import annotations

import itertools
import random

import pytest

from tightmatch.errors import ParameterError
from tightmatch.extremal import (
    CycleWitness,
    HypothesisError,
    extremal_colouring,
    extremal_structure,
    naive_two_cycle_partition,
    parity_colouring,
    partition_inequality_check,
    recognize_extremal,
    tight_cycle_on,
    verify_two_cycle_partition,
)
from tightmatch.generate import random_path_cycle_instance
from tightmatch.hypercore import (
    Colour,
    ColouredKGraph,
    delete_vertices,
    swap_colours,
    tight_components,
)

from conftest import complete_graph, random_graph


# -- generators -------------------------------------------------------------


def test_extremal_sizes():
    st = extremal_structure(3, 4)
    assert (st.n, st.x_size, st.y_size, st.z) == (16, 9, 6, 15)
    H = extremal_colouring(3, 4)
    assert H.n == 16 and H.is_complete()


def test_extremal_colour_rule():
    H = extremal_colouring(3, 4)
    st = extremal_structure(3, 4)
    assert H.colour_of((0, 1, 2)) is Colour.BLUE          # inside X
    assert H.colour_of((st.x_size, st.x_size + 1, st.z)) is Colour.RED  # z + two Y
    assert H.colour_of((0, st.x_size, st.x_size + 1)) is Colour.BLUE   # no z, two Y
    assert H.colour_of((0, 1, st.x_size)) is Colour.RED   # no z, one Y


def test_extremal_requires_m():
    with pytest.raises(ParameterError):
        extremal_colouring(3, 3)


def test_extremal_three_components_without_z():
    # the paper's B1, B2, R decomposition of K_n^(k) - z, as set equality
    H = extremal_colouring(3, 4)
    st = extremal_structure(3, 4)
    Hz = delete_vertices(H, [st.z])
    comps = tight_components(Hz)
    X = set(range(st.x_size))
    Y = set(range(st.x_size, st.x_size + st.y_size))
    b1 = {e for e in itertools.combinations(sorted(X), 3)}
    b2 = {
        e
        for e in itertools.combinations(sorted(X | Y), 3)
        if len(set(e) & Y) >= 2
    }
    r = {
        e
        for e in itertools.combinations(sorted(X | Y), 3)
        if len(set(e) & Y) == 1
    }
    found = {(c.colour, frozenset(c.edges)) for c in comps}
    assert found == {
        (Colour.BLUE, frozenset(b1)),
        (Colour.BLUE, frozenset(b2)),
        (Colour.RED, frozenset(r)),
    }


def test_recognize_extremal():
    H = extremal_colouring(3, 4)
    st = recognize_extremal(H)
    assert st is not None and st.m == 4
    assert recognize_extremal(complete_graph(16, 3)) is None


def test_parity_rule():
    H = parity_colouring(3, 4, 4)
    assert H.colour_of((0, 1, 4)) is Colour.RED    # |e ∩ A| = 2
    assert H.colour_of((0, 4, 5)) is Colour.BLUE   # |e ∩ A| = 1
    assert H.colour_of((4, 5, 6)) is Colour.RED    # |e ∩ A| = 0


def test_parity_inside_a_red_component():
    # edges inside A form a single maximal red tight component
    H = parity_colouring(4, 12, 4)
    inside = {e for e in itertools.combinations(range(12), 4)}
    comps = tight_components(H)
    matching = [c for c in comps if c.colour is Colour.RED and set(c.edges) == inside]
    assert len(matching) == 1


# -- inequalities ------------------------------------------------------------


def test_inequality_path_example():
    edges = [(0, 1, 2), (1, 2, 3), (2, 3, 4)]
    assert partition_inequality_check("path", 3, X=[2], Y=[0, 1, 3, 4], edges=edges)


def test_inequality_cycle_empty_x():
    edges = [tuple(sorted(((i + j) % 5 for j in range(3)))) for i in range(5)]
    assert partition_inequality_check("cycle", 3, X=[], Y=list(range(5)), edges=edges)


def test_inequality_hypothesis_error():
    edges = [(0, 1, 2)]
    with pytest.raises(HypothesisError) as exc:
        partition_inequality_check("path", 3, X=[0, 1], Y=[2], edges=edges)
    assert exc.value.edge == (0, 1, 2)


def test_inequality_random_instances_always_hold():
    rng = random.Random(0)
    for trial in range(300):
        k = rng.choice([3, 4, 5])
        size = rng.randrange(k, 41)
        structure = rng.choice(["path", "cycle"])
        structure, xs, ys, edges = random_path_cycle_instance(k, size, seed=trial, structure=structure)
        assert partition_inequality_check(structure, k, xs, ys, edges)


# -- tight cycle search -------------------------------------------------------


def test_cycle_complete_red():
    g = complete_graph(4, 3)
    order = tight_cycle_on(g, range(4), Colour.RED)
    assert order is not None and len(order) == 4


def test_cycle_degenerate_small():
    g = ColouredKGraph(3, 5)
    assert tight_cycle_on(g, (1, 3), Colour.RED) == (1, 3)


def test_cycle_single_edge():
    g = ColouredKGraph(3, 5, {(0, 1, 2): Colour.BLUE})
    assert tight_cycle_on(g, (0, 1, 2), Colour.BLUE) == (0, 1, 2)
    assert tight_cycle_on(g, (0, 1, 2), Colour.RED) is None


def naive_cycle_search(g, S, colour):
    S = sorted(S)
    s = len(S)
    k = g.k
    if s < k:
        return tuple(S)
    if s == k:
        return tuple(S) if g.colour_of(S) is colour else None
    for perm in itertools.permutations(S[1:]):
        order = (S[0],) + perm
        if all(
            g.colour_of(tuple(sorted(order[(i + j) % s] for j in range(k)))) is colour
            for i in range(s)
        ):
            return order
    return None


def test_cycle_matches_permutation_oracle():
    rng = random.Random(5)
    for _ in range(60):
        n = rng.randrange(4, 8)
        g = random_graph(n, 3, seed=rng.randrange(10**6), p_red=rng.choice([0.4, 0.6, 0.9]))
        size = rng.randrange(0, n + 1)
        S = rng.sample(range(n), size)
        colour = rng.choice([Colour.RED, Colour.BLUE])
        got = tight_cycle_on(g, S, colour)
        expected = naive_cycle_search(g, S, colour)
        assert (got is None) == (expected is None)
        if got is not None and len(S) > g.k:
            # returned order must itself be a valid tight cycle
            s = len(S)
            for i in range(s):
                w = tuple(sorted(got[(i + j) % s] for j in range(g.k)))
                assert g.colour_of(w) is colour


# -- partition verification ----------------------------------------------------


def test_partition_all_red_complete():
    g = complete_graph(7, 3)
    cert = verify_two_cycle_partition(g)
    assert cert.found
    # enumeration is by ascending red-side size, so the red cycle is proper
    # and the blue side is a degenerate wildcard
    assert cert.red.kind == "proper" and cert.blue.kind == "small"
    assert certificate_is_valid(g, cert)


def test_partition_rejects_incomplete():
    g = ColouredKGraph(3, 5, {(0, 1, 2): Colour.RED})
    with pytest.raises(ParameterError):
        verify_two_cycle_partition(g)


def certificate_is_valid(H, cert):
    if not cert.found:
        return True
    rs, bs = set(cert.red.order), set(cert.blue.order)
    if rs & bs or rs | bs != set(range(H.n)):
        return False
    for witness, colour in ((cert.red, Colour.RED), (cert.blue, Colour.BLUE)):
        s = len(witness.order)
        if s < H.k:
            continue
        if s == H.k:
            if H.colour_of(witness.order) is not colour:
                return False
            continue
        for i in range(s):
            w = tuple(sorted(witness.order[(i + j) % s] for j in range(H.k)))
            if H.colour_of(w) is not colour:
                return False
    return True


def test_partition_agreement_with_naive_oracle():
    rng = random.Random(11)
    for _ in range(150):
        n = rng.choice([4, 5])
        g = random_graph(n, 3, seed=rng.randrange(10**6), p_red=rng.choice([0.2, 0.5, 0.8]))
        full = {e: g.edges.get(e, Colour.BLUE) for e in itertools.combinations(range(n), 3)}
        g = ColouredKGraph(3, n, full)
        got = verify_two_cycle_partition(g)
        expected = naive_two_cycle_partition(g)
        assert got.found == expected.found
        assert certificate_is_valid(g, got)


def test_partition_colour_swap_symmetry():
    rng = random.Random(21)
    for _ in range(40):
        n = rng.choice([5, 6])
        g = random_graph(n, 3, seed=rng.randrange(10**6))
        full = {e: g.edges.get(e, Colour.RED) for e in itertools.combinations(range(n), 3)}
        g = ColouredKGraph(3, n, full)
        a = verify_two_cycle_partition(g)
        b = verify_two_cycle_partition(swap_colours(g))
        assert a.found == b.found


@pytest.mark.slow
def test_extremal_instance_has_no_partition():
    cert = verify_two_cycle_partition(extremal_colouring(3, 4))
    assert cert.verdict == "none"
    assert cert.stats["extremal_recognised"]
