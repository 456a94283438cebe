from fractions import Fraction

import pytest

from kneserlab.corpus import (
    Graph,
    Hypergraph,
    complete_bipartite,
    complete_graph,
    complete_uniform,
    cycle_graph,
    f_nmk,
    kneser_graph,
    partition_matroid,
)
from kneserlab.invariants.alternation import alt_min, alt_sigma, is_nice
from kneserlab.invariants.circular import circular_chromatic_number, is_pq_coloring
from kneserlab.invariants.coloring import chromatic_number, enumerate_optimal_colorings
from kneserlab.invariants.hypergraph import cd2, is_2_colorable
from kneserlab.invariants.tristar import circuit_property, triangle_star_partitions
from kneserlab.signs import SignVector, alt_of

import oracles
from conftest import hsets

FANO = [(1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 5, 6)]


# -- chromatic number ---------------------------------------------------------


@pytest.mark.parametrize("n,k,value", [(5, 2, 3), (6, 2, 4)])
def test_chi_of_kneser(n, k, value):
    g = kneser_graph(complete_uniform(n, k))
    chi, c = chromatic_number(g)
    assert chi == value
    assert c.is_proper(g) and len(set(c.colors)) == chi


def test_chi_triangle_and_edgeless():
    assert chromatic_number(complete_graph(3))[0] == 3
    assert chromatic_number(Graph.from_edges(4, []))[0] == 1


def test_chi_matches_brute_force_on_small_graphs():
    from kneserlab.acceptance import graph_catalog

    for g in graph_catalog(5):
        if g.m:
            assert chromatic_number(g)[0] == oracles.chi_brute(g.m, oracles.edges_of(g))


@pytest.mark.parametrize("name,t,count", [("k3", 3, 1), ("c5", 3, 5), ("petersen", 3, 20)])
def test_canonical_colorings(name, t, count, request):
    g = complete_graph(3) if name == "k3" else request.getfixturevalue(name)
    cols = list(enumerate_optimal_colorings(g, t))
    assert len(cols) == count
    # every proper t-coloring is t! relabelings of a canonical one
    assert len(cols) * 6 == oracles.count_proper(g.m, oracles.edges_of(g), t)
    assert len({c.colors for c in cols}) == count
    assert all(c.is_proper(g) for c in cols)


def test_below_chi_is_empty(c5):
    assert list(enumerate_optimal_colorings(c5, 2)) == []


# -- cd2 and two-colorability -------------------------------------------------


@pytest.mark.parametrize(
    "h,value",
    [
        (Hypergraph.from_sets(2, [[1, 2]]), 0),
        (complete_uniform(3, 2), 1),
        (f_nmk(3, 1, 2), 2),
        (complete_uniform(5, 2), 3),
    ],
)
def test_cd2_examples(h, value):
    val, removed = cd2(h)
    assert val == value == oracles.cd2_brute(h.n, hsets(h))
    assert oracles.two_colorable(h.n, hsets(h), frozenset(removed))


def test_cd2_fnmk_formula():
    for n, m, k in [(3, 1, 2), (4, 2, 2), (5, 1, 2), (4, 1, 2)]:
        assert cd2(f_nmk(n, m, k))[0] == n + m - 2 * k + 2


def test_two_colorability_examples():
    assert not is_2_colorable(complete_uniform(3, 2))[0]
    ok, sides = is_2_colorable(Hypergraph.from_sets(4, [[1, 2, 3], [2, 3, 4]]))
    assert ok and sides is not None
    assert not is_2_colorable(Hypergraph.from_sets(7, FANO))[0]
    assert not oracles.two_colorable(7, [frozenset(e) for e in FANO])


# -- alternation ----------------------------------------------------------------


@pytest.mark.parametrize("s,value", [("+-+0", 3), ("000", 0), ("++--+", 3)])
def test_alt_of_vector(s, value):
    assert alt_of(SignVector.from_str(s)) == value


def test_alt_sigma_examples():
    assert alt_sigma(complete_uniform(4, 2)).alt_sigma == 2
    prof = alt_sigma(Hypergraph.from_sets(4, [[1, 2], [3, 4]]))
    assert prof.alt_sigma == 4 and str(prof.witness) in ("+-+-", "-+-+")
    assert alt_sigma(complete_uniform(5, 2)).alt_sigma == 2


def test_alt_sigma_matches_brute_force():
    for h in [f_nmk(3, 1, 2), Hypergraph.from_sets(5, [[1, 3], [2, 5], [1, 4, 5]]), partition_matroid([3, 3], [1, 1], 2)[0]]:
        for sigma in (None, list(range(h.n, 0, -1))):
            assert alt_sigma(h, sigma).alt_sigma == oracles.alt_sigma_brute(h.n, hsets(h), sigma)


def test_alt_min_examples():
    assert alt_min(complete_uniform(5, 2)).alt_sigma == 2
    assert alt_min(Hypergraph.from_sets(2, [[1], [2]])).alt_sigma == 0
    # the ordering 1,3,2,4 puts each edge at positions of equal parity, so no
    # vector of alternation 3 can avoid both; brute force agrees
    h = Hypergraph.from_sets(4, [[1, 3], [2, 4]])
    assert alt_min(h).alt_sigma == oracles.alt_min_brute(4, hsets(h)) == 3


def test_alt_bounds_chi():
    for h in [complete_uniform(5, 2), complete_uniform(6, 2), f_nmk(4, 2, 2)]:
        g = kneser_graph(h)
        assert chromatic_number(g)[0] >= h.n - alt_min(h).alt_sigma


# -- circular chromatic number -------------------------------------------------------


def test_circular_examples(petersen, c5):
    assert circular_chromatic_number(complete_graph(4))[0] == Fraction(4)
    val, (p, q, colors) = circular_chromatic_number(c5)
    assert val == Fraction(5, 2) == oracles.circular_brute(5, oracles.edges_of(c5))
    assert is_pq_coloring(c5, p, q, colors)
    assert circular_chromatic_number(petersen)[0] == Fraction(3)


def test_circular_matches_brute_force_small():
    for g in [cycle_graph(7), complete_bipartite(2, 3), cycle_graph(4)]:
        assert circular_chromatic_number(g)[0] == oracles.circular_brute(g.m, oracles.edges_of(g), max_p=8)


# -- niceness ----------------------------------------------------------------


def test_nice_examples():
    res = is_nice(complete_uniform(5, 2), [1, 2, 3, 4, 5])
    assert res.nice
    res = is_nice(Hypergraph.from_sets(3, [[1]]))
    assert not res.nice and "singleton" in res.reason
    assert is_nice(partition_matroid([3, 3], [1, 1], 2)[0]).nice


def test_not_nice_when_chi_exceeds_bound():
    # C4 edge hypergraph: alt bound is not tight
    h = Hypergraph.from_sets(4, [[1, 2], [2, 3], [3, 4], [1, 4]])
    assert not is_nice(h).nice


# -- triangle/star partitions -------------------------------------------------


def test_tristar_examples(k4):
    r = triangle_star_partitions(complete_graph(3))
    assert r.parts == 1 and len(r.partition.triangles) == 1
    r = triangle_star_partitions(complete_bipartite(1, 4))
    assert r.parts == 1 and not r.partition.triangles
    r = triangle_star_partitions(k4)
    assert r.parts == chromatic_number(kneser_graph(Hypergraph.from_sets(4, [(u + 1, v + 1) for u, v in k4.edges()])))[0]
    assert r.parts == oracles.triangle_star_min_parts(oracles.edges_of(k4)) == 2


def test_tristar_matches_oracle_and_chi():
    from kneserlab.acceptance import graph_catalog

    for g in graph_catalog(5):
        if g.edge_count == 0:
            continue
        r = triangle_star_partitions(g)
        assert r.partition.is_partition_of(g)
        assert r.parts == oracles.triangle_star_min_parts(oracles.edges_of(g))
        kg = kneser_graph(Hypergraph.from_sets(g.m, [(u + 1, v + 1) for u, v in g.edges()]))
        assert r.parts == chromatic_number(kg)[0]


def test_tristar_edgeless():
    r = triangle_star_partitions(Graph.from_edges(3, []))
    assert r.parts == 0


def test_circuit_property_runs(k4):
    r = triangle_star_partitions(k4)
    assert isinstance(circuit_property(k4, r.partition), bool)
