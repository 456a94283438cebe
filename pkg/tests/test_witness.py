from itertools import combinations, permutations

import pytest

from kneserlab.corpus import Coloring, complete_bipartite, complete_graph, lift_coloring, min_element_coloring, categorical_product, complete_uniform, kneser_graph
from kneserlab.errors import InvalidInput
from kneserlab.invariants.coloring import chromatic_number, enumerate_optimal_colorings
from kneserlab.signfan.product import KttStarWitness
from kneserlab.witness import (
    BipartiteState,
    PathWitness,
    check_colorful,
    check_ktt_star,
    check_zigzag,
    find_colorful_klm,
    find_ktt_star,
    find_path_of_subgraphs,
    find_zigzag,
    verify_for_all_colorings,
)


def brute_ktt(g, c, t):
    """Ordered a_1..a_t, b_1..b_t with c(a_i) = c(b_i) = i and a_i ~ b_j for i != j."""
    by = [[v for v in range(g.m) if c[v] == i] for i in range(1, t + 1)]

    def rec(i, a, b):
        if i == t:
            return True
        for x in by[i]:
            for y in by[i]:
                if x == y or x in a or y in b:
                    continue
                if all(g.adjacent(x, bb) for bb in b) and all(g.adjacent(y, aa) for aa in a):
                    if rec(i + 1, a + [x], b + [y]):
                        return True
        return False

    return rec(0, [], [])


def brute_zigzag(g, c, t):
    for verts in combinations(range(g.m), t):
        if len({c[v] for v in verts}) != t:
            continue
        order = sorted(verts, key=lambda v: c[v])
        A, B = order[0::2], order[1::2]
        if all(g.adjacent(a, b) for a in A for b in B):
            return True
    return False


# -- zig-zag ----------------------------------------------------------------------


def test_zigzag_petersen_min_coloring(petersen):
    c = min_element_coloring(complete_uniform(5, 2), 3)
    w = find_zigzag(petersen, c, 3)
    assert w is not None and check_zigzag(petersen, c, w, 3) is None
    from kneserlab.corpus import popcount

    assert popcount(w.A) == 2 and popcount(w.B) == 1


def test_zigzag_k2():
    g = complete_graph(2)
    c = Coloring((1, 2), 2)
    w = find_zigzag(g, c, 2)
    assert w.vertices == 0b11


def test_zigzag_kg62_all_colorings(kg62):
    for c in enumerate_optimal_colorings(kg62, 4):
        w = find_zigzag(kg62, c, 4)
        assert w is not None and check_zigzag(kg62, c, w, 4) is None


def test_zigzag_agrees_with_brute_force(c5, petersen):
    for g in (c5, petersen):
        for c in enumerate_optimal_colorings(g, 3):
            assert (find_zigzag(g, c, 3) is not None) == brute_zigzag(g, c, 3)


def test_zigzag_checker_rejects_wrong_sides(petersen):
    c = min_element_coloring(complete_uniform(5, 2), 3)
    w = find_zigzag(petersen, c, 3)
    assert check_zigzag(petersen, c, w.swapped(), 3) is not None


# -- colorful K_{l,m} ---------------------------------------------------------------


def test_klm_c5(c5):
    for c in enumerate_optimal_colorings(c5, 3):
        w = find_colorful_klm(c5, c, [1, 3], [2])
        assert w is not None and check_colorful(c5, c, w, [1, 3], [2]) is None


def test_klm_petersen(petersen):
    for c in enumerate_optimal_colorings(petersen, 3):
        w = find_colorful_klm(petersen, c, [1], [2, 3])
        assert w is not None and check_colorful(petersen, c, w, [1], [2, 3]) is None


def test_klm_empty_side_rejected(c5):
    c = next(enumerate_optimal_colorings(c5, 3))
    with pytest.raises(InvalidInput):
        find_colorful_klm(c5, c, [1, 2, 3], [])


# -- K*_{t,t} -------------------------------------------------------------------------


def test_ktt_petersen_all(petersen):
    for c in enumerate_optimal_colorings(petersen, 3):
        w = find_ktt_star(petersen, c)
        assert w is not None and check_ktt_star(petersen, c, w) is None
        assert brute_ktt(petersen, c, 3)


def test_ktt_k2_none():
    g = complete_graph(2)
    assert find_ktt_star(g, Coloring((1, 2), 2)) is None


def test_ktt_kg62_all(kg62):
    for c in enumerate_optimal_colorings(kg62, 4):
        w = find_ktt_star(kg62, c)
        assert w is not None and check_ktt_star(kg62, c, w) is None


def test_ktt_agrees_with_brute_force(c5):
    # C5 has no K*_{3,3}: six vertices are needed
    for c in enumerate_optimal_colorings(c5, 3):
        assert find_ktt_star(c5, c) is None
        assert not brute_ktt(c5, c, 3)


def test_ktt_checker_names_pair(petersen):
    c = min_element_coloring(complete_uniform(5, 2), 3)
    w = find_ktt_star(petersen, c)
    a, b = list(w.a_side), list(w.b_side)
    used = set(a) | set(b)
    for v in range(petersen.m):
        if v not in used and c[v] == c[b[0]] and not petersen.adjacent(a[1], v):
            b[0] = v
            break
    msg = check_ktt_star(petersen, c, KttStarWitness(tuple(a), tuple(b), w.colors))
    assert msg is not None and "not adjacent" in msg


def test_ktt_json_roundtrip(petersen):
    c = min_element_coloring(complete_uniform(5, 2), 3)
    w = find_ktt_star(petersen, c)
    data = w.to_json()
    assert min(data["a_side"] + data["b_side"]) >= 1
    assert KttStarWitness.from_json(data) == w


# -- path of subgraphs --------------------------------------------------------------


def test_path_petersen(petersen):
    c = min_element_coloring(complete_uniform(5, 2), 3)
    w = find_path_of_subgraphs(petersen, c, 3)
    assert w is not None and w.problems(petersen, c) == []
    assert PathWitness.from_json(w.to_json()) == w


def test_path_k33():
    g = complete_bipartite(3, 3)
    c = Coloring((1, 1, 1, 2, 2, 2), 2)
    w = find_path_of_subgraphs(g, c, 2)
    assert w is not None and w.problems(g, c) == []
    first = w.states[0]
    from kneserlab.corpus import popcount

    assert popcount(first.A) == popcount(first.B) == 1


def test_path_checker_catches_tampering(petersen):
    c = min_element_coloring(complete_uniform(5, 2), 3)
    w = find_path_of_subgraphs(petersen, c, 3)
    broken = PathWitness(w.states[:-1], w.t)
    assert broken.problems(petersen, c)


def test_path_all_petersen_colorings(petersen):
    for c in enumerate_optimal_colorings(petersen, 3):
        w = find_path_of_subgraphs(petersen, c, 3)
        assert w is not None and w.problems(petersen, c) == []


def test_bipartite_state_problem(c5):
    assert BipartiteState(0b1, 0b100).problem(c5) is not None
    assert BipartiteState(0b1, 0b10).problem(c5) is None
    assert BipartiteState(0b1, 0b1).problem(c5) == "sides are not disjoint"


# -- quantifier driver ----------------------------------------------------------------


def _ktt_pred(g, c):
    return find_ktt_star(g, c)


def _klm_pred(g, c):
    return all(find_colorful_klm(g, c, I, [x for x in (1, 2, 3) if x not in I]) is not None
               for r in (1, 2) for I in combinations((1, 2, 3), r))


def test_verify_petersen(petersen):
    rep = verify_for_all_colorings(petersen, 3, _ktt_pred)
    assert rep.total == 20 and rep.ok


def test_verify_c5_klm(c5):
    rep = verify_for_all_colorings(c5, 3, _klm_pred)
    assert rep.total == 5 and rep.ok


def test_verify_reports_failures(c5):
    rep = verify_for_all_colorings(c5, 3, _ktt_pred)
    assert not rep.ok and len(rep.failures) == 5


def test_verify_parallel_is_identical(petersen):
    a = verify_for_all_colorings(petersen, 3, _ktt_pred, workers=1)
    b = verify_for_all_colorings(petersen, 3, _ktt_pred, workers=2)
    assert a.total == b.total and a.failures == b.failures


def test_verify_sampled_product():
    g1 = kneser_graph(complete_uniform(5, 2))
    g = categorical_product([g1, g1])
    rep = verify_for_all_colorings(g, 3, _ktt_pred, sample=5, seed=1)
    assert rep.total == 5 and rep.ok and rep.sampled
