import random

import pytest

from kneserlab.corpus import categorical_product, complete_uniform, kneser_graph, lift_coloring, min_element_coloring
from kneserlab.errors import InvalidInput
from kneserlab.invariants.coloring import enumerate_optimal_colorings
from kneserlab.signfan.chen import ChainPair, chen_chain_pair
from kneserlab.signfan.circuit import box_complex_map, fan_symmetric_circuit, labeling_from_box_map, maximal_chains
from kneserlab.signfan.fan import (
    FanLabeling,
    check_order_preserving,
    count_negative_alternating_chains,
    first_sign_size,
    random_order_preserving,
    random_valid_labeling,
    validate_labeling,
)
from kneserlab.signfan.product import KttStarWitness, ProductLabelingContext, extract_ktt_star, lambda_from_context
from kneserlab.signs import SignVector, all_nonzero
from kneserlab.witness import check_ktt_star, find_ktt_star

import oracles

S = SignVector.from_str


def as_tuple_rule(l):
    return lambda x: l(SignVector.from_entries(x))


# -- labelings -------------------------------------------------------------------


def test_first_sign_size_is_valid():
    assert validate_labeling(first_sign_size(3)).ok
    assert check_order_preserving(first_sign_size(3)).ok


def test_constant_labeling_is_not_antipodal():
    l = FanLabeling(2, 1, rule=lambda x: 1)
    v = validate_labeling(l)
    assert not v.ok and v.reason == "antipodal"


def test_completed_partial_table_is_valid():
    # fix lambda(+0)=+1 and lambda(-+)=-1, fill the rest antipodally with
    # magnitude 2 on the remaining orbits
    table = {"+0": 1, "-0": -1, "-+": -1, "+-": 1, "0+": 2, "0-": -2, "++": 2, "--": -2}
    l = FanLabeling.from_strings(2, 2, table)
    assert validate_labeling(l).ok


def test_complementary_pair_detected():
    table = {"+0": 1, "-0": -1, "++": -1, "--": 1, "0+": 2, "0-": -2, "+-": 2, "-+": -2}
    v = validate_labeling(FanLabeling.from_strings(2, 2, table))
    assert not v.ok and v.reason == "complementary"


def test_fan_count_n1():
    for sign in (1, -1):
        l = FanLabeling.from_strings(1, 1, {"+": sign, "-": -sign})
        assert count_negative_alternating_chains(l) == 1


def test_fan_count_n2_first_sign():
    l = first_sign_size(2)
    assert count_negative_alternating_chains(l) == 1
    assert oracles.neg_alternating_maximal_chains(2, as_tuple_rule(l)) == 1


@pytest.mark.parametrize("n", [2, 3, 4])
def test_fan_count_odd_and_matches_oracle(n):
    rng = random.Random(100 + n)
    for _ in range(15):
        l = random_valid_labeling(n, rng.randint(n, n + 2), rng)
        assert validate_labeling(l).ok
        k = count_negative_alternating_chains(l)
        assert k % 2 == 1
        assert k == oracles.neg_alternating_maximal_chains(n, as_tuple_rule(l))


def test_invalid_labeling_rejected():
    with pytest.raises(InvalidInput):
        count_negative_alternating_chains(FanLabeling(2, 1, rule=lambda x: 1))


def test_random_order_preserving_has_gamma_property():
    rng = random.Random(3)
    for n in range(1, 6):
        for gamma in range(1, n + 1):
            l = random_order_preserving(n, gamma, rng)
            assert check_order_preserving(l, gamma).ok


# -- Chen's lemma ---------------------------------------------------------------------


def test_chen_n1():
    l = FanLabeling.from_strings(1, 1, {"+": 1, "-": -1})
    pair = chen_chain_pair(l, 1)
    assert len(pair.xs) == len(pair.ys) == 1
    assert pair.xs[0] == -pair.ys[0] and l(pair.xs[0]) == -1
    assert not pair.problems(l)


def test_chen_random_labelings():
    rng = random.Random(11)
    for _ in range(20):
        n = rng.randint(1, 5)
        gamma = rng.randint(1, n)
        l = random_order_preserving(n, gamma, rng, stay=rng.random())
        pair = chen_chain_pair(l, gamma)
        assert pair.problems(l) == []
        assert ChainPair.from_json(pair.to_json()) == pair


def test_chen_on_kneser_context():
    h = complete_uniform(5, 2)
    ctx = ProductLabelingContext([h], min_element_coloring(h, 3))
    l = lambda_from_context(ctx)
    pair = chen_chain_pair(l, 2)
    assert pair.problems(l) == []


def test_chen_rejects_gamma_violation():
    l = first_sign_size(2)
    # first-sign-size labels (+0) and (++) are 1 and 2, so gamma=1 is fine but a
    # labeling with two comparable gamma-labels must be refused
    bad = FanLabeling.from_strings(2, 2, {"+0": 1, "-0": -1, "++": 1, "--": -1, "0+": 1, "0-": -1, "+-": 2, "-+": -2})
    assert chen_chain_pair(l, 1).problems(l) == []
    with pytest.raises(InvalidInput):
        chen_chain_pair(bad, 1)


# -- product labeling and K*_{t,t} extraction ---------------------------------------


def test_lambda_hand_values():
    h = complete_uniform(5, 2)
    ctx = ProductLabelingContext([h], min_element_coloring(h, 3))
    assert ctx.lam(S("+-000")) == 2
    assert ctx.lam(S("++--0")) == -5
    for x in all_nonzero(5):
        assert ctx.lam(-x) == -ctx.lam(x)


def test_extract_single_factor():
    h = complete_uniform(5, 2)
    g = kneser_graph(h)
    c = min_element_coloring(h, 3)
    w = extract_ktt_star(ProductLabelingContext([h], c))
    assert len(set(w.a_side) | set(w.b_side)) == 6
    assert check_ktt_star(g, c, w) is None
    assert find_ktt_star(g, c) is not None
    assert KttStarWitness.from_json(w.to_json()) == w


def test_extract_two_factors():
    h = complete_uniform(5, 2)
    g1 = kneser_graph(h)
    g = categorical_product([g1, g1])
    c = lift_coloring([g1, g1], 0, min_element_coloring(h, 3))
    w = extract_ktt_star(ProductLabelingContext([h, h], c))
    assert check_ktt_star(g, c, w) is None


def test_extract_t1():
    h = complete_uniform(3, 2)
    g = kneser_graph(h)
    from kneserlab.corpus import Coloring

    c = Coloring((1, 1, 1), 1)
    w = extract_ktt_star(ProductLabelingContext([h], c))
    assert len(w.a_side) == 1 and w.a_side[0] != w.b_side[0]
    assert check_ktt_star(g, c, w) is None


def test_extract_every_petersen_coloring():
    h = complete_uniform(5, 2)
    g = kneser_graph(h)
    for c in enumerate_optimal_colorings(g, 3):
        assert check_ktt_star(g, c, extract_ktt_star(ProductLabelingContext([h], c))) is None


def test_context_rejects_nonnice():
    from kneserlab.corpus import Coloring, Hypergraph

    h = Hypergraph.from_sets(2, [[1], [2]])
    with pytest.raises(InvalidInput):
        ProductLabelingContext([h], Coloring((1, 2), 2))


# -- circuit lemma ------------------------------------------------------------------


def test_maximal_chain_count():
    import math

    for n in range(1, 5):
        assert len(maximal_chains(n)) == math.factorial(n) * 2 ** n


def test_circuit_first_sign_n2():
    circ = fan_symmetric_circuit(first_sign_size(2))
    assert len(circ.alternating) == 2


def test_circuit_random():
    rng = random.Random(5)
    for n in (2, 3):
        for _ in range(5):
            circ = fan_symmetric_circuit(random_valid_labeling(n, n, rng))
            assert len(circ.alternating) >= 2
            assert circ.equator_negative % 2 == 1


def test_circuit_from_petersen_colorings(petersen):
    mu = box_complex_map(petersen, 3)
    assert mu is not None
    for c in list(enumerate_optimal_colorings(petersen, 3))[:5]:
        l = labeling_from_box_map(mu, c, 3)
        assert validate_labeling(l).ok
        assert len(fan_symmetric_circuit(l).alternating) >= 2
