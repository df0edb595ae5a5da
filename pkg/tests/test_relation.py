from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ordex import (
    OMEGA,
    Relation,
    Universe,
    UniverseMismatch,
    classify,
    compose,
    decompose,
    incomparable_pairs,
    maximal_elements,
    power,
    power_sequence,
    quotient_by_indifference,
    restrict,
    strongly_connected_components,
    transitive_closure,
)
from ordex.relation import all_relations, parse_order
from tests import oracles as O

X5 = Universe.numbered(5)
G_PAIRS = [(1, 2), (2, 3), (3, 4), (4, 3), (4, 1), (2, 5)]


def xs(pairs):
    return {(f"x{a}", f"x{b}") for a, b in pairs}


@pytest.fixture
def g():
    return Relation.from_pairs(X5, xs(G_PAIRS))


@st.composite
def relations(draw, max_n=5, min_n=1):
    n = draw(st.integers(min_n, max_n))
    mask = draw(st.integers(0, (1 << (n * n)) - 1))
    return Relation.from_mask(Universe.numbered(n), mask)


# universe


def test_universe_rejects_duplicates_and_empty():
    with pytest.raises(ValueError):
        Universe(("a", "a"))
    with pytest.raises(ValueError):
        Universe(())


def test_universe_index_is_a_bijection():
    u = Universe.of(["c", "a", "b"])
    assert [u.index(x) for x in u] == [0, 1, 2]
    with pytest.raises(KeyError):
        u.index("z")


def test_cross_universe_operations_raise():
    a = Relation.empty(Universe.of(["a", "b"]))
    b = Relation.empty(Universe.of(["b", "a"]))
    with pytest.raises(UniverseMismatch):
        compose(a, b)
    with pytest.raises(UniverseMismatch):
        a | b


def test_from_pairs_unknown_label():
    with pytest.raises(KeyError):
        Relation.from_pairs(Universe.of(["a"]), [("a", "b")])


def test_empty_relation_is_not_falsy():
    r = Relation.empty(Universe.of(["a"]))
    assert r is not None and r.is_empty() and r.cardinality == 0


def test_parse_order():
    assert parse_order("omega") is OMEGA and parse_order("ω") is OMEGA
    assert parse_order("3") == 3
    with pytest.raises(ValueError):
        parse_order("x")


# compose and powers


def test_compose_two_step_chain():
    u = Universe.of(["a", "b", "c"])
    r = Relation.from_pairs(u, [("a", "b"), ("b", "c")])
    assert compose(r, r).pairs() == [("a", "c")]
    assert compose(r, Relation.empty(u)).is_empty()


def test_compose_and_cube_of_g(g):
    assert set(compose(g, g).pairs()) == xs([(1, 3), (1, 5), (2, 4), (3, 3), (4, 2), (3, 1), (4, 4)])
    assert set(power(g, 3).pairs()) == xs([(1, 4), (2, 3), (2, 1), (3, 4), (4, 3), (4, 5), (3, 2), (4, 1)])


def test_power_rejects_bad_orders(g):
    with pytest.raises(ValueError):
        power(g, 0)
    with pytest.raises(TypeError):
        power(g, 1.5)


@given(relations(max_n=5), st.integers(1, 6))
def test_power_matches_oracle(r, m):
    assert set(power(r, m).pairs()) == O.power(set(r.pairs()), m)


def test_power_omega_is_closure_on_random_relations():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randint(1, 6)
        r = Relation.from_mask(Universe.numbered(n), rng.getrandbits(n * n))
        labels = r.universe.labels
        assert set(power(r, OMEGA).pairs()) == O.closure(labels, set(r.pairs()))


@given(relations(max_n=5))
def test_closure_properties(r):
    c = transitive_closure(r)
    assert r <= c
    assert transitive_closure(c) == c
    union = r
    for k in range(2, r.n + 1):
        union = union | power(r, k)
    assert c == union


@given(relations(max_n=4), relations(max_n=4))
def test_closure_is_monotone(a, b):
    if a.universe != b.universe:
        return
    assert transitive_closure(a) <= transitive_closure(a | b)


def test_closure_examples(g):
    u = Universe.of(["a", "b", "c"])
    r = Relation.from_pairs(u, [("a", "b"), ("b", "c")])
    assert set(transitive_closure(r).pairs()) == {("a", "b"), ("b", "c"), ("a", "c")}
    c = transitive_closure(r)
    assert transitive_closure(c) == c
    expected = {(i, j) for i in range(1, 5) for j in range(1, 5)} | {(i, 5) for i in range(1, 5)}
    assert set(transitive_closure(g).pairs()) == xs(expected)


@given(relations(max_n=4))
def test_power_sequence_detects_the_cycle(r):
    seq = power_sequence(r)
    assert seq.period >= 1
    for k in range(1, seq.bound + 2 * seq.period + 3):
        assert seq.at(k) == power(r, k)


def test_reflexive_powers_increase():
    rng = random.Random(3)
    for _ in range(100):
        n = rng.randint(1, 5)
        r = Relation.from_mask(Universe.numbered(n), rng.getrandbits(n * n)).with_diagonal()
        for m in range(1, 5):
            assert power(r, m) <= power(r, m + 1)


# decomposition, inc, restrict


def test_decompose_g(g):
    p, i = decompose(g)
    assert set(p.pairs()) == xs([(1, 2), (2, 3), (4, 1), (2, 5)])
    assert set(i.pairs()) == xs([(3, 4), (4, 3)])


def test_decompose_extremes():
    u = Universe.of(["a", "b", "c"])
    sym = Relation.from_pairs(u, [("a", "b"), ("b", "a"), ("c", "c")])
    p, i = decompose(sym)
    assert p.is_empty() and i == sym
    chain = Relation.from_pairs(u, [("a", "b"), ("b", "c"), ("a", "c")])
    p, i = decompose(chain)
    assert p == chain and i.is_empty()


@given(relations(max_n=5))
def test_decompose_partitions(r):
    p, i = decompose(r)
    assert p | i == r and (p & i).is_empty()
    assert set(p.pairs()) == O.strict(set(r.pairs()))


def test_incomparable_pairs(g):
    u = Universe.of(["a", "b"])
    assert incomparable_pairs(Relation.empty(u)) == {("a", "b"), ("b", "a")}
    assert incomparable_pairs(Relation.from_pairs(u, [("a", "b")])) == set()
    assert incomparable_pairs(transitive_closure(g)) == set()


@given(relations(max_n=5))
def test_incomparable_excludes_diagonal(r):
    pairs = set(r.pairs())
    expected = {
        (x, y) for x in r.universe for y in r.universe if x != y and (x, y) not in pairs and (y, x) not in pairs
    }
    assert incomparable_pairs(r) == expected


def test_restrict(g):
    u = Universe.of(["a", "b", "c"])
    r = Relation.from_pairs(u, [("a", "b"), ("b", "c"), ("a", "c")])
    assert restrict(r, {"a", "c"}).pairs() == [("a", "c")]
    assert restrict(r, u.labels) == r
    assert set(restrict(g, {"x3", "x4"}).pairs()) == {("x3", "x4"), ("x4", "x3")}
    with pytest.raises(ValueError):
        restrict(r, set())


# classification


def test_classify_examples(g):
    u = Universe.of(["a", "b", "c"])
    d = classify(Relation.identity(u))
    assert d.reflexive and d.transitive and d.antisymmetric and not d.total
    rg = classify(g)
    assert not rg.reflexive and not rg.transitive and not rg.acyclic
    full = classify(Relation.full(u))
    assert full.ordering and not full.partial_order


def test_classify_agrees_with_definitions_exhaustively():
    for n in (1, 2, 3):
        u = Universe.numbered(n)
        labels = u.labels
        for r in all_relations(u):
            s = set(r.pairs())
            rep = classify(r)
            assert rep.reflexive == O.is_reflexive(labels, s)
            assert rep.transitive == O.is_transitive(s)
            assert rep.antisymmetric == O.is_antisymmetric(s)
            assert rep.total == O.is_total(labels, s)
            assert rep.complete == (rep.reflexive and rep.total)
            assert rep.ordering == O.is_ordering(labels, s)
            assert rep.partial_order == O.is_partial_order(labels, s)
            if rep.ordering:
                assert rep.quasi_ordering
            if rep.linear_order:
                assert rep.partial_order


# maximal elements, components, quotient


def test_maximal_elements(g):
    assert maximal_elements(g) == {"x4"}
    u = Universe.of(["a", "b", "c"])
    assert maximal_elements(Relation.empty(u)) == {"a", "b", "c"}
    # c above b above a
    chain = Relation.from_pairs(u, [("c", "b"), ("b", "a")])
    assert maximal_elements(chain) == {"c"}


@given(relations(max_n=5))
def test_maximal_matches_oracle(r):
    assert maximal_elements(r) == O.maximal(r.universe.labels, set(r.pairs()))


@given(relations(max_n=5))
def test_components_match_networkx(r):
    import networkx as nx

    g = nx.DiGraph()
    g.add_nodes_from(range(r.n))
    g.add_edges_from(r.index_pairs())
    expected = sorted(sorted(c) for c in nx.strongly_connected_components(g))
    assert sorted(strongly_connected_components(r)) == expected


def test_quotient_examples(g):
    u = Universe.of(["a", "b", "c"])
    po = Relation.from_pairs(u, [("a", "a"), ("b", "b"), ("c", "c"), ("a", "b")])
    classes, induced, mapping = quotient_by_indifference(po)
    assert len(classes) == 3 and induced.pairs() == po.pairs()
    classes, induced, _ = quotient_by_indifference(Relation.full(u))
    assert len(classes) == 1 and induced.pairs() == [(classes.labels[0], classes.labels[0])]
    classes, induced, mapping = quotient_by_indifference(transitive_closure(g))
    assert len(classes) == 2
    assert len({mapping[f"x{i}"] for i in range(1, 5)}) == 1 and mapping["x5"] == "x5"
    big = mapping["x1"]
    assert (big, "x5") in induced and ("x5", big) not in induced


@given(relations(max_n=5))
def test_quotient_closure_is_antisymmetric(r):
    _, induced, _ = quotient_by_indifference(r)
    assert classify(transitive_closure(induced)).antisymmetric


@given(relations(max_n=5))
def test_value_semantics(r):
    before = r.rows
    transitive_closure(r)
    compose(r, r)
    r.with_diagonal()
    assert r.rows == before


def test_all_relations_count():
    assert sum(1 for _ in all_relations(Universe.numbered(2))) == 16
    assert len({r.mask for r in all_relations(Universe.numbered(3))}) == 512


def test_pairs_roundtrip_through_mask():
    u = Universe.numbered(3)
    for r in itertools.islice(all_relations(u), 0, 512, 37):
        assert Relation.from_pairs(u, r.pairs()) == r
