"""Acceptance suite: one test per criterion, each timed against its budget.

Every test records a PASS/FAIL line that is echoed in the terminal summary.
"""

from __future__ import annotations

import io
import itertools
import json
import random

from ordex import (
    ExtensionConstraint,
    Game,
    RealizerFamily,
    Relation,
    Universe,
    classify,
    completion_union_check,
    dimension,
    enumerate_linear_extensions,
    enumerate_ordering_extensions,
    extension_with_maximal,
    incomparable_pairs,
    intersect,
    is_m_consistent,
    is_realizer,
    is_s_consistent,
    lambda_index,
    linear_extension,
    maximal_elements,
    nash_equilibria,
    ordering_extension,
    restrict,
    tournament_extension,
    transitive_closure,
)
from ordex.cli import run
from ordex.extension import weak_orders
from ordex.games import profile_universe
from ordex.harness import run_all
from ordex.relation import all_relations
from tests import oracles as O
from tests.acceptance_log import criterion
from tests.test_extension import S3_REL, valid_constraints
from tests.test_relation import X5, xs

G = Relation.from_pairs(X5, xs([(1, 2), (2, 3), (3, 4), (4, 3), (4, 1), (2, 5)]))
G_STAR_LISTED = xs(
    [(1, 2), (2, 3), (3, 4), (4, 3), (4, 1), (1, 5), (1, 3), (3, 1), (2, 4), (4, 2), (4, 5), (3, 5), (2, 5)]
)


def partial_orders(n):
    u = Universe.numbered(n)
    for po in O.partial_orders(u.labels):
        yield Relation.from_pairs(u, po)


def test_criterion_01_example_relation():
    with criterion(1, "G is 2-consistent and not S-consistent", 1):
        assert is_m_consistent(G, 2) is True
        assert is_s_consistent(G) is False


def test_criterion_02_tournament_listing():
    with criterion(2, "tournament extension of G at m=2 equals the 13 listed pairs", 1):
        q = tournament_extension(G, 2)
        assert set(q.without_diagonal().pairs()) == G_STAR_LISTED
        assert len(G_STAR_LISTED) == 13


def test_criterion_03_consistency_via_strict_parts():
    with criterion(3, "m-consistency iff P(R) within P(R^m), reflexive n=3, m<=4", 10):
        u = Universe.numbered(3)
        d = O.diag(u.labels)
        off = [(x, y) for x in u.labels for y in u.labels if x != y]
        checked = 0
        for bits in itertools.product((0, 1), repeat=len(off)):
            s = d | {c for c, b in zip(off, bits) if b}
            r = Relation.from_pairs(u, s)
            for m in (1, 2, 3, 4):
                via_parts = O.strict(s) <= O.strict(O.power(s, m))
                assert is_m_consistent(r, m) == via_parts
                checked += 1
        assert checked == 64 * 4


def test_criterion_04_omega_iff_s_consistent():
    with criterion(4, "lambda index is omega iff S-consistent, all relations n<=3", 30):
        total = 0
        for n in (1, 2, 3):
            u = Universe.numbered(n)
            for r in all_relations(u):
                oracle = O.is_s_consistent(u.labels, set(r.pairs()))
                assert lambda_index(r).is_omega == oracle == is_s_consistent(r)
                total += 1
        assert total == 2 + 16 + 512


def test_criterion_05_ordering_extension_postconditions():
    with criterion(5, "ordering extension postconditions, S-consistent n=3, all valid (Y,T)", 120):
        u = Universe.numbered(3)
        failures = 0
        runs = 0
        for r in all_relations(u):
            if not is_s_consistent(r):
                continue
            constraints = [None, ExtensionConstraint.build([], [])]
            constraints += [ExtensionConstraint.build([x], []) for x in u.labels]
            constraints += list(valid_constraints(r.with_diagonal()))
            for c in constraints:
                q = ordering_extension(r, c)
                runs += 1
                rep = classify(q)
                ok = rep.reflexive and rep.transitive and rep.complete
                ok = ok and r <= q and O.strict(set(r.pairs())) <= O.strict(set(q.pairs()))
                if c is not None and c.subset:
                    ok = ok and set(restrict(q, c.subset).pairs()) == set(c.order)
                failures += not ok
        assert runs > 0 and failures == 0


def test_criterion_06_both_orientations_of_incomparable_pairs():
    with criterion(6, "linear extensions realize both orientations, partial orders n<=4", 60):
        for n in range(1, 5):
            for r in partial_orders(n):
                for x, y in incomparable_pairs(r):
                    for top, bottom in ((x, y), (y, x)):
                        q = linear_extension(r, ExtensionConstraint.chain([top, bottom]))
                        assert classify(q).linear_order
                        assert r <= q and q.has(top, bottom)


def test_criterion_07_intersection_theorems():
    with criterion(7, "intersections of ordering/linear/strict-linear extensions", 300):
        # (a) ordering extensions of S-consistent relations
        for n in (1, 2, 3):
            for r in all_relations(Universe.numbered(n)):
                if is_s_consistent(r):
                    assert intersect(enumerate_ordering_extensions(r)) == transitive_closure(r).with_diagonal()
        u4 = Universe.numbered(4)
        rng = random.Random(2024)
        sampled = 0
        while sampled < 500:
            r = Relation.from_mask(u4, rng.getrandbits(16))
            if not is_s_consistent(r):
                continue
            assert intersect(enumerate_ordering_extensions(r)) == transitive_closure(r).with_diagonal()
            sampled += 1
        # (b) linear extensions of partial orders, with both realizer conditions
        for n in range(1, 5):
            for r in partial_orders(n):
                family = enumerate_linear_extensions(r)
                assert intersect(family) == r
                assert is_realizer(RealizerFamily(tuple(family), r)).holds
        # (c) strict linear extensions of asymmetric transitive relations
        for n in range(1, 5):
            for r in partial_orders(n):
                s = r.without_diagonal()
                assert intersect(enumerate_linear_extensions(s, strict=True)) == s


def test_criterion_08_dimension_vectors():
    with criterion(8, "dimension of chain, 2-antichain and S_3", 60):
        chain = Relation.from_pairs(Universe.of(["a", "b", "c"]), [("a", "b"), ("b", "c")])
        antichain = Relation.empty(Universe.of(["a", "b"]))
        for r, k in ((chain, 1), (antichain, 2), (S3_REL, 3)):
            res = dimension(r)
            assert res.k == k == len(res.witness)
            target = transitive_closure(r).with_diagonal()
            assert is_realizer(RealizerFamily(res.witness.members, target)).holds


def two_by_two_preferences():
    """Every weak order on the four profiles, and each with one unordered pair dropped."""
    actions = (("C", "D"), ("C", "D"))
    u = profile_universe(actions)
    seen = {}
    for q in weak_orders(u):
        seen.setdefault(q.mask, q)
        for i, j in itertools.combinations(range(4), 2):
            rows = list(q.rows)
            rows[i] &= ~(1 << j)
            rows[j] &= ~(1 << i)
            r = Relation(u, tuple(rows))
            seen.setdefault(r.mask, r)
    return actions, list(seen.values())


def test_criterion_09_nash_union_over_completions():
    with criterion(9, "N(G) equals the union over completions on the game corpus", 300):
        actions, prefs = two_by_two_preferences()
        for p in prefs:
            assert len(incomparable_pairs(p)) <= 2 and is_s_consistent(p)
        games = 0
        for a, b in itertools.product(prefs, repeat=2):
            rep = completion_union_check(Game(actions, (a, b)))
            assert rep.mode == "exhaustive"
            assert rep.union_within_game and rep.equal
            games += 1
        assert games == len(prefs) ** 2
        rng = random.Random(99)
        actions3 = (("x", "y"), ("p", "q", "r"))
        u = profile_universe(actions3)
        for _ in range(150):
            ps = []
            for _ in actions3:
                ranks = {x: rng.randint(0, 3) for x in u}
                pairs = {(x, y) for x in u for y in u if ranks[x] >= ranks[y]}
                off = sorted({tuple(sorted(p)) for p in pairs if p[0] != p[1]})
                for x, y in rng.sample(off, rng.randint(1, 3)):
                    pairs -= {(x, y), (y, x)}
                ps.append(Relation.from_pairs(u, pairs))
            g = Game(actions3, tuple(ps))
            assert all(is_s_consistent(p) for p in g.prefs)
            rep = completion_union_check(g)
            assert rep.union_within_game
            assert rep.equal, rep.as_dict()
            assert set(rep.equilibria) == set(nash_equilibria(g))


def test_criterion_10_maximal_element_preserved():
    with criterion(10, "linear extension keeps a chosen maximal element maximal, n<=4", 60):
        for n in range(1, 5):
            for r in partial_orders(n):
                for top in maximal_elements(r):
                    q = extension_with_maximal(r, top)
                    assert classify(q).linear_order and r <= q
                    assert O.extends(set(r.pairs()), set(q.pairs()))
                    assert top in maximal_elements(q)


def test_criterion_11_harness_is_reproducible():
    with criterion(11, "conjecture harness over n<=3 is byte-for-byte reproducible", 120):
        first = json.dumps(run_all(max_n=3), sort_keys=True)
        second = json.dumps(run_all(max_n=3), sort_keys=True)
        assert first == second
        report = json.loads(first)
        assert set(report) == {"remark-monotone-m", "theorem1-finite-m", "tournament-realizer", "closure-formula"}
        assert report["tournament-realizer"]["verdict"] in ("counterexample-found", "no-counterexample-found")
        for scope in report.values():
            assert scope["relations_checked"] == 2 + 16 + 512
        outputs = []
        for _ in range(2):
            buf = io.StringIO()
            run(["harness", "--json"], buf)
            outputs.append(buf.getvalue())
        assert outputs[0] == outputs[1]
