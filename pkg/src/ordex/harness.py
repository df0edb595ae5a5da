"""Sweeps that look for counterexamples to claims we do not take on faith.

Scopes:

``remark-monotone-m``
    Lambda(m)-consistency at a finite m should imply m'-consistency for
    every m' < m.
``theorem1-finite-m``
    Lambda(m)-consistency at a finite m should admit an ordering extension.
``tournament-realizer``
    for m-consistent ``R ∪ Δ``, the tournament extensions should intersect
    to ``(R ∪ Δ)^m``.
``closure-formula``
    for Lambda(m)-consistent reflexive ``Q``, the closure should equal
    ``Q^m ∪ ⋃_{p>m} P(Q^p)``.

Finite Lambda(m)-consistency here means m-consistency plus the m-rank of
symmetry at that m.  The harness never asserts a claim; it reports
counterexamples or their absence, and how many relations met the hypothesis.
"""

from __future__ import annotations

import random
from typing import Callable, Iterable, Iterator

from .consistency import is_lambda_consistent, is_m_consistent, is_s_consistent
from .extension import enumerate_ordering_extensions, enumerate_tournament_extensions
from .formats import relation_to_dict
from .realizer import intersect
from .relation import (
    Relation,
    Universe,
    all_relations,
    asymmetric_part,
    power_sequence,
    transitive_closure,
)

SCOPES = ("remark-monotone-m", "theorem1-finite-m", "tournament-realizer", "closure-formula")
MAX_LISTED = 25


def sweep(max_n: int = 3, sample_n4: int = 0, seed: int = 0) -> Iterator[Relation]:
    """Every relation on 1..max_n elements, then ``sample_n4`` seeded 4-element ones."""
    for n in range(1, max_n + 1):
        yield from all_relations(Universe.numbered(n))
    if sample_n4:
        u = Universe.numbered(4)
        rng = random.Random(seed)
        for _ in range(sample_n4):
            yield Relation.from_mask(u, rng.getrandbits(16))


def _finite_lambda_orders(r: Relation, seq) -> list[int]:
    return [m for m in range(1, seq.bound + 1) if is_lambda_consistent(r, m, seq)]


def _remark_monotone(r: Relation) -> tuple[bool, list[dict]]:
    seq = power_sequence(r)
    orders = _finite_lambda_orders(r, seq)
    hits = []
    for m in orders:
        bad = [k for k in range(1, m) if not is_m_consistent(r, k)]
        if bad:
            hits.append({"m": m, "not_consistent_at": bad})
    return bool(orders), hits


def _theorem1_finite(r: Relation) -> tuple[bool, list[dict]]:
    orders = _finite_lambda_orders(r, power_sequence(r))
    if not orders or enumerate_ordering_extensions(r):
        return bool(orders), []
    return True, [{"lambda_orders": orders, "s_consistent": is_s_consistent(r), "ordering_extensions": 0}]


def _tournament_realizer(r: Relation) -> tuple[bool, list[dict]]:
    base = r.with_diagonal()
    seq = power_sequence(base)
    meet = intersect(enumerate_tournament_extensions(r))
    applicable = False
    found = []
    for m in range(1, seq.bound + 1):
        if not is_m_consistent(base, m):
            continue
        applicable = True
        target = seq.at(m)
        if meet != target:
            found.append(
                {
                    "m": m,
                    "in_intersection_only": [list(p) for p in (meet - target).pairs()],
                    "in_power_only": [list(p) for p in (target - meet).pairs()],
                }
            )
    return applicable, found


def _closure_formula(r: Relation) -> tuple[bool, list[dict]]:
    q = r.with_diagonal()
    if q != r:
        # only reflexive relations are in scope; the reflexive ones are swept directly
        return False, []
    seq = power_sequence(q)
    closure = transitive_closure(q)
    orders = _finite_lambda_orders(q, seq)
    found = []
    for m in orders:
        formula = seq.at(m)
        for p in range(m + 1, max(m, seq.tail) + seq.period + 1):
            formula |= asymmetric_part(seq.at(p))
        if formula != closure:
            found.append({"m": m, "missing": [list(p) for p in (closure - formula).pairs()]})
    return bool(orders), found


CHECKS: dict[str, Callable[[Relation], tuple[bool, list[dict]]]] = {
    "remark-monotone-m": _remark_monotone,
    "theorem1-finite-m": _theorem1_finite,
    "tournament-realizer": _tournament_realizer,
    "closure-formula": _closure_formula,
}


def conjecture_harness(
    scope: str,
    relations: Iterable[Relation] | None = None,
    max_n: int = 3,
    sample_n4: int = 0,
    seed: int = 0,
) -> dict:
    """Run one scope and return a JSON-ready report.

    Without explicit ``relations`` the sweep covers every relation on up to
    ``max_n`` elements plus ``sample_n4`` seeded samples on four elements.
    """
    if scope not in CHECKS:
        raise ValueError(f"unknown scope {scope!r}; expected one of {SCOPES}")
    check = CHECKS[scope]
    explicit = relations is not None
    source = relations if explicit else sweep(max_n, sample_n4, seed)
    checked = 0
    applicable = 0
    total = 0
    listed = []
    for r in source:
        checked += 1
        in_scope, hits = check(r)
        applicable += in_scope
        if hits:
            total += 1
            if len(listed) < MAX_LISTED:
                listed.append({"relation": relation_to_dict(r), "details": hits})
    return {
        "scope": scope,
        "sweep": "explicit" if explicit else {"max_n": max_n, "sample_n4": sample_n4, "seed": seed},
        "relations_checked": checked,
        "relations_in_scope": applicable,
        "verdict": "counterexample-found" if total else "no-counterexample-found",
        "counterexample_count": total,
        "counterexamples": listed,
    }


def run_all(max_n: int = 3, sample_n4: int = 0, seed: int = 0) -> dict:
    return {scope: conjecture_harness(scope, None, max_n, sample_n4, seed) for scope in SCOPES}

