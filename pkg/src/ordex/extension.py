"""Constructive extensions and the exhaustive extension enumerators.

Orientation convention: ``(x, y)`` in a relation reads "x is at least as
good as y", so x sits above y.  Saturation visits the lexicographically
least incomparable pair ``(x_i, x_j)``, ``i < j``, and by default places the
second element below the first.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from .consistency import (
    delta_index,
    delta_violation,
    is_m_consistent,
    is_s_consistent,
    s_consistency_witness,
)
from .errors import CapExceeded, ConstraintError, PreconditionFailed
from .relation import (
    OMEGA,
    Relation,
    Universe,
    _bits,
    _Omega,
    asymmetric_part,
    classify,
    is_extension,
    linear_order_from_sequence,
    maximal_elements,
    power_sequence,
    transitive_closure,
)

log = logging.getLogger(__name__)

DEFAULT_ORDERING_CAP = 6
DEFAULT_LINEAR_CAP = 8
DEFAULT_TOURNAMENT_BOUND = 3**10


@dataclass(frozen=True)
class ExtensionConstraint:
    """A subset ``Y`` of the universe together with an ordering ``T`` on it."""

    subset: frozenset[str]
    order: frozenset[tuple[str, str]]

    @classmethod
    def build(
        cls, subset: Iterable[str], pairs: Iterable[tuple[str, str]], reflexive: bool = True
    ) -> ExtensionConstraint:
        subset = frozenset(subset)
        order = set(pairs)
        if reflexive:
            order |= {(y, y) for y in subset}
        return cls(subset, frozenset(order))

    @classmethod
    def from_relation(cls, t: Relation) -> ExtensionConstraint:
        return cls(frozenset(t.universe.labels), frozenset(t.pairs()))

    @classmethod
    def chain(cls, top_to_bottom: Iterable[str]) -> ExtensionConstraint:
        """Linear order on the listed elements, first one on top."""
        seq = list(top_to_bottom)
        pairs = [(seq[i], seq[j]) for i in range(len(seq)) for j in range(i, len(seq))]
        return cls.build(seq, pairs)

    def order_on(self, parent: Universe) -> Relation:
        """``T`` as a relation on ``Y`` listed in the parent universe's order."""
        for y in self.subset:
            if y not in parent:
                raise ConstraintError(f"constraint element {y!r} is not in the universe")
        for x, y in self.order:
            if x not in self.subset or y not in self.subset:
                raise ConstraintError(f"ordering pair ({x},{y}) leaves the subset", (x, y))
        sub = Universe(tuple(x for x in parent.labels if x in self.subset))
        return Relation.from_pairs(sub, self.order)

    def strict_pairs(self) -> list[tuple[str, str]]:
        return sorted((x, y) for x, y in self.order if x != y)


def validate_constraint(r: Relation, c: ExtensionConstraint, linear: bool = False) -> None:
    """Raise :class:`ConstraintError` naming the offending pair, if any."""
    if not c.subset:
        if c.order:
            raise ConstraintError("ordering given on an empty subset")
        return
    t = c.order_on(r.universe)
    report = classify(t)
    if not report.ordering:
        raise ConstraintError("T must be a reflexive, transitive and total ordering on Y")
    if linear and not report.antisymmetric:
        offending = next((x, y) for x, y in t.pairs() if x != y and t.has(y, x))
        raise ConstraintError("T must be a linear order on Y", offending)
    closure = transitive_closure(r)
    labels = sorted(c.subset, key=r.universe.index)
    for x in labels:
        for y in labels:
            if x != y and closure.has(x, y):
                raise ConstraintError(
                    f"Y is not an antichain of the closure: ({x},{y}) is comparable", (x, y)
                )


def szpilrajn_step(
    r: Relation, c: ExtensionConstraint, reflexivize: bool = True
) -> Relation:
    """``R ∪ {(k, l) : k R̄ y, x R̄ l, (y, x) strict in T}``.

    The result contains R and T and keeps every strict pair of R strict.
    """
    base = r.with_diagonal() if reflexivize else r
    validate_constraint(base, c)
    closure = transitive_closure(base)
    up = closure.transpose().rows
    u = base.universe
    rows = list(base.rows)
    for y, x in c.strict_pairs():
        below_x = closure.rows[u.index(x)]
        for k in _bits(up[u.index(y)]):
            rows[k] |= below_x
    return Relation(u, tuple(rows))


def _orient(current: Relation, closure: Relation, hi: int, lo: int) -> Relation:
    """Singleton step placing ``lo`` below ``hi``: add ``(k, l)`` for k above hi, l below lo."""
    up = closure.transpose().rows[hi]
    below = closure.rows[lo]
    rows = list(current.rows)
    for k in _bits(up):
        rows[k] |= below
    return Relation(current.universe, tuple(rows))


def _first_incomparable(closure: Relation) -> tuple[int, int] | None:
    n = closure.n
    t = closure.transpose().rows
    for i in range(n):
        missing = ~(closure.rows[i] | t[i]) & ((1 << n) - 1)
        missing &= ~((1 << (i + 1)) - 1)
        if missing:
            return i, (missing & -missing).bit_length() - 1
    return None


Orientation = Callable[[int, int], tuple[int, int]]


def _default_orientation(i: int, j: int) -> tuple[int, int]:
    return i, j


def saturate(current: Relation, orient: Orientation = _default_orientation) -> Relation:
    """Orient incomparable pairs of the closure one at a time; return the final closure.

    Each round adds at least one pair, so there are at most n² rounds.
    """
    while True:
        closure = transitive_closure(current)
        pair = _first_incomparable(closure)
        if pair is None:
            return closure
        hi, lo = orient(*pair)
        current = _orient(current, closure, hi, lo)


def ordering_extension(
    r: Relation, c: ExtensionConstraint | None = None, reflexivize: bool = True
) -> Relation:
    """Complete, transitive extension Q of ``r`` with ``Q/Y = T``.

    Requires S-consistency; anything weaker cannot yield a transitive
    extension, so those inputs belong to :func:`tournament_extension`.
    """
    base = r.with_diagonal() if reflexivize else r
    if not is_s_consistent(base):
        raise PreconditionFailed(
            "relation is not S-consistent: a cycle contains a strict edge",
            s_consistency_witness(base),
        )
    start = szpilrajn_step(base, c, reflexivize=False) if c is not None else base
    return saturate(start)


def linear_extension(
    r: Relation, c: ExtensionConstraint | None = None, reflexivize: bool = True
) -> Relation:
    """Linear order extending ``r`` with ``Q/Y = T`` for a linear ``T``."""
    base = r.with_diagonal() if reflexivize else r
    if delta_index(base) is None:
        pair = delta_violation(base)
        raise PreconditionFailed(
            "relation is not Delta(m)-consistent for any m"
            + (f": ({pair[0]},{pair[1]}) lies in I(R^m) off the diagonal" if pair else ""),
            pair,
        )
    if c is not None:
        validate_constraint(base, c, linear=True)
    q = ordering_extension(base, c, reflexivize=False)
    assert classify(q).antisymmetric
    return q


def tournament_extension(
    r: Relation, m: int | _Omega, reflexivize: bool = True
) -> Relation:
    """Reflexive, complete extension ``R^m ∪ ⋃_{p>m} P(R^p)``; not transitive in general.

    Pairs still incomparable after the union (possible when the closure
    itself is incomplete) are oriented by the default saturation rule
    without closing transitively.
    """
    base = r.with_diagonal() if reflexivize else r
    if not is_m_consistent(base, m):
        raise PreconditionFailed(f"relation is not {m}-consistent")
    if m is OMEGA:
        result = transitive_closure(base)
    else:
        seq = power_sequence(base)
        result = seq.at(m)
        for p in range(m + 1, max(m, seq.tail) + seq.period + 1):
            result |= asymmetric_part(seq.at(p))
    rows = list(result.rows)
    n = result.n
    t = result.transpose().rows
    for i in range(n):
        for j in range(i + 1, n):
            if not (rows[i] >> j & 1 or t[i] >> j & 1):
                rows[i] |= 1 << j
    return Relation(result.universe, tuple(rows))


def extension_with_maximal(r: Relation, xstar: str, reflexivize: bool = True) -> Relation:
    """Linear extension of ``r`` in which ``xstar`` stays maximal."""
    base = r.with_diagonal() if reflexivize else r
    if xstar not in base.universe:
        raise KeyError(f"unknown element {xstar!r}")
    if xstar not in maximal_elements(base):
        raise PreconditionFailed(f"{xstar!r} is not a maximal element", xstar)
    if delta_index(base) is None:
        raise PreconditionFailed(
            "relation is not Delta(m)-consistent for any m", delta_violation(base)
        )
    top = base.universe.index(xstar)

    def orient(i: int, j: int) -> tuple[int, int]:
        return (j, i) if j == top else (i, j)

    return saturate(base, orient)


# enumerators


def _ordered_partitions(mask: int) -> Iterator[tuple[int, ...]]:
    if not mask:
        yield ()
        return
    subs = []
    s = mask
    while s:
        subs.append(s)
        s = (s - 1) & mask
    for block in reversed(subs):
        for rest in _ordered_partitions(mask & ~block):
            yield (block,) + rest


def weak_orders(universe: Universe) -> Iterator[Relation]:
    """Every ordering (complete preorder) on ``universe``; ordered Bell many."""
    n = len(universe)
    for blocks in _ordered_partitions((1 << n) - 1):
        rows = [0] * n
        below = 0
        for block in reversed(blocks):
            below |= block
            for i in _bits(block):
                rows[i] = below
        yield Relation(universe, tuple(rows))


def enumerate_ordering_extensions(r: Relation, cap: int = DEFAULT_ORDERING_CAP) -> list[Relation]:
    if r.n > cap:
        raise CapExceeded(
            f"{r.n} elements exceeds the ordering cap {cap}; quotient by indifference first"
        )
    return [q for q in weak_orders(r.universe) if is_extension(r, q)]


def enumerate_linear_extensions(
    r: Relation, cap: int = DEFAULT_LINEAR_CAP, strict: bool = False
) -> list[Relation]:
    """All linear (or, with ``strict``, strict linear) orders extending ``r``.

    Backtracks over top-down topological orders of the strict closure.
    """
    if r.n > cap:
        raise CapExceeded(f"{r.n} elements exceeds the linear-extension cap {cap}")
    if strict and any(r.rows[i] >> i & 1 for i in range(r.n)):
        log.info("no strict linear extension: relation has a loop")
        return []
    closure = transitive_closure(r)
    if delta_violation(closure) is not None:
        log.info("no linear extension: closure has indifference off the diagonal")
        return []
    above = closure.without_diagonal().transpose().rows
    n = r.n
    out: list[Relation] = []
    seq: list[int] = []

    def walk(remaining: int) -> None:
        if not remaining:
            q = linear_order_from_sequence(r.universe, seq)
            out.append(q.without_diagonal() if strict else q)
            return
        for x in _bits(remaining):
            if above[x] & remaining == 0:
                seq.append(x)
                walk(remaining & ~(1 << x))
                seq.pop()

    walk((1 << n) - 1)
    return out


def enumerate_tournament_extensions(
    r: Relation, bound: int = DEFAULT_TOURNAMENT_BOUND
) -> list[Relation]:
    """All reflexive complete extensions: each incomparable pair takes one of three states."""
    base = r.with_diagonal()
    n = base.n
    t = base.transpose().rows
    gaps = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if not (base.rows[i] >> j & 1 or t[i] >> j & 1)
    ]
    if 3 ** len(gaps) > bound:
        raise CapExceeded(f"3^{len(gaps)} tournaments exceeds the bound {bound}")
    out = []
    for choice in itertools.product((0, 1, 2), repeat=len(gaps)):
        rows = list(base.rows)
        for (i, j), state in zip(gaps, choice):
            if state != 1:
                rows[i] |= 1 << j
            if state != 0:
                rows[j] |= 1 << i
        out.append(Relation(base.universe, tuple(rows)))
    return out
